"""Deterministic JSON reports.

Floats are written with 17 significant digits so that every value survives a
round trip, complex numbers become ``{"re": .., "im": ..}``, fractions become
strings such as ``"2/3"`` and non-finite floats become ``null``.
"""
from __future__ import annotations

import json
import math
from dataclasses import fields, is_dataclass
from fractions import Fraction

import numpy as np

from . import __version__

SCHEMA = "milnor-atlas/1"


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def to_jsonable(obj):
    """Convert reports, numpy values and exact numbers into plain JSON types."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    return str(obj)


def _emit(obj, indent: int, level: int, out: list):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        if len(obj) <= 2 and all(isinstance(v, (float, int, str, bool)) or v is None for v in obj.values()):
            parts = []
            for key, value in obj.items():
                sub: list = []
                _emit(value, indent, level, sub)
                parts.append(f"{json.dumps(key)}: {''.join(sub)}")
            out.append("{" + ", ".join(parts) + "}")
            return
        out.append("{\n")
        for k, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(key)}: ")
            _emit(value, indent, level + 1, out)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
        elif all(not isinstance(x, (dict, list)) for x in obj):
            out.append("[")
            for k, x in enumerate(obj):
                if k:
                    out.append(", ")
                _emit(x, indent, level, out)
            out.append("]")
        else:
            out.append("[\n")
            for k, x in enumerate(obj):
                out.append(pad)
                _emit(x, indent, level + 1, out)
                out.append(",\n" if k < len(obj) - 1 else "\n")
            out.append(end + "]")
    else:
        out.append(json.dumps(obj))


def dumps(obj, indent: int = 2) -> str:
    """Serialize ``obj`` (after :func:`to_jsonable`) with 17-digit floats."""
    out: list = []
    _emit(to_jsonable(obj), indent, 0, out)
    return "".join(out) + "\n"


def document(command: str, config: dict, body: dict) -> dict:
    """Top-level report with schema tag, tool version and config echo."""
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "config": config,
        **body,
    }
