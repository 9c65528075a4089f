"""Input checking shared by the estimators and the command line."""
from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatch, OffSphere, ParseError
from .polynomial import Polynomial, parse_polynomials

REPROJECT_RTOL = 1e-4

def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` (``i`` or ``j``) into a complex number."""
    raw = text.strip().replace(" ", "")
    if not raw:
        raise ParseError("empty coordinate", 1, 1)
    candidate = raw.replace("i", "j")
    if candidate.endswith("j") and (len(candidate) == 1 or candidate[-2] in "+-"):
        candidate = candidate[:-1] + "1j"
    try:
        return complex(candidate)
    except ValueError:
        raise ParseError(f"cannot read {text!r} as a complex number", 1, 1) from None


def parse_point(text: str) -> np.ndarray:
    """Comma-separated complex coordinates, e.g. ``"0.7071+0i,0.7071+0i"``."""
    return np.array([parse_complex(part) for part in text.split(",")], dtype=complex)


def project_to_sphere(p, epsilon: float, rtol: float = REPROJECT_RTOL) -> np.ndarray:
    """Rescale ``p`` onto ``S_epsilon`` if its norm is within ``rtol`` of ``epsilon``.

    Raises
    ------
    OffSphere
        If ``| |p| - epsilon | > rtol * epsilon``.
    """
    p = np.asarray(p, dtype=complex)
    norm = float(np.linalg.norm(p))
    if abs(norm - epsilon) > rtol * epsilon:
        raise OffSphere(f"|p| = {norm:.10g} is not within {rtol:g} of epsilon = {epsilon:g}", norm=norm)
    return p * (epsilon / norm)


def check_points(P, n_vars: int | None = None) -> np.ndarray:
    """Coerce to a complex ``(n_points, n_vars)`` array."""
    P = np.asarray(P)
    if P.ndim == 1:
        P = P[None, :]
    if P.ndim != 2:
        raise ValueError(f"expected a 2-d array of points, got shape {P.shape}")
    if not np.issubdtype(P.dtype, np.number):
        raise TypeError("points must be numeric")
    if n_vars is not None and P.shape[1] != n_vars:
        raise DimensionMismatch(f"points have {P.shape[1]} coordinates, expected {n_vars}")
    P = P.astype(complex)
    if not np.all(np.isfinite(P)):
        raise ValueError("points contain NaN or infinity")
    return P


def check_polynomials(polys, n_vars: int | None = None) -> tuple:
    """Accept polynomial objects or grammar strings and return them in a common ring."""
    polys = list(polys)
    if not polys:
        raise ValueError("at least one polynomial is required")
    if all(isinstance(f, Polynomial) for f in polys):
        n = max(f.n_vars for f in polys) if n_vars is None else n_vars
        return tuple(f.with_n_vars(n) for f in polys)
    return parse_polynomials([str(f) for f in polys], n_vars=n_vars)
