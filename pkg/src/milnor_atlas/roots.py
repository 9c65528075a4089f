"""Aberth-Ehrlich simultaneous iteration for univariate polynomial roots."""
from __future__ import annotations

import numpy as np

from .exceptions import RootFindingDidNotConverge

MAX_ITER = 200
RESIDUAL_TOL = 1e-10


def _horner(coeffs_high, z):
    """Value and derivative of the polynomial (highest degree first) at ``z``."""
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in coeffs_high:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def cauchy_bound(coeffs) -> float:
    """Upper bound ``1 + max_k |c_k / c_d|`` on the root moduli (coefficients lowest first)."""
    c = np.asarray(coeffs, dtype=complex)
    return 1.0 + float(np.max(np.abs(c[:-1] / c[-1]))) if c.size > 1 else 0.0


def backward_error(coeffs, z) -> np.ndarray:
    """``|p(z)| / sum_k |c_k| |z|^k`` for each root estimate."""
    c = np.asarray(coeffs, dtype=complex)
    z = np.asarray(z, dtype=complex)
    p, _ = _horner(c[::-1], z)
    scale, _ = _horner(np.abs(c[::-1]).astype(complex), np.abs(z).astype(complex))
    return np.abs(p) / np.maximum(scale.real, np.finfo(float).tiny)


def aberth_roots(coeffs, max_iter=MAX_ITER, tol=RESIDUAL_TOL) -> np.ndarray:
    """All roots of ``sum_k coeffs[k] t**k``.

    Initial estimates are spread on the circle whose radius is the Cauchy
    bound; each sweep applies the Aberth correction
    ``w / (1 - w * sum_{j != k} 1/(z_k - z_j))`` with the Newton step ``w = p/p'``
    (Gauss-Seidel order).  Simple roots converge cubically; callers are
    expected to pass square-free polynomials.

    Raises
    ------
    RootFindingDidNotConverge
        If some backward error exceeds ``tol`` after ``max_iter`` sweeps.
    """
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    d = c.size - 1
    if d < 1:
        return np.zeros(0, dtype=complex)
    c = c / c[-1]
    if d == 1:
        return np.array([-c[0]])
    high = c[::-1]
    radius = cauchy_bound(c)
    angles = 2 * np.pi * np.arange(d) / d + 0.4
    z = radius * np.exp(1j * angles)
    for _ in range(max_iter):
        biggest = 0.0
        for k in range(d):
            p, dp = _horner(high, z[k])
            if p == 0:
                continue
            w = p / dp if dp != 0 else p
            diffs = z[k] - np.delete(z, k)
            step = w / (1 - w * np.sum(1.0 / diffs))
            z[k] -= step
            biggest = max(biggest, abs(step) / (1 + abs(z[k])))
        # a small step alone is not enough near t = 0, where |step| ~ |z|
        err = backward_error(c, z)
        if biggest < 1e-15 and np.all(err <= tol) or np.all(err < 1e-15):
            break
    err = backward_error(c, z)
    if np.any(err > tol):
        raise RootFindingDidNotConverge(
            f"Aberth iteration stalled: backward error {float(err.max()):.3e}",
            residual=float(err.max()),
        )
    return z
