"""Small dense linear algebra used by the rank and fold tests.

The matrices here are tiny (at most ``2n x (m+1)`` with n <= 16), so plain
Jacobi methods are accurate and fast enough.  Both solvers work on stacks of
matrices so the sphere search can evaluate hundreds of points per call.
"""
from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatch, ZeroVector

JACOBI_TOL = 1e-14
MAX_SWEEPS = 60


def real_embed(v) -> np.ndarray:
    """Map complex vectors ``(..., n)`` to real ``(..., 2n)`` as ``[Re v, Im v]``.

    With this layout the Euclidean product of two embedded vectors is
    ``Re <u, v>``.
    """
    v = np.asarray(v, dtype=complex)
    return np.concatenate([v.real, v.imag], axis=-1)


def complex_from_real(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    n = x.shape[-1] // 2
    return x[..., :n] + 1j * x[..., n:]


def realify_columns(M) -> np.ndarray:
    """Real ``2r x 2k`` representation ``[[Re, -Im], [Im, Re]]`` of a complex ``r x k`` matrix.

    Every singular value of ``M`` appears twice among those of the result.
    """
    M = np.asarray(M, dtype=complex)
    top = np.concatenate([M.real, -M.imag], axis=-1)
    bottom = np.concatenate([M.imag, M.real], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def normalize_columns(A) -> np.ndarray:
    A = np.asarray(A)
    norms = np.linalg.norm(A, axis=-2, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(norms > 0, A / np.where(norms > 0, norms, 1.0), 0.0)


def jacobi_singular_values(A, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS) -> np.ndarray:
    """Singular values by one-sided (Hestenes) Jacobi rotations.

    Parameters
    ----------
    A : array_like, shape (..., r, k)
        Real matrices; the columns are orthogonalized pairwise.
    tol : float
        Sweeping stops once every normalized column product ``|a_i . a_j| /
        (|a_i| |a_j|)`` is below ``tol``.

    Returns
    -------
    ndarray, shape (..., k)
        Final column norms sorted in descending order.  For ``k > r`` the
        trailing ``k - r`` entries are (numerically) zero, which is the
        convention the dependence tests rely on.
    """
    U = np.array(A, dtype=float, copy=True)
    if U.ndim < 2:
        raise DimensionMismatch("expected at least a 2-d array")
    k = U.shape[-1]
    pairs = [(i, j) for i in range(k - 1) for j in range(i + 1, k)]
    for _ in range(max_sweeps):
        off = 0.0
        for i, j in pairs:
            ai = U[..., :, i]
            aj = U[..., :, j]
            alpha = np.sum(ai * ai, axis=-1)
            beta = np.sum(aj * aj, axis=-1)
            gamma = np.sum(ai * aj, axis=-1)
            denom = np.sqrt(alpha * beta)
            live = (gamma != 0) & (denom > 0)
            if not np.any(live):
                continue
            with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
                rel = np.where(live, np.abs(gamma) / np.where(live, denom, 1.0), 0.0)
                off = max(off, float(np.max(rel)))
                zeta = np.where(live, (beta - alpha) / np.where(live, 2.0 * gamma, 1.0), 0.0)
            t = np.sign(zeta) / (np.abs(zeta) + np.hypot(zeta, 1.0))
            t = np.where(zeta == 0, 1.0, t)
            t = np.where(live, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            new_i = c[..., None] * ai - s[..., None] * aj
            new_j = s[..., None] * ai + c[..., None] * aj
            U[..., :, i] = new_i
            U[..., :, j] = new_j
        if off < tol:
            break
    sv = np.linalg.norm(U, axis=-2)
    return -np.sort(-sv, axis=-1)


def smallest_singular_value(A) -> np.ndarray:
    return jacobi_singular_values(A)[..., -1]


def jacobi_eigenvalues(S, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by the cyclic Jacobi method, ascending."""
    A = np.array(S, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("expected a square matrix")
    n = A.shape[0]
    if n == 0:
        return np.zeros(0)
    amax = float(np.max(np.abs(A)))
    if amax == 0:
        return np.zeros(n)
    # work on A / max|A_ij| so squares neither overflow nor underflow
    A /= amax
    scale = np.linalg.norm(A)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                # a huge theta overflows to a zero rotation, which is the right limit
                with np.errstate(over="ignore"):
                    theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                    t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0)) if theta else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                A = rot.T @ A @ rot
                A[p, q] = A[q, p] = 0.0
    return np.sort(np.diag(A)) * amax


def real_orthonormal_complement(vectors, dim: int, tol: float = 1e-8):
    """Orthonormal basis of the complement of ``span(vectors)`` in ``R^dim``.

    Gram-Schmidt (two passes) is applied first to ``vectors`` and then to the
    standard basis ``e_1 .. e_dim`` in order.

    Returns
    -------
    basis : ndarray, shape (dim - rank, dim)
    rank : int
        Numerical rank of ``vectors`` (relative threshold ``tol``).
    """
    kept = []
    rank = 0
    for v in np.atleast_2d(np.asarray(vectors, dtype=float)):
        norm0 = np.linalg.norm(v)
        w = v.copy()
        for _ in range(2):
            for b in kept:
                w = w - (w @ b) * b
        if norm0 > 0 and np.linalg.norm(w) > tol * norm0:
            kept.append(w / np.linalg.norm(w))
            rank += 1
    complement = []
    for a in range(dim):
        if len(kept) == dim:
            break
        w = np.zeros(dim)
        w[a] = 1.0
        for _ in range(2):
            for b in kept:
                w = w - (w @ b) * b
        norm = np.linalg.norm(w)
        if norm > 0.1:
            w = w / norm
            kept.append(w)
            complement.append(w)
    return np.array(complement).reshape(-1, dim), rank


def complex_orthonormal_complement(p) -> np.ndarray:
    """Columns (``n x (n-1)``) of an orthonormal basis of ``{v : <v, p> = 0}``."""
    p = np.asarray(p, dtype=complex)
    norm = np.linalg.norm(p)
    if norm == 0:
        raise ZeroVector("cannot take the orthogonal complement of the zero vector")
    n = p.shape[-1]
    kept = [p / norm]
    cols = []
    for a in range(n):
        if len(cols) == n - 1:
            break
        w = np.zeros(n, dtype=complex)
        w[a] = 1.0
        for _ in range(2):
            for b in kept:
                w = w - np.vdot(b, w) * b
        nw = np.linalg.norm(w)
        if nw > 0.1:
            w = w / nw
            kept.append(w)
            cols.append(w)
    return np.array(cols).T.reshape(n, n - 1)
