"""Fold test and fold index at singular points of a weighted homogeneous pair.

For ``f, g`` with ``w_g = s w_f`` and a singular point ``p``, set
``H = Hess_p(-i (log g - s log f))`` and let the columns of ``V`` be a real
basis of ``{v : Re<v, p> = Re<v, i grad log f(p)> = 0}``.  Then ``p`` is a fold
point iff ``det Re(V^T H V) != 0``, and the index is the number of negative
eigenvalues of ``Re(V^T H V)``.  When ``p`` and ``i grad log f(p)`` are complex
multiples of each other, ``V = (W, iW)`` for a complex basis ``W`` of the
Hermitian complement of ``p``, and the determinant collapses to
``(-1)^(n-1) |det(W^T H W)|^2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateSpan, IndexMismatch, NotAFold, NotSingular
from .linalg import (
    complex_from_real,
    complex_orthonormal_complement,
    jacobi_eigenvalues,
    real_embed,
    real_orthonormal_complement,
)
from .polynomial import combined_hessian, log_gradient
from .singular import RANK_TOL, SINGULAR, complex_dependence, is_singular_algebraic

FOLD_TOL = 1e-8
SPAN_TOL = 1e-8
PAIRING_TOL = 1e-8

FOLD = "fold"
NOT_FOLD = "not-fold"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class FoldReport:
    point: tuple
    s: object
    H: np.ndarray
    V: np.ndarray
    W: np.ndarray | None
    det_real: float
    det_complex: complex | None
    eigenvalues: np.ndarray
    is_fold: bool
    status: str
    threshold: float
    index: int | None
    absolute_index: int | None
    c_dependent: bool

    @property
    def n_vars(self) -> int:
        return len(self.point)

    @property
    def reduced_matrix(self) -> np.ndarray:
        """``Re(V^T H V)``."""
        return reduced_matrix(self.H, self.V)

    def to_dict(self):
        return {
            "point": [complex(z) for z in self.point],
            "s": str(self.s),
            "H": self.H,
            "V": self.V,
            "W": self.W,
            "det_real": self.det_real,
            "det_complex": self.det_complex,
            "eigenvalues": list(self.eigenvalues),
            "is_fold": self.is_fold,
            "status": self.status,
            "threshold": self.threshold,
            "index": self.index,
            "absolute_index": self.absolute_index,
            "c_dependent": self.c_dependent,
        }


def reduced_matrix(H, V) -> np.ndarray:
    """``Re(V^T H V)``, symmetrized (``H`` is complex symmetric, so this only removes rounding)."""
    R = np.real(V.T @ H @ V)
    return (R + R.T) / 2


def real_tangent_basis(p, q, tol: float = SPAN_TOL) -> np.ndarray:
    """Real basis (as ``n x (2n-2)`` complex columns) of ``{v : Re<v,p> = Re<v,q> = 0}``.

    Raises
    ------
    DegenerateSpan
        If ``p`` and ``q`` are linearly dependent over the reals.
    """
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    n = p.shape[-1]
    basis, rank = real_orthonormal_complement(np.stack([real_embed(p), real_embed(q)]), 2 * n, tol)
    if rank < 2:
        raise DegenerateSpan("p and q are linearly dependent over R")
    return complex_from_real(basis).T


def complex_tangent_basis(p) -> np.ndarray:
    """Complex basis ``W`` (``n x (n-1)``) of ``{v : <v, p> = 0}``.

    The columns are orthogonal with length ``|p|`` and the basis follows the
    phase of ``p``: writing ``p = e^{i theta} p0`` with the first nonzero
    coordinate of ``p0`` real and positive, ``W(p) = e^{i theta} W(p0)``.  For
    ``p = (eps e^{i theta} / sqrt 2)(1, w)`` this gives
    ``W = (eps e^{i theta} / sqrt 2)(1, -w)``.
    """
    p = np.asarray(p, dtype=complex)
    norm = np.linalg.norm(p)
    lead = np.flatnonzero(np.abs(p) > 1e-12 * norm) if norm > 0 else []
    phase = p[lead[0]] / abs(p[lead[0]]) if len(lead) else 1.0
    W0 = complex_orthonormal_complement(p / phase)
    return phase * norm * W0


def fold_test(f, g, cert, p, rank_tol: float = RANK_TOL, fold_tol: float = FOLD_TOL) -> FoldReport:
    """Classify a singular point of the pair ``(f, g)`` as fold or not.

    Raises
    ------
    CertificateRequired
        Without common weights ``w_g = s w_f``.
    NotSingular
        If ``p`` fails the singularity test.
    DegenerateSpan
        If ``p`` and ``i grad log f(p)`` are real-dependent.
    """
    report = is_singular_algebraic(f, g, cert, p, rank_tol)
    if report.algebraic_verdict != SINGULAR:
        raise NotSingular(
            f"point is regular (margin {report.numeric_margin:.3e}, "
            f"minor residual {report.algebraic_residual:.3e})",
            margin=report.numeric_margin,
        )
    p = np.asarray(p, dtype=complex)
    n = p.shape[-1]
    s = cert.s
    H = combined_hessian(f, g, s, p)
    q = 1j * log_gradient(f, p)
    dep = complex_dependence([p, q], rank_tol)
    W = det_complex = None
    if dep.dependent:
        W = complex_tangent_basis(p)
        V = np.concatenate([W, 1j * W], axis=1)
        det_complex = complex(np.linalg.det(W.T @ H @ W)) if n > 1 else 1.0 + 0j
    else:
        V = real_tangent_basis(p, q)
    R = reduced_matrix(H, V)
    dim = 2 * n - 2
    det_real = float(np.linalg.det(R)) if dim else 1.0
    eig = jacobi_eigenvalues(R)
    threshold = fold_tol * float(np.linalg.norm(R)) ** dim if dim else 0.0
    is_fold = abs(det_real) > threshold
    if threshold > 0 and 0.1 * threshold <= abs(det_real) <= 10 * threshold:
        status = INDETERMINATE
    else:
        status = FOLD if is_fold else NOT_FOLD
    index = absolute = None
    if is_fold:
        index = int(np.sum(eig < 0))
        absolute = min(index, dim - index)
    return FoldReport(
        point=tuple(complex(z) for z in p),
        s=s,
        H=H,
        V=V,
        W=W,
        det_real=det_real,
        det_complex=det_complex,
        eigenvalues=eig,
        is_fold=bool(is_fold),
        status=status,
        threshold=threshold,
        index=index,
        absolute_index=absolute,
        c_dependent=bool(dep.dependent),
    )


def index_of(report: FoldReport, tol: float = PAIRING_TOL) -> int:
    """Number of negative eigenvalues of ``Re(V^T H V)`` at a fold.

    In the complex-dependent case the eigenvalues must come in pairs
    ``+-lambda`` and the index must equal ``n - 1``; a violation raises
    :class:`IndexMismatch`.
    """
    if not report.is_fold:
        raise NotAFold("index is only defined at fold points")
    eig = np.sort(np.asarray(report.eigenvalues))
    k = int(np.sum(eig < 0))
    if report.c_dependent:
        scale = max(float(np.linalg.norm(report.reduced_matrix)), np.finfo(float).tiny)
        if np.max(np.abs(eig + eig[::-1]), initial=0.0) >= tol * scale:
            raise IndexMismatch(f"eigenvalues {eig} do not pair as +-lambda")
        if k != report.n_vars - 1:
            raise IndexMismatch(f"index {k} differs from n - 1 = {report.n_vars - 1}")
    return k


def determinant_identity_residual(report: FoldReport) -> float:
    """Relative gap in ``det Re(V^T H V) = (-1)^(n-1) |det(W^T H W)|^2``."""
    if report.det_complex is None:
        raise ValueError("identity only applies when p and i grad log f(p) are C-dependent")
    n = report.n_vars
    rhs = (-1) ** (n - 1) * abs(report.det_complex) ** 2
    scale = max(abs(rhs), abs(report.det_real), report.threshold, np.finfo(float).tiny)
    return abs(report.det_real - rhs) / scale


def charpoly_identity_residual(report: FoldReport, t: float) -> float:
    """Gap in ``det(t I - Re(V^T H V)) = det(t^2 I - conj(M) M)`` with ``M = W^T H W``.

    The gap is divided by ``prod_k (|t| + |lambda_k|)``, which bounds both
    sides and stays meaningful when ``t`` is an eigenvalue.
    """
    if report.W is None:
        raise ValueError("identity only applies when p and i grad log f(p) are C-dependent")
    R = report.reduced_matrix
    M = report.W.T @ report.H @ report.W
    k = M.shape[0]
    lhs = np.linalg.det(t * np.eye(2 * k) - R)
    rhs = np.linalg.det(t * t * np.eye(k) - np.conj(M) @ M)
    scale = float(np.prod(abs(t) + np.abs(report.eigenvalues)))
    scale = max(scale, abs(lhs), abs(rhs), np.finfo(float).tiny)
    return float(abs(lhs - rhs) / scale)
