"""Exact weighted-homogeneity tests.

A polynomial is weighted homogeneous with weights ``w`` iff every exponent row
``b`` satisfies ``sum_j b_j / w_j = 1``.  In the reciprocal unknowns
``u_j = 1/w_j`` this is the linear system ``B u = 1`` with ``u > 0``; common
weights of several polynomials add unknown factors ``s_j`` with
``B_j u = s_j``.  Everything here is done over the rationals: the equalities
by Gauss-Jordan elimination and the strict positivity by Fourier-Motzkin
elimination on the kernel coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import ConstantTermPresent, DimensionMismatch, NotWeightedHomogeneous
from .polynomial import evaluate, gradient_values

Vector = tuple


def exponent_matrix(f) -> tuple:
    """Rows are the exponent vectors of the monomials of ``f`` (sorted)."""
    return tuple(f.terms.keys())


@dataclass(frozen=True)
class WeightSolution:
    """Weight space of one polynomial.

    ``reciprocal_point`` is an interior solution ``u`` of ``B u = 1, u > 0``;
    the full solution set is ``u + span(kernel_basis)`` intersected with the
    positive orthant.
    """

    feasible: bool
    reciprocal_point: Vector
    kernel_basis: tuple
    canonical_weights: Vector

    @property
    def family_dimension(self) -> int:
        return len(self.kernel_basis)

    @property
    def is_unique(self) -> bool:
        return not self.kernel_basis


@dataclass(frozen=True)
class CommonWeightCertificate:
    """Weights ``w_f`` and factors ``s_j`` with ``w_{f_j} = s_j * w_f`` (``s_1 = 1``)."""

    weights: Vector
    factors: Vector

    @property
    def reciprocal(self) -> Vector:
        return tuple(1 / w for w in self.weights)

    @property
    def s(self) -> Fraction:
        """The factor of the last polynomial; for a pair ``(f, g)`` this is ``s``."""
        return self.factors[-1]

    def weights_for(self, j: int) -> Vector:
        return tuple(self.factors[j] * w for w in self.weights)

    @property
    def integer_factors(self) -> bool:
        return all(s.denominator == 1 for s in self.factors)

    def verify(self, polys) -> bool:
        """Exact row check ``B_j u = s_j * 1`` for every polynomial."""
        u = self.reciprocal
        for f, s in zip(polys, self.factors):
            for row in exponent_matrix(f):
                if sum(b * x for b, x in zip(row, u)) != s:
                    return False
        return len(polys) == len(self.factors)


# -- exact linear algebra --------------------------------------------------

def _rref(rows, rhs):
    """Gauss-Jordan elimination of ``[rows | rhs]``.

    Returns ``(reduced rows, reduced rhs, pivot columns)`` or ``None`` when the
    system is inconsistent.
    """
    A = [[Fraction(x) for x in r] for r in rows]
    b = [Fraction(x) for x in rhs]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        b[r], b[pivot] = b[pivot], b[r]
        lead = A[r][c]
        A[r] = [x / lead for x in A[r]]
        b[r] = b[r] / lead
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                factor = A[i][c]
                A[i] = [x - factor * y for x, y in zip(A[i], A[r])]
                b[i] = b[i] - factor * b[r]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    if any(b[i] != 0 for i in range(r, len(A))):
        return None
    return A[:r], b[:r], pivots


def _affine_solution(rows, rhs, ncols):
    """Particular solution and kernel basis of ``rows x = rhs``, or ``None``."""
    if not rows:
        return [Fraction(0)] * ncols, [
            [Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)
        ]
    reduced = _rref(rows, rhs)
    if reduced is None:
        return None
    A, b, pivots = reduced
    x0 = [Fraction(0)] * ncols
    for row, c in enumerate(pivots):
        x0[c] = b[row]
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, c in enumerate(pivots):
            v[c] = -A[row][fcol]
        kernel.append(v)
    return x0, kernel


def _normalize(coeffs, const):
    scale = max((abs(a) for a in coeffs), default=Fraction(0))
    if scale == 0:
        return tuple(coeffs), const
    return tuple(a / scale for a in coeffs), const / scale


def _strict_interior_point(constraints, nvars):
    """Find ``t`` with ``a . t + c > 0`` for every ``(a, c)`` in ``constraints``.

    Fourier-Motzkin elimination from the last variable to the first; the point
    is then built by back-substitution, taking the midpoint of each bounded
    interval, ``lower + 1`` / ``upper - 1`` for half-lines and ``0`` for free
    variables.  Returns ``None`` when the strict system is infeasible.
    """
    def prune(cons):
        kept = []
        for a, c in dict.fromkeys(_normalize(a, c) for a, c in cons):
            if all(x == 0 for x in a):
                if c <= 0:
                    return None
                continue
            kept.append((a, c))
        return kept

    stages = [prune(constraints)]
    if stages[0] is None:
        return None
    for v in range(nvars - 1, -1, -1):
        current = stages[-1]
        pos = [con for con in current if con[0][v] > 0]
        neg = [con for con in current if con[0][v] < 0]
        nxt = [con for con in current if con[0][v] == 0]
        for ap, cp in pos:
            for an, cn in neg:
                wp, wn = -an[v], ap[v]
                coeffs = tuple(wp * x + wn * y for x, y in zip(ap, an))
                nxt.append((coeffs, wp * cp + wn * cn))
        reduced = prune(nxt)
        if reduced is None:
            return None
        stages.append(reduced)

    t = [Fraction(0)] * nvars
    for v in range(nvars):
        lower, upper = None, None
        for a, c in stages[nvars - 1 - v]:
            if a[v] == 0:
                continue
            rest = c + sum(a[k] * t[k] for k in range(v))
            bound = -rest / a[v]
            if a[v] > 0:
                lower = bound if lower is None else max(lower, bound)
            else:
                upper = bound if upper is None else min(upper, bound)
        if lower is not None and upper is not None:
            if not lower < upper:
                return None
            t[v] = (lower + upper) / 2
        elif lower is not None:
            t[v] = lower + 1
        elif upper is not None:
            t[v] = upper - 1
    return t


def positive_solution(rows, rhs, ncols):
    """Solve ``rows x = rhs`` with ``x > 0`` exactly.

    Returns ``(point, kernel_basis)`` with a strictly positive rational point,
    or ``None`` if no positive solution exists.
    """
    sol = _affine_solution(rows, rhs, ncols)
    if sol is None:
        return None
    x0, kernel = sol
    k = len(kernel)
    constraints = [(tuple(kernel[i][j] for i in range(k)), x0[j]) for j in range(ncols)]
    t = _strict_interior_point(constraints, k)
    if t is None:
        return None
    x = [x0[j] + sum(t[i] * kernel[i][j] for i in range(k)) for j in range(ncols)]
    assert all(xj > 0 for xj in x)
    return tuple(x), tuple(tuple(v) for v in kernel)


# -- public operations -----------------------------------------------------

def _check_polynomial(f):
    if f.is_zero():
        raise ValueError("the zero polynomial has no weights")
    if not f.constant_term().is_zero():
        raise ConstantTermPresent(f"{f} has a nonzero constant term")


def weight_space(f) -> WeightSolution:
    """All reciprocal weights ``u = 1/w`` making ``f`` weighted homogeneous.

    Raises
    ------
    ConstantTermPresent
        If ``f(0) != 0``.
    NotWeightedHomogeneous
        If ``B u = 1`` has no strictly positive solution.
    """
    _check_polynomial(f)
    B = exponent_matrix(f)
    sol = positive_solution(B, [1] * len(B), f.n_vars)
    if sol is None:
        raise NotWeightedHomogeneous(f"{f} is not weighted homogeneous")
    u, kernel = sol
    return WeightSolution(
        feasible=True,
        reciprocal_point=u,
        kernel_basis=kernel,
        canonical_weights=tuple(1 / x for x in u),
    )


def common_weights_multi(polys) -> CommonWeightCertificate | None:
    """Weights ``w`` and factors ``s_j > 0`` (``s_1 = 1``) with ``w_{f_j} = s_j w``.

    The unknowns are ``(u_1..u_n, s_2..s_m)``; the rows are ``B_1 u = 1`` and
    ``B_j u - s_j = 0``.  If the solution family contains a point with every
    ``s_j = 1`` that point is preferred.  Returns ``None`` when no such
    weights exist.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    n = polys[0].n_vars
    if any(p.n_vars != n for p in polys):
        raise DimensionMismatch("all polynomials must have the same number of variables")
    for f in polys:
        _check_polynomial(f)
    m = len(polys)
    ncols = n + m - 1
    rows, rhs = [], []
    for row in exponent_matrix(polys[0]):
        rows.append(list(row) + [0] * (m - 1))
        rhs.append(1)
    for j, f in enumerate(polys[1:]):
        for row in exponent_matrix(f):
            extra = [0] * (m - 1)
            extra[j] = -1
            rows.append(list(row) + extra)
            rhs.append(0)
    # prefer a shared weight system (all s_j = 1) whenever the family allows it
    unit_rows = [[0] * n + [int(k == j) for k in range(m - 1)] for j in range(m - 1)]
    sol = positive_solution(rows + unit_rows, rhs + [1] * (m - 1), ncols)
    if sol is None:
        sol = positive_solution(rows, rhs, ncols)
    if sol is None:
        return None
    x, _ = sol
    u = x[:n]
    cert = CommonWeightCertificate(
        weights=tuple(1 / v for v in u),
        factors=(Fraction(1),) + tuple(x[n:]),
    )
    assert cert.verify(polys)
    return cert


def common_weights(f, g) -> CommonWeightCertificate | None:
    """Weights ``w_f`` and ``s > 0`` with ``w_g = s * w_f``, or ``None``."""
    return common_weights_multi([f, g])


def euler_residual(f, weights, z) -> float:
    """Relative error of ``sum_j (z_j / w_j) df/dz_j = f`` at ``z``."""
    z = np.asarray(z, dtype=complex)
    w = np.array([float(x) for x in weights])
    lhs = np.sum(z / w * gradient_values(f, z), axis=-1)
    rhs = evaluate(f, z)
    return float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1e-300)))
