"""Sparse complex multivariate polynomials and logarithmic derivatives.

Polynomials keep exact Gaussian-rational coefficients; numerical evaluation
happens in double precision and is vectorized over leading axes, so a single
call can evaluate a polynomial at a whole batch of points of shape ``(..., n)``.

The gradient convention follows Milnor: ``grad log f(p)`` has entries
``conj(df/dz_j(p) / f(p))``.
"""
from __future__ import annotations

from functools import cached_property
from types import MappingProxyType

import numpy as np

from .exact import GaussianRational
from .exceptions import DimensionMismatch, EvaluationOnZeroSet

ZERO_TOL = 1e-12


class Polynomial:
    """Immutable sparse polynomial in ``n_vars`` complex variables.

    Parameters
    ----------
    n_vars : int
        Number of variables ``z1 .. zn``.
    terms : mapping
        Exponent tuple -> coefficient.  Coefficients may be anything accepted
        by :meth:`GaussianRational.coerce`; zero coefficients are dropped.

    Examples
    --------
    >>> f = Polynomial.parse("z1^2 + z2^2")
    >>> f([1, 1j])
    0j
    """

    def __init__(self, n_vars: int, terms=None):
        if int(n_vars) < 1:
            raise ValueError("n_vars must be positive")
        self._n_vars = int(n_vars)
        clean = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self._n_vars:
                raise DimensionMismatch(
                    f"exponent {exps} has length {len(exps)}, expected {self._n_vars}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = GaussianRational.coerce(coef)
            if exps in clean:
                c = clean[exps] + c
            if c.is_zero():
                clean.pop(exps, None)
            else:
                clean[exps] = c
        self._terms = MappingProxyType(dict(sorted(clean.items())))

    # -- constructors -----------------------------------------------------

    @classmethod
    def parse(cls, text: str, n_vars: int | None = None) -> "Polynomial":
        from .parser import parse_polynomial

        return parse_polynomial(text, n_vars, cls)

    @classmethod
    def constant(cls, value, n_vars: int) -> "Polynomial":
        return cls(n_vars, {(0,) * n_vars: value})

    @classmethod
    def variable(cls, j: int, n_vars: int) -> "Polynomial":
        """The coordinate ``z_{j+1}`` (``j`` is 0-based)."""
        if not 0 <= j < n_vars:
            raise IndexError(f"variable index {j} out of range for n_vars={n_vars}")
        exps = [0] * n_vars
        exps[j] = 1
        return cls(n_vars, {tuple(exps): 1})

    # -- basic properties -------------------------------------------------

    @property
    def n_vars(self) -> int:
        return self._n_vars

    @property
    def terms(self):
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def constant_term(self) -> GaussianRational:
        return self._terms.get((0,) * self._n_vars, GaussianRational(0))

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def with_n_vars(self, n_vars: int) -> "Polynomial":
        """Embed into a ring with at least as many variables."""
        if n_vars < self._n_vars:
            if any(any(e[n_vars:]) for e in self._terms):
                raise DimensionMismatch("polynomial uses variables beyond the target ring")
            return Polynomial(n_vars, {e[:n_vars]: c for e, c in self._terms.items()})
        pad = (0,) * (n_vars - self._n_vars)
        return Polynomial(n_vars, {e + pad: c for e, c in self._terms.items()})

    # -- arithmetic -------------------------------------------------------

    def _check_ring(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self._n_vars)
        if other.n_vars != self._n_vars:
            raise DimensionMismatch(
                f"polynomials live in {self._n_vars} and {other.n_vars} variables"
            )
        return other

    def __add__(self, other):
        other = self._check_ring(other)
        terms = dict(self._terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return Polynomial(self._n_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self._n_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check_ring(other))

    def __rsub__(self, other):
        return self._check_ring(other) - self

    def __mul__(self, other):
        other = self._check_ring(other)
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms[e] + c1 * c2 if e in terms else c1 * c2
        return Polynomial(self._n_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1, self._n_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._n_vars == other.n_vars and dict(self._terms) == dict(other.terms)

    def __hash__(self):
        return hash((self._n_vars, tuple(self._terms.items())))

    # -- calculus ---------------------------------------------------------

    def partial(self, j: int) -> "Polynomial":
        """Exact holomorphic partial derivative with respect to ``z_{j+1}``."""
        if not 0 <= j < self._n_vars:
            raise IndexError(f"variable index {j} out of range for n_vars={self._n_vars}")
        terms = {}
        for e, c in self._terms.items():
            if e[j] == 0:
                continue
            d = list(e)
            d[j] -= 1
            terms[tuple(d)] = c * e[j]
        return Polynomial(self._n_vars, terms)

    @cached_property
    def gradient(self) -> tuple:
        return tuple(self.partial(j) for j in range(self._n_vars))

    @cached_property
    def hessian(self) -> tuple:
        g = self.gradient
        return tuple(tuple(g[j].partial(k) for k in range(self._n_vars)) for j in range(self._n_vars))

    # -- numerics ---------------------------------------------------------

    @cached_property
    def _compiled(self):
        exps = np.array(list(self._terms.keys()), dtype=np.intp).reshape(-1, self._n_vars)
        coefs = np.array([complex(c) for c in self._terms.values()], dtype=complex)
        return exps, coefs

    def __call__(self, p):
        return evaluate(self, p)

    def zero_tolerance(self, p) -> np.ndarray:
        """Scale-aware threshold below which ``|f(p)|`` counts as zero."""
        norm = np.linalg.norm(np.asarray(p, dtype=complex), axis=-1)
        return ZERO_TOL * (1.0 + norm ** max(self.degree(), 0))

    # -- display ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda t: (-sum(t[0]), [-x for x in t[0]])):
            mono = "*".join(
                f"z{j + 1}" if k == 1 else f"z{j + 1}^{k}" for j, k in enumerate(e) if k
            )
            if not mono:
                parts.append(_coef_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{_coef_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self._n_vars}, {str(self)!r})"


def _coef_str(c: GaussianRational) -> str:
    """Coefficient text that the grammar parses back to the same value."""
    if c.im == 0 and c.re.denominator == 1:
        return str(c.re)
    pieces = []
    if c.re != 0:
        pieces.append(str(c.re))
    if c.im != 0:
        mag = abs(c.im)
        im = "i" if mag == 1 else f"{mag}*i"
        sign = "-" if c.im < 0 else ("+" if pieces else "")
        pieces.append(f"{sign}{im}")
    return "(" + "".join(pieces) + ")"


def _as_points(p, n_vars):
    arr = np.asarray(p, dtype=complex)
    if arr.ndim == 0 or arr.shape[-1] != n_vars:
        raise DimensionMismatch(f"expected points with {n_vars} coordinates, got shape {arr.shape}")
    return arr


def evaluate(f: Polynomial, p):
    """Evaluate ``f`` at ``p`` (shape ``(n,)`` or a batch ``(..., n)``).

    Powers are formed by repeated multiplication, so e.g. ``i*i`` is exactly
    ``-1`` and simple identities hold without rounding noise.
    """
    arr = _as_points(p, f.n_vars)
    exps, coefs = f._compiled
    if coefs.size == 0:
        out = np.zeros(arr.shape[:-1], dtype=complex)
        return out if out.ndim else complex(out)
    dmax = int(exps.max())
    powers = np.ones(arr.shape[:-1] + (dmax + 1, f.n_vars), dtype=complex)
    for k in range(1, dmax + 1):
        powers[..., k, :] = powers[..., k - 1, :] * arr
    cols = np.arange(f.n_vars)
    monomials = np.prod(powers[..., exps, cols], axis=-1)
    out = monomials @ coefs
    return out if np.ndim(out) else complex(out)


def partial(f: Polynomial, j: int) -> Polynomial:
    return f.partial(j)


def hermitian(u, v) -> complex:
    """``<u, v> = sum_j u_j conj(v_j)``; its real part is the Euclidean product in R^2n."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape[-1] != v.shape[-1]:
        raise DimensionMismatch(f"vectors of lengths {u.shape[-1]} and {v.shape[-1]}")
    out = np.sum(u * np.conj(v), axis=-1)
    return out if np.ndim(out) else complex(out)


def gradient_values(f: Polynomial, p):
    """Holomorphic gradient ``(df/dz_1, ..., df/dz_n)`` at ``p`` (batched)."""
    arr = _as_points(p, f.n_vars)
    return np.stack([evaluate(g, arr) for g in f.gradient], axis=-1)


def _nonzero_value(f, p):
    value = np.asarray(evaluate(f, p))
    tol = f.zero_tolerance(p)
    if np.any(np.abs(value) <= tol):
        raise EvaluationOnZeroSet(
            f"|f(p)| = {float(np.min(np.abs(value))):.3e} is below the degeneracy tolerance",
            value=float(np.min(np.abs(value))),
        )
    return value


def log_gradient(f: Polynomial, p) -> np.ndarray:
    """Milnor's ``grad log f(p)``: entries ``conj((df/dz_j)(p) / f(p))``."""
    p = _as_points(p, f.n_vars)
    value = _nonzero_value(f, p)
    return np.conj(gradient_values(f, p) / value[..., None])


def log_hessian(f: Polynomial, p) -> np.ndarray:
    """Holomorphic Hessian of ``log f`` at ``p``.

    Entry ``(j, k)`` is ``(f*f_jk - f_j*f_k) / f**2``.
    """
    p = _as_points(p, f.n_vars)
    if p.ndim != 1:
        raise DimensionMismatch("log_hessian expects a single point")
    value = complex(_nonzero_value(f, p))
    grad = gradient_values(f, p)
    n = f.n_vars
    H = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(j, n):
            fjk = evaluate(f.hessian[j][k], p)
            H[j, k] = H[k, j] = (value * fjk - grad[j] * grad[k]) / value**2
    return H


def combined_hessian(f: Polynomial, g: Polynomial, s, p) -> np.ndarray:
    """``Hess_p(-i (log g - s log f))``, the matrix entering the fold test."""
    s = float(s)
    return -1j * (log_hessian(g, p) - s * log_hessian(f, p))


def parse_polynomials(texts, n_vars: int | None = None) -> tuple:
    """Parse several expressions into one common ring ``C[z1..zn]``.

    ``n`` defaults to the largest variable index used by any expression.
    """
    from .parser import max_variable_index

    texts = list(texts)
    if n_vars is None:
        n_vars = max([1] + [max_variable_index(t) for t in texts])
    return tuple(Polynomial.parse(t, n_vars) for t in texts)
