"""Singular points of Milnor fibration product maps.

For polynomials ``f_1 .. f_m`` vanishing at the origin, the product map sends
``p`` on the sphere ``|z| = epsilon`` (off the zero sets) to
``(f_1(p)/|f_1(p)|, ..., f_m(p)/|f_m(p)|)``.  A point is singular exactly when
``p, i grad log f_1(p), ..., i grad log f_m(p)`` are linearly dependent over
the reals, which is what :func:`is_singular_numeric` measures.  For a pair
with proportional weights the test reduces to the vanishing of the 2x2
Jacobian minors (:func:`is_singular_algebraic`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import exact
from .exceptions import (
    CertificateRequired,
    ConstantTermPresent,
    DimensionMismatch,
    NotHomogeneous,
    NotWeightedHomogeneous,
    OffSphere,
    PointOnLink,
)
from .linalg import (
    jacobi_singular_values,
    normalize_columns,
    real_embed,
    real_orthonormal_complement,
    realify_columns,
)
from .polynomial import Polynomial, evaluate, gradient_values
from .roots import aberth_roots
from .weights import CommonWeightCertificate, common_weights_multi, weight_space

RANK_TOL = 1e-8
SPHERE_RTOL = 1e-9
CHORDAL_TOL = 1e-7
DEDUP_TOL = 1e-4

SINGULAR = "singular"
REGULAR = "regular"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class MapSpec:
    """Polynomials ``f_1 .. f_m`` in ``n`` variables and the sphere radius."""

    polys: tuple
    epsilon: float = 1.0

    def __post_init__(self):
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        object.__setattr__(self, "epsilon", float(self.epsilon))
        if not polys:
            raise ValueError("need at least one polynomial")
        n = polys[0].n_vars
        if any(f.n_vars != n for f in polys):
            raise DimensionMismatch("all polynomials must share the same variables")
        if not 1 <= len(polys) <= 2 * n - 1:
            raise ValueError(f"m = {len(polys)} polynomials need 1 <= m <= 2n-1 = {2 * n - 1}")
        for f in polys:
            if f.is_zero():
                raise ValueError("zero polynomial in map specification")
            if not f.constant_term().is_zero():
                raise ConstantTermPresent(f"{f} does not vanish at the origin")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")

    @property
    def n_vars(self) -> int:
        return self.polys[0].n_vars

    @property
    def m(self) -> int:
        return len(self.polys)


@dataclass(frozen=True)
class SingularityReport:
    point: tuple
    numeric_margin: float
    numeric_verdict: str
    algebraic_residual: float | None = None
    algebraic_verdict: str = NOT_APPLICABLE

    @property
    def is_singular(self) -> bool:
        return self.numeric_verdict == SINGULAR

    def to_dict(self):
        return {
            "point": [complex(z) for z in self.point],
            "numeric_margin": self.numeric_margin,
            "numeric_verdict": self.numeric_verdict,
            "algebraic_residual": self.algebraic_residual,
            "algebraic_verdict": self.algebraic_verdict,
        }


@dataclass(frozen=True)
class CircleFamily:
    """Singular circles ``{epsilon e^{i theta} d}`` of a homogeneous pair in two variables."""

    directions: tuple
    radius: float
    count: int
    bound: int
    degenerate_all_singular: bool
    minor: Polynomial | None = field(default=None, compare=False)

    def to_dict(self):
        return {
            "directions": [[complex(z) for z in d] for d in self.directions],
            "radius": self.radius,
            "count": self.count,
            "bound": self.bound,
            "degenerate_all_singular": self.degenerate_all_singular,
            "minor": None if self.minor is None else str(self.minor),
        }


class Dependence(NamedTuple):
    dependent: bool
    margin: float


# -- point checks -------------------------------------------------------------

def check_sphere_point(spec: MapSpec, p) -> np.ndarray:
    p = np.asarray(p, dtype=complex)
    if p.shape != (spec.n_vars,):
        raise DimensionMismatch(f"expected a point with {spec.n_vars} coordinates, got shape {p.shape}")
    norm = float(np.linalg.norm(p))
    if abs(norm - spec.epsilon) > SPHERE_RTOL * spec.epsilon:
        raise OffSphere(f"|p| = {norm:.17g} but epsilon = {spec.epsilon:.17g}", norm=norm)
    return p


def _check_off_link(spec: MapSpec, p):
    values = np.array([evaluate(f, p) for f in spec.polys])
    for j, (f, v) in enumerate(zip(spec.polys, values)):
        if abs(v) <= f.zero_tolerance(p):
            raise PointOnLink(f"|f{j + 1}(p)| = {abs(v):.3e} lies on the link", value=abs(v))
    return values


def phi(spec: MapSpec, p) -> np.ndarray:
    """The torus point ``(f_j(p) / |f_j(p)|)_j``."""
    p = check_sphere_point(spec, p)
    values = _check_off_link(spec, p)
    return values / np.abs(values)


# -- batched numerics ---------------------------------------------------------

def _i_log_gradients(spec: MapSpec, P):
    """``i grad log f_j`` at a batch of points.

    Returns an array of shape ``(..., m, n)`` and a mask of points that lie on
    some link (their rows are zero).
    """
    P = np.asarray(P, dtype=complex)
    out = np.zeros(P.shape[:-1] + (spec.m, spec.n_vars), dtype=complex)
    on_link = np.zeros(P.shape[:-1], dtype=bool)
    for j, f in enumerate(spec.polys):
        value = np.asarray(evaluate(f, P))
        bad = np.abs(value) <= f.zero_tolerance(P)
        on_link |= bad
        safe = np.where(bad, 1.0, value)
        grad = gradient_values(f, P)
        out[..., j, :] = np.where(bad[..., None], 0.0, 1j * np.conj(grad / safe[..., None]))
    return out, on_link


def dependence_matrix(spec: MapSpec, P) -> np.ndarray:
    """Real ``2n x (m+1)`` matrices with unit columns ``p, i grad log f_1, ...``."""
    P = np.asarray(P, dtype=complex)
    q, _ = _i_log_gradients(spec, P)
    cols = np.concatenate([P[..., None, :], q], axis=-2)
    return normalize_columns(np.swapaxes(real_embed(cols), -1, -2))


def dependence_margins(spec: MapSpec, P) -> np.ndarray:
    """Smallest singular value of :func:`dependence_matrix`; ``inf`` on the links."""
    P = np.asarray(P, dtype=complex)
    q, on_link = _i_log_gradients(spec, P)
    cols = np.concatenate([P[..., None, :], q], axis=-2)
    A = normalize_columns(np.swapaxes(real_embed(cols), -1, -2))
    margins = jacobi_singular_values(A)[..., -1]
    return np.where(on_link, np.inf, margins)


# -- single-point criteria ----------------------------------------------------

def differential_matrix(spec: MapSpec, p) -> np.ndarray:
    """``m x (2n-1)`` matrix of ``dPhi_p`` in an orthonormal basis of ``T_p S``.

    Row ``j`` holds ``Re <v_a, i grad log f_j(p)>`` for the basis vectors
    ``v_a``, scaled by ``1/|grad log f_j(p)|``; the unit tangent factor
    ``i f_j/|f_j|`` of the circle is dropped.
    """
    p = check_sphere_point(spec, p)
    _check_off_link(spec, p)
    tangent, _ = real_orthonormal_complement(real_embed(p)[None, :], 2 * spec.n_vars)
    q, _ = _i_log_gradients(spec, p)
    rows = real_embed(q)
    rows = rows / np.linalg.norm(rows, axis=-1, keepdims=True)
    return rows @ tangent.T


def differential_rank(spec: MapSpec, p, rank_tol: float = RANK_TOL) -> int:
    M = differential_matrix(spec, p)
    sv = jacobi_singular_values(M.T)
    return int(np.sum(sv[: min(M.shape)] > rank_tol))


def _verdict(value, tol):
    return SINGULAR if value <= tol else REGULAR


def is_singular_numeric(spec: MapSpec, p, rank_tol: float = RANK_TOL) -> SingularityReport:
    """Real-dependence test of ``p`` and the ``i grad log f_j(p)``."""
    p = check_sphere_point(spec, p)
    _check_off_link(spec, p)
    margin = float(dependence_margins(spec, p))
    return SingularityReport(
        point=tuple(complex(z) for z in p),
        numeric_margin=margin,
        numeric_verdict=_verdict(margin, rank_tol),
    )


def minor_residual(f: Polynomial, g: Polynomial, p) -> float:
    """``max_{j<k} |f_j g_k - f_k g_j|`` at ``p`` over ``|grad f| |grad g|``."""
    a = gradient_values(f, p)
    b = gradient_values(g, p)
    n = a.shape[-1]
    worst = 0.0
    for j in range(n):
        for k in range(j + 1, n):
            worst = max(worst, abs(a[j] * b[k] - a[k] * b[j]))
    return worst / (np.linalg.norm(a) * np.linalg.norm(b) + 1e-30)


def is_singular_algebraic(
    f: Polynomial,
    g: Polynomial,
    cert: CommonWeightCertificate | None,
    p,
    rank_tol: float = RANK_TOL,
) -> SingularityReport:
    """Minor criterion for a pair with ``w_g = s w_f``; the numeric margin is filled too."""
    if cert is None:
        raise CertificateRequired("the minor criterion needs common weights w_g = s*w_f")
    p = np.asarray(p, dtype=complex)
    spec = MapSpec((f, g), float(np.linalg.norm(p)))
    numeric = is_singular_numeric(spec, p, rank_tol)
    residual = float(minor_residual(f, g, p))
    return SingularityReport(
        point=numeric.point,
        numeric_margin=numeric.numeric_margin,
        numeric_verdict=numeric.numeric_verdict,
        algebraic_residual=residual,
        algebraic_verdict=_verdict(residual, rank_tol),
    )


def analyze_point(spec: MapSpec, p, certificate=None, rank_tol: float = RANK_TOL) -> SingularityReport:
    """Numeric verdict, plus the minor criterion when ``m = 2`` and weights are certified."""
    if spec.m == 2 and certificate is not None:
        p = check_sphere_point(spec, p)
        return is_singular_algebraic(spec.polys[0], spec.polys[1], certificate, p, rank_tol)
    return is_singular_numeric(spec, p, rank_tol)


def complex_dependence(vectors, tol: float = RANK_TOL) -> Dependence:
    """Whether the given complex vectors are linearly dependent over C.

    The margin is the smallest singular value of the matrix of normalized
    columns (zero if there are more vectors than coordinates).
    """
    vecs = [np.asarray(v, dtype=complex) for v in vectors]
    if not vecs:
        raise ValueError("need at least one vector")
    n = vecs[0].shape[-1]
    if any(v.shape != (n,) for v in vecs):
        raise DimensionMismatch("vectors must have equal lengths")
    M = np.stack(vecs, axis=-1)
    if np.any(np.linalg.norm(M, axis=0) == 0):
        return Dependence(True, 0.0)
    M = normalize_columns(M)
    sv = jacobi_singular_values(realify_columns(M))
    margin = float(sv[-1])
    return Dependence(margin <= tol, margin)


# -- two-variable homogeneous pairs -------------------------------------------

def jacobian_minor(f: Polynomial, g: Polynomial) -> Polynomial:
    """``R = df/dz1 dg/dz2 - df/dz2 dg/dz1``, computed exactly."""
    return f.partial(0) * g.partial(1) - f.partial(1) * g.partial(0)


def _dehomogenize(h: Polynomial, d: int):
    """Coefficients (lowest first) of ``h(1, t)`` for ``h`` homogeneous of degree ``d``."""
    coeffs = [exact.ZERO] * (d + 1)
    for (a, b), c in h.terms.items():
        coeffs[b] = c
    return exact.trim(coeffs)


def _chordal(d1, d2) -> float:
    overlap = abs(np.vdot(d1, d2))
    return math.sqrt(max(0.0, 1.0 - overlap * overlap))


def homogeneous_2var_circles(f: Polynomial, g: Polynomial, epsilon: float = 1.0) -> CircleFamily:
    """Enumerate the singular circles of a pair of homogeneous polynomials in two variables.

    The singular set lies on the lines where ``R = f_1 g_2 - f_2 g_1`` vanishes.
    The candidate lines are ``(1, t)`` for roots ``t`` of ``R(1, t)`` plus
    ``(0, 1)`` when ``z1`` divides ``R``.  Lines on which ``f g`` vanishes are
    removed exactly: the dehomogenized minor is reduced to its square-free part
    and divided by its gcd with ``f(1,t) g(1,t)`` before the remaining roots
    are located by Aberth-Ehrlich iteration.
    """
    if f.n_vars != 2 or g.n_vars != 2:
        raise DimensionMismatch("circle enumeration needs polynomials in exactly two variables")
    for h in (f, g):
        if h.is_zero() or not h.is_homogeneous() or h.degree() < 1:
            raise NotHomogeneous(f"{h} is not a nonconstant homogeneous polynomial")
    bound = f.degree() + g.degree() - 2
    R = jacobian_minor(f, g)
    if R.is_zero():
        return CircleFamily((), float(epsilon), 0, bound, True, R)
    d = R.degree()
    P = _dehomogenize(R, d)
    F = _dehomogenize(f, f.degree())
    G = _dehomogenize(g, g.degree())

    keep = exact.squarefree_part(P)
    common = exact.gcd(keep, exact.mul(F, G))
    if exact.degree(common) > 0:
        keep, rem = exact.divmod_poly(keep, common)
        assert not rem

    directions = []
    roots = aberth_roots([complex(c) for c in keep]) if exact.degree(keep) > 0 else []
    for t in roots:
        v = np.array([1.0, t], dtype=complex)
        v /= np.linalg.norm(v)
        # drop rounding residue so real lines print as real
        v.real[np.abs(v.real) < 1e-14] = 0.0
        v.imag[np.abs(v.imag) < 1e-14] = 0.0
        directions.append(v)
    # z1 = 0 is a root line iff R(1, t) lost degree; f, g nonzero there iff their z2^deg terms survive
    if exact.degree(P) < d:
        fz2 = f.terms.get((0, f.degree()))
        gz2 = g.terms.get((0, g.degree()))
        if fz2 is not None and gz2 is not None:
            directions.append(np.array([0.0, 1.0], dtype=complex))

    unique = []
    for v in directions:
        if all(_chordal(v, u) > CHORDAL_TOL for u in unique):
            unique.append(v)
    unique.sort(key=lambda v: (v[0] == 0, float(np.angle(v[1] / v[0])) if v[0] != 0 else 0.0))
    count = len(unique)
    assert count <= bound
    return CircleFamily(
        directions=tuple(tuple(complex(z) for z in v) for v in unique),
        radius=float(epsilon),
        count=count,
        bound=bound,
        degenerate_all_singular=False,
        minor=R,
    )


# -- sphere search ------------------------------------------------------------

def auto_certificate(spec: MapSpec) -> CommonWeightCertificate | None:
    """Common weights of the map's polynomials if they exist."""
    if spec.m == 1:
        try:
            sol = weight_space(spec.polys[0])
        except NotWeightedHomogeneous:
            return None
        return CommonWeightCertificate(sol.canonical_weights, (Fraction(1),))
    return common_weights_multi(spec.polys)


def circle_action(p, weights, t: float) -> np.ndarray:
    """``h_t(p)``: coordinate ``j`` is multiplied by ``exp(2 pi i t / w_j)``."""
    w = np.array([float(x) for x in weights])
    return np.asarray(p, dtype=complex) * np.exp(2j * np.pi * t / w)


def _orbit_period(weights) -> Fraction:
    nums = [Fraction(w).numerator for w in weights]
    dens = [Fraction(w).denominator for w in weights]
    return Fraction(math.lcm(*nums), math.gcd(*dens))


def orbit_normal_forms(p, weights, epsilon, max_variants=256):
    """Representatives of the circle orbit of ``p`` with the first visible coordinate real positive."""
    p = np.asarray(p, dtype=complex)
    big = np.flatnonzero(np.abs(p) > DEDUP_TOL * epsilon)
    if big.size == 0:
        return [p]
    j = int(big[0])
    wj = Fraction(weights[j])
    t0 = -float(np.angle(p[j])) * float(wj) / (2 * np.pi)
    shifts = int(min(_orbit_period(weights) / wj, max_variants))
    return [circle_action(p, weights, t0 + k * float(wj)) for k in range(max(shifts, 1))]


def _sort_key(report: SingularityReport):
    return (report.numeric_margin,) + tuple(x for z in report.point for x in (z.real, z.imag))


def sphere_search(
    spec: MapSpec,
    restarts: int = 64,
    iterations: int = 300,
    seed: int = 0,
    *,
    certificate=None,
    rank_tol: float = RANK_TOL,
    return_margins: bool = False,
):
    """Multi-start descent on the dependence margin over the sphere.

    Every restart starts from a normalized Gaussian sample and performs
    steepest descent on ``x -> margin(epsilon * x / |x|)`` in the real chart
    ``R^{2n}``, with central-difference gradients, re-projection onto the
    sphere after each step and step halving whenever the margin does not
    decrease.  All restarts advance together as one batch, so the output does
    not depend on any scheduling.

    Parameters
    ----------
    certificate : CommonWeightCertificate, optional
        Used to identify hits lying on the same circle orbit; computed
        automatically when omitted.
    return_margins : bool
        Also return the final margin of every restart.

    Returns
    -------
    list of SingularityReport
        Local minima with margin ``<= 10 * rank_tol``, one per orbit, sorted by
        ``(margin, point)``.
    """
    if restarts < 1 or iterations < 1:
        raise ValueError("restarts and iterations must be at least 1")
    n, eps = spec.n_vars, spec.epsilon
    dim = 2 * n
    if certificate is None:
        certificate = auto_certificate(spec)

    def margin_of(X):
        X = np.asarray(X)
        X = X / np.linalg.norm(X, axis=-1, keepdims=True)
        return dependence_margins(spec, eps * (X[..., :n] + 1j * X[..., n:]))

    rng = np.random.default_rng(seed)
    X = rng.standard_normal((restarts, dim))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    margins = margin_of(X)
    for _ in range(10):
        bad = ~np.isfinite(margins)
        if not np.any(bad):
            break
        fresh = rng.standard_normal((int(bad.sum()), dim))
        X[bad] = fresh / np.linalg.norm(fresh, axis=1, keepdims=True)
        margins[bad] = margin_of(X[bad])

    step = np.full(restarts, 0.5)
    eye = np.eye(dim)
    for _ in range(iterations):
        h = np.clip(0.1 * step, 1e-9, 1e-4)
        probes = X[:, None, None, :] + np.array([1.0, -1.0])[None, :, None, None] * (
            h[:, None, None, None] * eye[None, None, :, :]
        )
        vals = margin_of(probes)
        grad = (vals[:, 0, :] - vals[:, 1, :]) / (2 * h[:, None])
        grad[~np.isfinite(grad)] = 0.0
        grad -= np.sum(grad * X, axis=1, keepdims=True) * X
        gnorm = np.linalg.norm(grad, axis=1)
        moving = gnorm > 0
        direction = np.where(moving[:, None], -grad / np.where(moving, gnorm, 1.0)[:, None], 0.0)
        trial = X + step[:, None] * direction
        trial /= np.linalg.norm(trial, axis=1, keepdims=True)
        trial_margins = margin_of(trial)
        accept = moving & (trial_margins < margins)
        X[accept] = trial[accept]
        margins[accept] = trial_margins[accept]
        step[~accept] *= 0.5

    points = eps * (X[:, :n] + 1j * X[:, n:])
    hits = []
    for p, mval in zip(points, margins):
        if not mval <= 10 * rank_tol:
            continue
        p = p * (eps / np.linalg.norm(p))
        hits.append(analyze_point(spec, p, certificate if spec.m == 2 else None, rank_tol))
    hits.sort(key=_sort_key)

    weights = certificate.weights if certificate is not None else None
    kept, kept_forms = [], []
    for rep in hits:
        p = np.array(rep.point)
        forms = orbit_normal_forms(p, weights, eps) if weights is not None else [p]
        probe = forms[0]
        if any(
            np.linalg.norm(probe - other) / eps < DEDUP_TOL for others in kept_forms for other in others
        ):
            continue
        kept.append(rep)
        kept_forms.append(forms)
    if return_margins:
        return kept, margins
    return kept
