"""Exact arithmetic over the Gaussian rationals Q(i).

Coefficients of every :class:`~milnor_atlas.polynomial.Polynomial` are stored
as :class:`GaussianRational` so that derivatives, Jacobian minors and the
weight systems are computed without rounding.  The univariate helpers at the
bottom work on coefficient lists (lowest degree first) and are used to reduce
dehomogenized minors to their square-free part before numerical root finding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


@dataclass(frozen=True)
class GaussianRational:
    """A complex number ``re + im*i`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _to_fraction(self.re))
        object.__setattr__(self, "im", _to_fraction(self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        """Convert ints, Fractions, floats, complex numbers or ``(re, im)`` pairs."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, tuple) and len(value) == 2:
            return cls(value[0], value[1])
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(_to_fraction(value), Fraction(0))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        d = other.norm2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"

    def __repr__(self):
        return f"GaussianRational({self})"


def _imag_str(q: Fraction) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    if q.denominator == 1:
        return f"{q.numerator}i"
    return f"({q})i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


# -- univariate polynomials over Q(i), coefficient lists lowest degree first --

def trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def derivative(p):
    return trim([k * p[k] for k in range(1, len(p))])


def mul(p, q):
    p, q = trim(p), trim(q)
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(p, q):
    """Return ``(quotient, remainder)`` of ``p / q``."""
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(rem) - 1 < dq:
        return [], rem
    quot = [ZERO] * (len(rem) - dq)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq] / lead
        quot[k] = c
        if c.is_zero():
            continue
        for j in range(dq + 1):
            rem[k + j] = rem[k + j] - c * q[j]
    return trim(quot), trim(rem[:dq])


def monic(p):
    p = trim(p)
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def gcd(p, q):
    """Monic greatest common divisor by the Euclidean algorithm."""
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, monic(r) if r else []
    return monic(a)


def squarefree_part(p):
    """Return ``p / gcd(p, p')`` made monic: same roots, all simple."""
    p = trim(p)
    if len(p) <= 2:
        return monic(p)
    g = gcd(p, derivative(p))
    q, r = divmod_poly(p, g)
    assert not r
    return monic(q)
