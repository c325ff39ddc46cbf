"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

Elements are stored as coordinate vectors over the power basis
1, zeta, ..., zeta^(phi(m)-1), reduced modulo the m-th cyclotomic
polynomial, so every nonzero element is invertible.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import NotAUnitError, RingMismatchError

#: largest conductor handled exactly; beyond this callers fall back to complex floats
MAX_EXACT_CONDUCTOR = 12


def _poly_divmod_int(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials with monic den (low -> high)
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of Phi_m."""
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def _reduce(coeffs: list, m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            for j in range(deg):
                if phi[j]:
                    c[i - deg + j] -= lead * phi[j]
            c[i] = Fraction(0)
    c += [Fraction(0)] * (deg - len(c))
    return tuple(c[:deg])


# -- polynomial helpers over Q (low -> high) used for inversion --

def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _pdivmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    inv_lead = 1 / b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
    return _trim(q), a


def _psub_mul(a, q, b):
    # a - q*b
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _trim(out)


def _poly_inverse_mod(a: list[Fraction], modulus: list[Fraction]) -> list[Fraction]:
    """s with s*a == 1 mod modulus (modulus irreducible), via the extended Euclidean algorithm."""
    r0, r1 = list(modulus), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    if not r1:
        raise NotAUnitError("zero is not invertible")
    while len(r1) > 1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub_mul(s0, q, s1)
        if not r1:
            raise NotAUnitError("element is not a unit modulo the cyclotomic polynomial")
    c = 1 / r1[0]
    return [x * c for x in s1]


class Cyclo:
    """An element of Q(zeta_m), immutable."""

    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords):
        object.__setattr__(self, "conductor", int(conductor))
        phi = len(cyclotomic_polynomial(conductor)) - 1
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != phi:
            coords = _reduce(list(coords), conductor)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclo is immutable")

    # -- construction --
    @classmethod
    def from_rational(cls, m: int, x) -> "Cyclo":
        phi = len(cyclotomic_polynomial(m)) - 1
        return cls(m, (Fraction(x),) + (Fraction(0),) * (phi - 1))

    @classmethod
    def from_poly(cls, m: int, coeffs) -> "Cyclo":
        return cls(m, _reduce(list(coeffs), m))

    # -- conversions --
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coords[0]

    def to_complex(self) -> complex:
        m = self.conductor
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * k / m) for k, c in enumerate(self.coords) if c),
            0j,
        )

    def lift(self, M: int) -> "Cyclo":
        """Image under the inclusion Q(zeta_m) -> Q(zeta_M), m | M."""
        m = self.conductor
        if M % m:
            raise RingMismatchError(f"Q(zeta_{m}) does not embed in Q(zeta_{M})")
        step = M // m
        poly = [Fraction(0)] * (step * (len(self.coords) - 1) + 1)
        for k, c in enumerate(self.coords):
            poly[k * step] = c
        return Cyclo.from_poly(M, poly)

    # -- arithmetic --
    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.conductor != self.conductor:
                raise RingMismatchError(
                    f"conductor mismatch: {self.conductor} vs {other.conductor}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo.from_rational(self.conductor, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.conductor, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.conductor, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.conductor, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.conductor, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod = [Fraction(0)] * (2 * len(self.coords) - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        prod[i + j] += a * b
        return Cyclo(self.conductor, _reduce(prod, self.conductor))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if not self:
            raise NotAUnitError("zero is not invertible in a cyclotomic field")
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        return Cyclo.from_poly(self.conductor, _poly_inverse_mod(list(self.coords), mod))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise NotAUnitError("division by zero")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclo.from_rational(self.conductor, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.conductor == other.conductor and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.conductor, self.coords))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*z{self.conductor}^{k}")
        return " + ".join(terms) or "0"

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, obj: dict) -> "Cyclo":
        return cls(obj["conductor"], [Fraction(c) for c in obj["coords"]])


def zeta_power(m: int, j: int) -> Cyclo:
    """zeta_m ** j reduced modulo Phi_m, with zeta_m = exp(2 pi i / m)."""
    if m < 1:
        raise ValueError("conductor must be positive")
    j %= m
    poly = [Fraction(0)] * (j + 1)
    poly[j] = Fraction(1)
    return Cyclo.from_poly(m, poly)


def cyclo_ring(m: int):
    """Coefficient ring holding the m-th roots of unity.

    Q for m in {1, 2}, the exact field Q(zeta_m) up to MAX_EXACT_CONDUCTOR,
    and complex floats (tolerance 1e-9) beyond that.
    """
    from .rings import QQ, CyclotomicField, ComplexField

    if m < 1:
        raise ValueError("conductor must be positive")
    if m <= 2:
        return QQ
    if m <= MAX_EXACT_CONDUCTOR:
        return CyclotomicField(m)
    return ComplexField(tol=1e-9)
