"""Coefficient rings for truncated series.

A ring object knows how to coerce scalars into its elements, invert
units, embed elements into complex floats and (de)serialize them.  The
elements themselves are plain Python values (Fraction, Cyclo, complex)
that already support ``+ - *``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Cyclo, zeta_power
from .errors import NotAUnitError, RingMismatchError


class CoefficientRing:
    """Contract shared by every coefficient ring."""

    name = "ring"
    exact = True

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        raise NotImplementedError

    def invert(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return not x

    def to_complex(self, x) -> complex:
        raise NotImplementedError

    def close(self, a, b) -> bool:
        return a == b

    def zeta(self, m: int, j: int = 1):
        """exp(2 pi i j / m) as an element of this ring."""
        raise NotImplementedError

    def to_json(self, x):
        raise NotImplementedError

    def from_json(self, obj):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(CoefficientRing):
    name = "QQ"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, Cyclo) and x.is_rational():
            return x.rational()
        raise RingMismatchError(f"cannot coerce {type(x).__name__} {x!r} into QQ")

    def invert(self, x):
        if not x:
            raise NotAUnitError("zero is not invertible")
        return 1 / x

    def to_complex(self, x) -> complex:
        return complex(float(x))

    def zeta(self, m: int, j: int = 1):
        j %= m
        if 2 * j % m:
            raise RingMismatchError(f"zeta_{m}^{j} is not rational")
        return Fraction(1 if j == 0 else -1)

    def to_json(self, x):
        return str(x)

    def from_json(self, obj):
        return Fraction(obj)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


@dataclass(frozen=True)
class CyclotomicField(CoefficientRing):
    conductor: int

    @property
    def name(self):
        return f"QQ(zeta_{self.conductor})"

    def coerce(self, x):
        if isinstance(x, Cyclo):
            if x.conductor == self.conductor:
                return x
            if self.conductor % x.conductor == 0:
                return x.lift(self.conductor)
            if x.is_rational():
                return Cyclo.from_rational(self.conductor, x.rational())
            raise RingMismatchError(f"{x!r} is not in {self.name}")
        if isinstance(x, (int, Fraction)):
            return Cyclo.from_rational(self.conductor, x)
        raise RingMismatchError(f"cannot coerce {type(x).__name__} into {self.name}")

    def invert(self, x):
        return x.inverse()

    def to_complex(self, x) -> complex:
        return x.to_complex()

    def zeta(self, m: int, j: int = 1):
        if self.conductor % m:
            raise RingMismatchError(f"zeta_{m} is not in {self.name}")
        return zeta_power(self.conductor, j * (self.conductor // m))

    def to_json(self, x):
        return x.to_json()

    def from_json(self, obj):
        return self.coerce(Cyclo.from_json(obj))

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class ComplexField(CoefficientRing):
    tol: float = 1e-12
    exact = False

    @property
    def name(self):
        return "CC"

    def coerce(self, x):
        if isinstance(x, Cyclo):
            return x.to_complex()
        if isinstance(x, (int, float, Fraction, complex)):
            return complex(x)
        raise RingMismatchError(f"cannot coerce {type(x).__name__} into CC")

    def invert(self, x):
        if x == 0:
            raise NotAUnitError("zero is not invertible")
        return 1 / x

    def is_zero(self, x) -> bool:
        return x == 0

    def to_complex(self, x) -> complex:
        return complex(x)

    def close(self, a, b) -> bool:
        return abs(a - b) <= self.tol * max(1.0, abs(a), abs(b))

    def zeta(self, m: int, j: int = 1):
        return cmath.exp(2j * cmath.pi * j / m)

    def to_json(self, x):
        return [x.real, x.imag]

    def from_json(self, obj):
        return complex(obj[0], obj[1])

    def __repr__(self):
        return "CC"


def common_ring(a: CoefficientRing, b: CoefficientRing) -> CoefficientRing:
    """Smallest ring among the supported ones containing both a and b."""
    if a == b:
        return a
    if isinstance(a, ComplexField) or isinstance(b, ComplexField):
        tol = max(getattr(a, "tol", 0.0), getattr(b, "tol", 0.0))
        return ComplexField(tol=tol)
    if a == QQ:
        return b
    if b == QQ:
        return a
    from math import lcm
    from .cyclotomic import cyclo_ring

    return cyclo_ring(lcm(a.conductor, b.conductor))
