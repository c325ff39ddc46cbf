"""Truncated formal power / Laurent series over a pluggable coefficient ring.

``QSeries`` is a series in ``t = q^(1/L)``; exponents are integers on that
grid and everything at or beyond ``trunc`` is unknown.  ``BiSeries`` is a
series in an outer variable (Z, X, y, ...) whose coefficients are QSeries.

Every value is immutable.  Asking for a coefficient past the truncation
raises ``TruncationError`` instead of returning zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Iterator, Sequence

from .errors import NotAUnitError, PreconditionError, RingMismatchError, TruncationError
from .rings import QQ, CoefficientRing, ComplexField, CyclotomicField


def _is_scalar(x) -> bool:
    return not isinstance(x, (QSeries, BiSeries))


class QSeries:
    """Truncated Laurent series sum_e c_e q^(e/denom), known for e < trunc."""

    __slots__ = ("ring", "denom", "start", "trunc", "_c")

    def __init__(self, ring: CoefficientRing, coeffs: Sequence = (), start: int = 0,
                 trunc: int | None = None, denom: int = 1):
        if denom < 1:
            raise PreconditionError("denominator must be a positive integer")
        coeffs = [ring.coerce(c) for c in coeffs]
        if trunc is None:
            trunc = start + len(coeffs)
        if trunc < start:
            start = trunc
        n = trunc - start
        coeffs = coeffs[:n]
        if len(coeffs) < n:
            coeffs += [ring.zero] * (n - len(coeffs))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "denom", int(denom))
        object.__setattr__(self, "start", int(start))
        object.__setattr__(self, "trunc", int(trunc))
        object.__setattr__(self, "_c", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def _raw(cls, ring, coeffs: list, start: int, trunc: int, denom: int) -> "QSeries":
        # trusted constructor: coeffs already coerced and exactly trunc - start long
        s = object.__new__(cls)
        object.__setattr__(s, "ring", ring)
        object.__setattr__(s, "denom", denom)
        object.__setattr__(s, "start", start)
        object.__setattr__(s, "trunc", trunc)
        object.__setattr__(s, "_c", tuple(coeffs))
        return s

    # ------------------------------------------------------------------
    # construction helpers
    @classmethod
    def from_dict(cls, coeffs: dict, trunc: int, ring: CoefficientRing = QQ,
                  denom: int = 1) -> "QSeries":
        """Series from {grid exponent: coefficient}; entries at or past trunc are dropped."""
        keys = [e for e in coeffs if e < trunc]
        start = min(keys, default=0)
        start = min(start, trunc)
        dense = [ring.zero] * (trunc - start)
        for e in keys:
            dense[e - start] = ring.coerce(coeffs[e])
        return cls._raw(ring, dense, start, trunc, denom)

    @classmethod
    def constant(cls, c, trunc: int, ring: CoefficientRing = QQ, denom: int = 1) -> "QSeries":
        return cls.from_dict({0: c}, trunc, ring, denom)

    @classmethod
    def one(cls, trunc: int, ring: CoefficientRing = QQ, denom: int = 1) -> "QSeries":
        return cls.constant(1, trunc, ring, denom)

    @classmethod
    def zero(cls, trunc: int, ring: CoefficientRing = QQ, denom: int = 1) -> "QSeries":
        return cls._raw(ring, [ring.zero] * max(trunc, 0), 0, max(trunc, 0), denom) \
            if trunc >= 0 else cls._raw(ring, [], trunc, trunc, denom)

    @classmethod
    def monomial(cls, c, exponent: int, trunc: int, ring: CoefficientRing = QQ,
                 denom: int = 1) -> "QSeries":
        return cls.from_dict({exponent: c}, trunc, ring, denom)

    @classmethod
    def from_function(cls, f: Callable[[int], object], trunc: int, ring: CoefficientRing = QQ,
                      start: int = 0, denom: int = 1) -> "QSeries":
        return cls(ring, [f(e) for e in range(start, trunc)], start, trunc, denom)

    # ------------------------------------------------------------------
    # access
    def __getitem__(self, e: int):
        return self.coeff(e)

    def coeff(self, e: int):
        """Coefficient of q^(e/denom)."""
        if e >= self.trunc:
            raise TruncationError(f"exponent {e} is at or beyond truncation {self.trunc}")
        if e < self.start:
            return self.ring.zero
        return self._c[e - self.start]

    def coeff_at(self, exponent: Fraction):
        """Coefficient of q^exponent for a rational exponent."""
        exponent = Fraction(exponent)
        e = exponent * self.denom
        if e.denominator != 1:
            if e >= self.trunc:
                raise TruncationError(f"exponent {exponent} is at or beyond the truncation")
            return self.ring.zero
        return self.coeff(int(e))

    def coefficients(self, upto: int | None = None) -> list:
        """Dense coefficient list for exponents 0 .. upto-1 (default: trunc)."""
        upto = self.trunc if upto is None else upto
        return [self.coeff(e) for e in range(0, upto)]

    def items(self) -> Iterator[tuple[int, object]]:
        for i, c in enumerate(self._c):
            if not self.ring.is_zero(c):
                yield self.start + i, c

    def valuation(self) -> int | None:
        for e, _ in self.items():
            return e
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def __len__(self):
        return self.trunc - self.start

    # ------------------------------------------------------------------
    # reshaping
    def rescale(self, denom: int) -> "QSeries":
        """Same series on the finer grid q^(1/denom); denom must be a multiple of self.denom."""
        if denom == self.denom:
            return self
        if denom % self.denom:
            raise PreconditionError(f"cannot rescale denominator {self.denom} to {denom}")
        f = denom // self.denom
        z = self.ring.zero
        dense = [z] * ((self.trunc - self.start) * f)
        for i, c in enumerate(self._c):
            dense[i * f] = c
        return QSeries._raw(self.ring, dense, self.start * f, self.trunc * f, denom)

    def truncate(self, trunc: int) -> "QSeries":
        if trunc >= self.trunc:
            return self
        start = min(self.start, trunc)
        return QSeries._raw(self.ring, list(self._c[: trunc - start]), start, trunc, self.denom)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^(k/denom)."""
        return QSeries._raw(self.ring, list(self._c), self.start + k, self.trunc + k, self.denom)

    def change_ring(self, ring: CoefficientRing) -> "QSeries":
        if ring == self.ring:
            return self
        return QSeries._raw(ring, [ring.coerce(c) for c in self._c], self.start, self.trunc,
                            self.denom)

    def map(self, f: Callable) -> "QSeries":
        return QSeries(self.ring, [f(c) for c in self._c], self.start, self.trunc, self.denom)

    # ------------------------------------------------------------------
    # arithmetic
    def _unify(self, other: "QSeries") -> tuple["QSeries", "QSeries"]:
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
        if other.denom == self.denom:
            return self, other
        L = lcm(self.denom, other.denom)
        return self.rescale(L), other.rescale(L)

    def _scalar(self, c) -> "QSeries":
        return self.constant(c, self.trunc, self.ring, self.denom)

    def __add__(self, other):
        if _is_scalar(other):
            other = self._scalar(other)
        elif not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._unify(other)
        trunc = min(a.trunc, b.trunc)
        start = min(a.start, b.start, trunc)
        z = a.ring.zero
        out = [z] * (trunc - start)
        for s in (a, b):
            off = s.start - start
            for i, c in enumerate(s._c[: max(trunc - s.start, 0)]):
                out[off + i] = out[off + i] + c
        return QSeries._raw(a.ring, out, start, trunc, a.denom)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw(self.ring, [-c for c in self._c], self.start, self.trunc, self.denom)

    def __sub__(self, other):
        if _is_scalar(other):
            other = self._scalar(other)
        elif not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = self.ring.coerce(c)
        return QSeries._raw(self.ring, [x * c for x in self._c], self.start, self.trunc,
                            self.denom)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._unify(other)
        start = a.start + b.start
        trunc = min(a.trunc + b.start, b.trunc + a.start)
        n = trunc - start
        if n <= 0:
            return QSeries._raw(a.ring, [], trunc, trunc, a.denom)
        is_zero = a.ring.is_zero
        out = [a.ring.zero] * n
        bc = b._c
        for i, x in enumerate(a._c[:n]):
            if is_zero(x):
                continue
            for j in range(min(len(bc), n - i)):
                y = bc[j]
                if not is_zero(y):
                    out[i + j] = out[i + j] + x * y
        return QSeries._raw(a.ring, out, start, trunc, a.denom)

    __rmul__ = __mul__

    def invert(self) -> "QSeries":
        """Multiplicative inverse; the lowest nonzero coefficient must be a unit."""
        v = self.valuation()
        if v is None:
            raise NotAUnitError("series is zero to its truncation; not invertible")
        u = self._c[v - self.start:]
        inv0 = self.ring.invert(u[0])
        n = len(u)
        out = [inv0]
        for k in range(1, n):
            acc = self.ring.zero
            for i in range(1, k + 1):
                if not self.ring.is_zero(u[i]):
                    acc = acc + u[i] * out[k - i]
            out.append(-(acc * inv0))
        return QSeries._raw(self.ring, out, -v, self.trunc - 2 * v, self.denom)

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(self.ring.invert(self.ring.coerce(other)))
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return self.invert() ** (-n)
        if n == 0:
            return QSeries.one(self.trunc - self.start, self.ring, self.denom)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _require_no_negative(self, what: str):
        for e, _ in self.items():
            if e < 0:
                raise PreconditionError(f"{what}: series has negative exponents")
            break

    def exp(self) -> "QSeries":
        """Formal exponential; the constant term must vanish."""
        self._require_no_negative("exp")
        if self.trunc > 0 and not self.ring.is_zero(self.coeff(0)):
            raise PreconditionError("exp: constant term must be zero")
        n = self.trunc
        if n <= 0:
            return QSeries._raw(self.ring, [], n, n, self.denom)
        a = [self.coeff(e) for e in range(n)]
        f = [self.ring.one]
        for m in range(1, n):
            acc = self.ring.zero
            for k in range(1, m + 1):
                if not self.ring.is_zero(a[k]):
                    acc = acc + (a[k] * k) * f[m - k]
            f.append(acc * Fraction(1, m))
        return QSeries._raw(self.ring, f, 0, n, self.denom)

    def log(self) -> "QSeries":
        """Formal logarithm; the constant term must be one."""
        self._require_no_negative("log")
        n = self.trunc
        if n <= 0 or self.coeff(0) != self.ring.one:
            raise PreconditionError("log: constant term must be one")
        a = [self.coeff(e) for e in range(n)]
        g = [self.ring.zero]
        for m in range(1, n):
            acc = a[m] * m
            for k in range(1, m):
                if not self.ring.is_zero(a[m - k]):
                    acc = acc - (g[k] * k) * a[m - k]
            g.append(acc * Fraction(1, m))
        return QSeries._raw(self.ring, g, 0, n, self.denom)

    # ------------------------------------------------------------------
    # comparison
    def __eq__(self, other):
        if _is_scalar(other):
            other = self._scalar(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.ring != self.ring:
            return False
        a, b = self._unify(other)
        return a.trunc == b.trunc and a.first_discrepancy(b) is None

    __hash__ = None

    def first_discrepancy(self, other: "QSeries", upto: int | None = None):
        """First (exponent, self value, other value) where the two disagree.

        Compared on the common truncation (optionally capped at ``upto`` in
        units of the unified grid).  Inexact rings compare with their tolerance.
        Returns None when they agree.
        """
        a, b = self._unify(other)
        trunc = min(a.trunc, b.trunc)
        if upto is not None:
            trunc = min(trunc, upto * (a.denom // self.denom))
        close = a.ring.close
        for e in range(min(a.start, b.start), trunc):
            x, y = a.coeff(e), b.coeff(e)
            if not close(x, y):
                return (Fraction(e, a.denom), x, y)
        return None

    def agrees_with(self, other: "QSeries", upto: int | None = None) -> bool:
        return self.first_discrepancy(other, upto) is None

    # ------------------------------------------------------------------
    # display / serialization
    def __repr__(self):
        terms = []
        for e, c in self.items():
            x = Fraction(e, self.denom)
            mono = "" if x == 0 else ("q" if x == 1 else f"q^{x}")
            terms.append(f"({c}){('*' + mono) if mono else ''}")
            if len(terms) > 8:
                terms.append("...")
                break
        body = " + ".join(terms) or "0"
        return f"QSeries[{self.ring}]({body} + O(q^{Fraction(self.trunc, self.denom)}))"

    def to_json(self) -> dict:
        obj = {
            "denom": self.denom,
            "trunc": self.trunc,
            "coeffs": [[e, self.ring.to_json(c)] for e, c in self.items()],
        }
        if self.ring != QQ:
            obj["ring"] = ring_to_json(self.ring)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "QSeries":
        ring = ring_from_json(obj.get("ring", "QQ"))
        coeffs = {int(e): ring.from_json(c) for e, c in obj["coeffs"]}
        return cls.from_dict(coeffs, int(obj["trunc"]), ring, int(obj["denom"]))


def ring_to_json(ring: CoefficientRing):
    if ring == QQ:
        return "QQ"
    if isinstance(ring, CyclotomicField):
        return {"cyclotomic": ring.conductor}
    if isinstance(ring, ComplexField):
        return {"complex": ring.tol}
    raise TypeError(f"unserializable ring {ring!r}")


def ring_from_json(obj) -> CoefficientRing:
    if obj == "QQ":
        return QQ
    if "cyclotomic" in obj:
        return CyclotomicField(int(obj["cyclotomic"]))
    if "complex" in obj:
        return ComplexField(tol=float(obj["complex"]))
    raise ValueError(f"unknown ring {obj!r}")


# ----------------------------------------------------------------------
# named series

def q_monomial(trunc: int, exponent: int = 1, ring: CoefficientRing = QQ,
               denom: int = 1) -> QSeries:
    return QSeries.monomial(1, exponent, trunc, ring, denom)


def eta_pochhammer(N: int) -> QSeries:
    """(q;q)_inf = prod_{n>=1} (1 - q^n) modulo q^N, by direct product expansion."""
    if N < 1:
        raise PreconditionError("N must be >= 1")
    c = [Fraction(0)] * N
    c[0] = Fraction(1)
    for n in range(1, N):
        for e in range(N - 1, n - 1, -1):
            c[e] -= c[e - n]
    return QSeries._raw(QQ, c, 0, N, 1)


def geometric(c, step: int, trunc: int, ring: CoefficientRing = QQ, denom: int = 1,
              first: int | None = None) -> QSeries:
    """1/(1 - c q^step), or q^first/(1 - c q^step) when ``first`` is given."""
    coeffs = {}
    if first is None:
        e, cm = 0, ring.one
    else:
        e, cm = first, ring.one
    cc = ring.coerce(c)
    while e < trunc:
        coeffs[e] = cm
        e += step
        cm = cm * cc
    return QSeries.from_dict(coeffs, trunc, ring, denom)


# ----------------------------------------------------------------------
# bivariate series

class BiSeries:
    """sum_t coeffs[t - start] * var^t with QSeries coefficients, known for t < trunc.

    All inner series share ring, denominator and inner truncation.
    """

    __slots__ = ("var", "start", "trunc", "coeffs", "ring", "denom", "inner_trunc")

    def __init__(self, coeffs: Sequence[QSeries], start: int = 0, trunc: int | None = None,
                 var: str = "Z", ring: CoefficientRing | None = None,
                 inner_trunc: int | None = None, denom: int | None = None):
        coeffs = list(coeffs)
        if ring is None:
            if not coeffs:
                raise PreconditionError("ring required for an empty BiSeries")
            ring = coeffs[0].ring
        if trunc is None:
            trunc = start + len(coeffs)
        if trunc < start:
            start = trunc
        if denom is None:
            denom = lcm(*(c.denom for c in coeffs)) if coeffs else 1
        if inner_trunc is None:
            if not coeffs:
                raise PreconditionError("inner_trunc required for an empty BiSeries")
            inner_trunc = min(c.rescale(denom).trunc for c in coeffs)
        n = trunc - start
        norm = []
        for c in coeffs[:n]:
            if c.ring != ring:
                raise RingMismatchError(f"inner ring {c.ring} differs from {ring}")
            norm.append(c.rescale(denom).truncate(inner_trunc))
        while len(norm) < n:
            norm.append(QSeries.zero(inner_trunc, ring, denom))
        for name, value in (("var", var), ("start", start), ("trunc", trunc),
                            ("coeffs", tuple(norm)), ("ring", ring), ("denom", denom),
                            ("inner_trunc", inner_trunc)):
            object.__setattr__(self, name, value)

    def __setattr__(self, name, value):
        raise AttributeError("BiSeries is immutable")

    # -- construction --
    @classmethod
    def from_scalars(cls, coeffs: dict, trunc: int, inner_trunc: int, var: str = "Z",
                     ring: CoefficientRing = QQ, denom: int = 1) -> "BiSeries":
        """Outer series with constant (q-free) coefficients {t: c}."""
        start = min(min(coeffs, default=0), trunc)
        inner = [QSeries.constant(coeffs.get(t, 0), inner_trunc, ring, denom)
                 for t in range(start, trunc)]
        return cls(inner, start, trunc, var, ring, inner_trunc, denom)

    @classmethod
    def constant(cls, s: QSeries, trunc: int, var: str = "Z") -> "BiSeries":
        """The QSeries s viewed as a series in var with only a var^0 term."""
        return cls([s], 0, trunc, var, s.ring, s.trunc, s.denom)

    def _zero_inner(self) -> QSeries:
        return QSeries.zero(self.inner_trunc, self.ring, self.denom)

    # -- access --
    def coeff(self, t: int) -> QSeries:
        if t >= self.trunc:
            raise TruncationError(f"{self.var}-exponent {t} is at or beyond truncation {self.trunc}")
        if t < self.start:
            return self._zero_inner()
        return self.coeffs[t - self.start]

    __getitem__ = coeff

    def outer_valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return self.start + i
        return None

    def truncate(self, trunc: int | None = None, inner_trunc: int | None = None) -> "BiSeries":
        trunc = self.trunc if trunc is None else min(trunc, self.trunc)
        inner = self.inner_trunc if inner_trunc is None else min(inner_trunc, self.inner_trunc)
        return BiSeries(self.coeffs[: max(trunc - self.start, 0)], self.start, trunc, self.var,
                        self.ring, inner, self.denom)

    def change_ring(self, ring: CoefficientRing) -> "BiSeries":
        return BiSeries([c.change_ring(ring) for c in self.coeffs], self.start, self.trunc,
                        self.var, ring, self.inner_trunc, self.denom)

    def map_inner(self, f: Callable[[QSeries], QSeries]) -> "BiSeries":
        return BiSeries([f(c) for c in self.coeffs], self.start, self.trunc, self.var, self.ring)

    # -- arithmetic --
    def _check(self, other: "BiSeries"):
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
        if other.var != self.var:
            raise PreconditionError(f"outer variable mismatch: {self.var} vs {other.var}")

    def _lift_scalar(self, other) -> "BiSeries":
        if isinstance(other, QSeries):
            s = other
        else:
            s = QSeries.constant(other, self.inner_trunc, self.ring, self.denom)
        return BiSeries([s], 0, self.trunc, self.var, self.ring, s.trunc, s.denom)

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            other = self._lift_scalar(other)
        self._check(other)
        trunc = min(self.trunc, other.trunc)
        start = min(self.start, other.start, trunc)
        coeffs = [self.coeff(t) + other.coeff(t) for t in range(start, trunc)]
        if not coeffs:
            return BiSeries([], start, trunc, self.var, self.ring,
                            min(self.inner_trunc, other.inner_trunc), self.denom)
        return BiSeries(coeffs, start, trunc, self.var, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries([-c for c in self.coeffs], self.start, self.trunc, self.var, self.ring,
                        self.inner_trunc, self.denom)

    def __sub__(self, other):
        if not isinstance(other, BiSeries):
            other = self._lift_scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BiSeries":
        """Multiply by a scalar or by a QSeries (constant in the outer variable)."""
        if isinstance(c, QSeries):
            return BiSeries([x * c for x in self.coeffs], self.start, self.trunc, self.var,
                            self.ring)
        return BiSeries([x.scale(c) for x in self.coeffs], self.start, self.trunc, self.var,
                        self.ring, self.inner_trunc, self.denom)

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return self.scale(other)
        self._check(other)
        start = self.start + other.start
        trunc = min(self.trunc + other.start, other.trunc + self.start)
        n = trunc - start
        a_nz = [(i, c) for i, c in enumerate(self.coeffs) if not c.is_zero()]
        b_nz = [(j, c) for j, c in enumerate(other.coeffs) if not c.is_zero()]
        out: list[QSeries | None] = [None] * max(n, 0)
        for i, x in a_nz:
            if i >= n:
                break
            for j, y in b_nz:
                if i + j >= n:
                    break
                p = x * y
                out[i + j] = p if out[i + j] is None else out[i + j] + p
        L = lcm(self.denom, other.denom)
        inner = min(self.inner_trunc * (L // self.denom), other.inner_trunc * (L // other.denom))
        zero = QSeries.zero(inner, self.ring, L)
        return BiSeries([zero if c is None else c for c in out], start, trunc, self.var,
                        self.ring, denom=L)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiSeries":
        if n < 0:
            return self.invert() ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return BiSeries.constant(QSeries.one(self.inner_trunc, self.ring, self.denom),
                                     self.trunc - self.start, self.var)
        return result

    def invert(self) -> "BiSeries":
        """Inverse; the lowest nonzero outer coefficient must be an invertible QSeries."""
        v = self.outer_valuation()
        if v is None:
            raise NotAUnitError("BiSeries is zero to its truncation")
        c = self.coeffs[v - self.start:]
        b0 = c[0].invert()
        n = len(c)
        out = [b0]
        for k in range(1, n):
            acc = None
            for i in range(1, k + 1):
                if not c[i].is_zero():
                    p = c[i] * out[k - i]
                    acc = p if acc is None else acc + p
            out.append(-(acc * b0) if acc is not None else b0 * 0)
        return BiSeries(out, -v, self.trunc - 2 * v, self.var, self.ring)

    def __truediv__(self, other):
        if isinstance(other, BiSeries):
            return self * other.invert()
        if isinstance(other, QSeries):
            return self * other.invert()
        return self.scale(self.ring.invert(self.ring.coerce(other)))

    def exp(self) -> "BiSeries":
        """Formal exponential in both variables.

        Outer terms below var^0 must vanish; the var^0 coefficient must have
        zero constant term (its exponential is taken as a QSeries).
        """
        v = self.outer_valuation()
        if v is not None and v < 0:
            raise PreconditionError("bi_exp: negative outer exponents")
        a0 = self.coeff(0) if self.trunc > 0 else self._zero_inner()
        e0 = a0.exp()
        n = self.trunc
        a = [self.coeff(t) for t in range(n)]
        f = [QSeries.one(self.inner_trunc, self.ring, self.denom)]
        for m in range(1, n):
            acc = None
            for k in range(1, m + 1):
                if not a[k].is_zero():
                    p = a[k] * f[m - k]
                    p = p.scale(k) if k != 1 else p
                    acc = p if acc is None else acc + p
            f.append(acc.scale(Fraction(1, m)) if acc is not None else self._zero_inner())
        res = BiSeries(f, 0, n, self.var, self.ring, self.inner_trunc, self.denom)
        return res * e0 if not a0.is_zero() else res

    def log(self) -> "BiSeries":
        """Formal logarithm; the var^0 coefficient must have constant term one."""
        v = self.outer_valuation()
        if v is None or v < 0:
            raise PreconditionError("bi_log: series must start at var^0")
        f0 = self.coeff(0)
        l0 = f0.log()
        g = self.scale(f0.invert())
        n = g.trunc
        h = [g.coeff(t) for t in range(n)]
        out = [QSeries.zero(g.inner_trunc, self.ring, self.denom)]
        for m in range(1, n):
            acc = h[m].scale(m)
            for k in range(1, m):
                if not h[m - k].is_zero():
                    acc = acc - (out[k] * h[m - k]).scale(k)
            out.append(acc.scale(Fraction(1, m)))
        out[0] = l0.truncate(g.inner_trunc)
        return BiSeries(out, 0, n, self.var, self.ring)

    def substitute_outer(self, c, m: int, var: str | None = None) -> "BiSeries":
        """Substitute var -> c * new_var^m (m >= 1)."""
        if m < 1:
            raise PreconditionError("substitution exponent must be >= 1")
        c = self.ring.coerce(c)
        start = self.start * m
        trunc = self.trunc * m
        out = [self._zero_inner()] * (trunc - start)
        ct = c ** self.start if self.start >= 0 else self.ring.invert(c) ** (-self.start)
        for i, s in enumerate(self.coeffs):
            out[i * m] = s.scale(ct)
            ct = ct * c
        return BiSeries(out, start, trunc, var or self.var, self.ring, self.inner_trunc,
                        self.denom)

    # -- comparison --
    def first_discrepancy(self, other: "BiSeries", upto: int | None = None,
                          inner_upto: int | None = None):
        """First (outer exponent, inner exponent, a, b) disagreement on the common truncation."""
        self._check(other)
        trunc = min(self.trunc, other.trunc)
        if upto is not None:
            trunc = min(trunc, upto)
        for t in range(min(self.start, other.start), trunc):
            d = self.coeff(t).first_discrepancy(other.coeff(t), inner_upto)
            if d is not None:
                return (t,) + d
        return None

    def agrees_with(self, other: "BiSeries", upto: int | None = None,
                    inner_upto: int | None = None) -> bool:
        return self.first_discrepancy(other, upto, inner_upto) is None

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.ring == other.ring and self.trunc == other.trunc
                and self.inner_trunc * other.denom == other.inner_trunc * self.denom
                and self.first_discrepancy(other) is None)

    __hash__ = None

    def __repr__(self):
        rows = [f"  {self.var}^{self.start + i}: {c!r}" for i, c in enumerate(self.coeffs)
                if not c.is_zero()]
        return f"BiSeries[{self.var}, trunc={self.trunc}](\n" + "\n".join(rows) + "\n)"

    def to_json(self) -> dict:
        return {"var": self.var, "start": self.start, "trunc": self.trunc,
                "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "BiSeries":
        coeffs = [QSeries.from_json(c) for c in obj["coeffs"]]
        ring = coeffs[0].ring if coeffs else QQ
        return cls(coeffs, int(obj["start"]), int(obj["trunc"]), obj["var"], ring)


def taylor_series(coeff: Callable[[int], Fraction], trunc: int, inner_trunc: int,
                  var: str = "X", ring: CoefficientRing = QQ, denom: int = 1) -> BiSeries:
    """Outer series sum_t coeff(t) var^t with constant inner coefficients."""
    return BiSeries.from_scalars({t: coeff(t) for t in range(trunc)}, trunc, inner_trunc, var,
                                 ring, denom)


def bi_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    return a * b


def bi_exp(a: BiSeries) -> BiSeries:
    return a.exp()


def bi_log(a: BiSeries) -> BiSeries:
    return a.log()


def bi_substitute_outer(s: BiSeries, c, m: int, var: str | None = None) -> BiSeries:
    return s.substitute_outer(c, m, var)


def product(factors: Iterable, one):
    acc = one
    for f in factors:
        acc = acc * f
    return acc
