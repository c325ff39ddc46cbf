"""Exact expansions of the theta function, torsional Eisenstein series and divisor traces.

Everything is a series in Z = 2 pi i z (outer) and q^(1/L) (inner), so
all coefficients are rational or cyclotomic.  With u = exp(2 pi i z) and
D = u d/du = d/dZ, the torsional Eisenstein series at x = alpha tau + beta is

    G_{k,x} = -D^k log Theta(z) evaluated at z = x,   zeta = exp(2 pi i beta).

Conventions used below:

* G_{1,x} carries the additive 1/2 coming from u^(1/2) - u^(-1/2); moving
  x by tau adds 1 to G_{1,x} and leaves higher k unchanged.
* Theta(z - x)/Theta(-x) = exp(-sum_j G_{j,-x} Z^j / j!), so a divisor
  point x enters through the series at the reflected point -x.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm

from .checks import CheckResult
from .cyclotomic import cyclo_ring
from .eisenstein import G, partition_trace, trace
from .errors import DivisorError, PreconditionError
from .partitions import PHI_JACOBI, PHI_LAMBDA, Partition, enumerate_partitions
from .rings import QQ, CoefficientRing, common_ring
from .series import BiSeries, QSeries


def _frac_mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, order=True)
class TorsionPoint:
    """x = alpha tau + beta with alpha, beta rational, reduced to [0, 1)."""

    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _frac_mod1(self.alpha))
        object.__setattr__(self, "beta", _frac_mod1(self.beta))

    @property
    def is_origin(self) -> bool:
        return self.alpha == 0 and self.beta == 0

    @property
    def conductor(self) -> int:
        """Order of zeta_beta = exp(2 pi i beta)."""
        return self.beta.denominator

    @property
    def grid(self) -> int:
        """L with q-exponents on the grid (1/L) Z."""
        return self.alpha.denominator

    def ring(self) -> CoefficientRing:
        return cyclo_ring(self.conductor)

    def __neg__(self) -> "TorsionPoint":
        return TorsionPoint(-self.alpha, -self.beta)

    def __str__(self):
        return f"({self.alpha},{self.beta})"


ORIGIN = TorsionPoint()


def _zeta(ring: CoefficientRing, beta: Fraction, power: int = 1):
    """exp(2 pi i beta * power) in ``ring``."""
    return ring.zeta(beta.denominator, beta.numerator * power)


# ----------------------------------------------------------------------
# constant terms

def eulerian_polynomial(r: int) -> list[int]:
    """Coefficients c_j of D^r [v] = sum_j c_j v^j, where v = u/(1-u) and D v^j = j (v^j + v^(j+1))."""
    p = [0, 1]
    for _ in range(r):
        out = [0] * (len(p) + 1)
        for j, c in enumerate(p):
            if c:
                out[j] += j * c
                out[j + 1] += j * c
        p = out
    return p


def eulerian_constant(k: int, zeta, ring: CoefficientRing):
    """D^(k-1) [u/(1-u)] at u = zeta (zeta != 1), plus 1/2 when k = 1."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    one = ring.one
    v = ring.coerce(zeta) * ring.invert(one - ring.coerce(zeta))
    total = ring.zero
    vp = one
    for c in eulerian_polynomial(k - 1):
        if c:
            total = total + vp * c
        vp = vp * v
    if k == 1:
        total = total + ring.coerce(Fraction(1, 2))
    return total


# ----------------------------------------------------------------------
# torsional Eisenstein series

@lru_cache(maxsize=512)
def _torsional_reduced(k: int, alpha: Fraction, beta: Fraction, N: int,
                       ring: CoefficientRing) -> QSeries:
    L = alpha.denominator
    trunc = N * L
    z = [_zeta(ring, beta, j) for j in range(beta.denominator)]
    m_mod = beta.denominator
    sign = -1 if k % 2 else 1
    c = [ring.zero] * trunc
    if alpha == 0:
        c[0] = eulerian_constant(k, z[1 % m_mod], ring)
        for m in range(1, trunc):
            w = z[m % m_mod] + z[-m % m_mod] * sign
            if not w:
                continue
            w = w * m ** (k - 1)
            for e in range(m, trunc, m):
                c[e] = c[e] + w
    else:
        a = alpha.numerator
        if k == 1:
            c[0] = ring.coerce(Fraction(1, 2))
        for m in range(1, trunc):
            mk = m ** (k - 1)
            plus = z[m % m_mod] * mk
            minus = z[-m % m_mod] * (mk * sign)
            n = 0
            while (n * L + a) * m < trunc:          # zeta^m q^((n + alpha) m)
                e = (n * L + a) * m
                c[e] = c[e] + plus
                n += 1
            n = 1
            while (n * L - a) * m < trunc:          # zeta^-m q^((n - alpha) m)
                e = (n * L - a) * m
                c[e] = c[e] + minus
                n += 1
    return QSeries(ring, c, 0, trunc, L)


def torsional_G(k: int, x: TorsionPoint, N: int, ring: CoefficientRing | None = None,
                alpha_lift: int = 0) -> QSeries:
    """G_{k,x} to q^N over Q(zeta_beta), on the q^(1/L) grid with L = denom(alpha).

    ``alpha_lift`` evaluates at x + alpha_lift * tau instead, which adds
    alpha_lift to the k = 1 series.
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if N < 1:
        raise PreconditionError("N must be >= 1")
    if x.is_origin:
        raise PreconditionError("G_{k,x} needs x != 0; use G(2k) at the origin")
    own = x.ring()
    ring = own if ring is None else ring
    if ring != own and common_ring(ring, own) != ring:
        raise PreconditionError(f"{ring} does not contain zeta of conductor {x.conductor}")
    s = _torsional_reduced(k, x.alpha, x.beta, N, ring)
    if k == 1 and alpha_lift:
        s = s + alpha_lift
    return s


def torsional_G_at(k: int, alpha, beta, N: int, ring: CoefficientRing | None = None) -> QSeries:
    """G_{k, alpha tau + beta} for arbitrary rational alpha, beta (not a lattice point)."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    x = TorsionPoint(alpha, beta)
    return torsional_G(k, x, N, ring, alpha_lift=int(alpha - x.alpha))


# ----------------------------------------------------------------------
# dense (Z, q) products

class _Dense:
    """Mutable T x M table of ring elements: coefficient of Z^t q^(e/L)."""

    def __init__(self, ring, T: int, M: int, L: int):
        self.ring, self.T, self.M, self.L = ring, T, M, L
        self.a = [[ring.zero] * M for _ in range(T)]

    @classmethod
    def from_scalars(cls, ring, T, M, L, coeffs):
        d = cls(ring, T, M, L)
        for t in range(T):
            d.a[t][0] = ring.coerce(coeffs(t))
        return d

    def mul_one_minus(self, c, e0: int, s: Fraction):
        """Multiply by (1 - c q^(e0/L) exp(s Z)), e0 >= 0."""
        ring = self.ring
        c = ring.coerce(c)
        ex = [ring.coerce(s ** i / factorial(i)) * c for i in range(self.T)]
        old = [row[:] for row in self.a]
        for t in range(self.T):
            row = self.a[t]
            for i in range(t + 1):
                w = ex[i]
                if not w:
                    continue
                src = old[t - i]
                for e in range(e0, self.M):
                    v = src[e - e0]
                    if v:
                        row[e] = row[e] - v * w

    def div_one_minus(self, c, e0: int):
        """Divide by (1 - c q^(e0/L)); for e0 = 0 the constant 1 - c must be a unit."""
        ring = self.ring
        c = ring.coerce(c)
        if e0 == 0:
            inv = ring.invert(ring.one - c)
            self.a = [[v * inv for v in row] for row in self.a]
            return
        for row in self.a:
            for e in range(e0, self.M):
                prev = row[e - e0]
                if prev:
                    row[e] = row[e] + prev * c

    def mul_exp(self, s: Fraction):
        """Multiply by exp(s Z)."""
        if s == 0:
            return
        ex = [s ** i / factorial(i) for i in range(self.T)]
        old = [row[:] for row in self.a]
        for t in range(self.T):
            row = [self.ring.zero] * self.M
            for i in range(t + 1):
                src = old[t - i]
                w = ex[i]
                for e in range(self.M):
                    if src[e]:
                        row[e] = row[e] + src[e] * w
            self.a[t] = row

    def to_bi(self, var: str = "Z") -> BiSeries:
        rows = [QSeries(self.ring, r, 0, self.M, self.L) for r in self.a]
        return BiSeries(rows, 0, self.T, var, self.ring, self.M, self.L)


def _sinh_half(t: int) -> Fraction:
    # 2 sinh(Z/2) = sum_{t odd} Z^t / (2^(t-1) t!)
    return Fraction(1, 2 ** (t - 1) * factorial(t)) if t % 2 else Fraction(0)


def theta_product(T: int, N: int) -> BiSeries:
    """Theta(z) = (u^(1/2) - u^(-1/2)) prod_n (1 - u q^n)(1 - u^-1 q^n)/(1 - q^n)^2 to (Z^T, q^N)."""
    if T < 1 or N < 1:
        raise PreconditionError("truncations must be >= 1")
    d = _Dense.from_scalars(QQ, T, N, 1, _sinh_half)
    for n in range(1, N):
        d.mul_one_minus(1, n, Fraction(1))
        d.mul_one_minus(1, n, Fraction(-1))
        d.div_one_minus(1, n)
        d.div_one_minus(1, n)
    return d.to_bi()


def sigma_exponent(T: int, N: int) -> BiSeries:
    """exp(-sum_{k>=1} G_{2k}/(2k)! Z^(2k)) to (Z^T, q^N)."""
    rows = [QSeries.zero(N)] * T
    for t in range(2, T, 2):
        rows[t] = G(t, N).scale(Fraction(-1, factorial(t)))
    return BiSeries(rows, 0, T, "Z").exp()


def theta_exponential(T: int, N: int) -> BiSeries:
    """Theta(z) = Z exp(-sum_k G_{2k}/(2k)! Z^(2k)) to (Z^T, q^N)."""
    if T < 1 or N < 1:
        raise PreconditionError("truncations must be >= 1")
    z = BiSeries.from_scalars({1: 1}, T, N, "Z")
    return (z * sigma_exponent(T - 1, N)).truncate(T)


def sigma_expansion(T: int, N: int) -> BiSeries:
    """Holomorphic sigma function in the variable Z: Z exp(-sum_k G_{2k}/(2k)! Z^(2k)).

    With G_2 in place of the nonholomorphic G_2^*, this is the same series as
    theta_exponential; it is kept as its own entry point for the lattice side.
    """
    return theta_exponential(T, N)


def isobaric_polynomial(k: int, weight=PHI_LAMBDA) -> dict[Partition, Fraction]:
    """F_k as {lambda: coefficient of G_lambda}; the default weight gives the lattice traces."""
    return {lam: weight(lam) for lam in enumerate_partitions(k)}


def theorem1_trace_check(K: int, N: int) -> CheckResult:
    """Z^(2k) coefficient of exp(-sum G_{2j}/(2j)! Z^(2j)) equals Tr_k(phi_Lambda) for k <= K."""
    if K < 0 or K > 8:
        raise PreconditionError("K must lie in [0, 8]")
    e = sigma_exponent(2 * K + 1, N)
    for k in range(K + 1):
        d = e.coeff(2 * k).first_discrepancy(trace(k, PHI_LAMBDA, N))
        if d is not None:
            return CheckResult(False, {"k": k, "at": d})
    odd = [t for t in range(1, 2 * K + 1, 2) if not e.coeff(t).is_zero()]
    if odd:
        return CheckResult(False, {"odd_Z_power": odd[0]})
    return CheckResult(True, None, {"K": K, "N": N})


def theta_forms_check(T: int, N: int) -> CheckResult:
    """Product and exponential forms of Theta agree, and every even Z power vanishes."""
    a, b = theta_product(T, N), theta_exponential(T, N)
    res = CheckResult.compare(a, b, {"T": T, "N": N})
    if not res:
        return res
    even = [t for t in range(0, T, 2) if not a.coeff(t).is_zero()]
    if even:
        return CheckResult(False, {"even_Z_power": even[0]}, {"T": T, "N": N})
    return res


# ----------------------------------------------------------------------
# shifted theta quotients

def theta_shift_ratio(alpha, beta, T: int, N: int, ring: CoefficientRing | None = None
                      ) -> BiSeries:
    """Theta(z - x)/Theta(-x) for x = alpha tau + beta, expanded from the triple product.

    alpha may carry an integer lift: moving x by c tau multiplies the ratio by exp(c Z).
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    x = TorsionPoint(alpha, beta)
    if x.is_origin:
        raise PreconditionError("the quotient needs x away from the lattice")
    lift = int(alpha - x.alpha)
    ring = x.ring() if ring is None else ring
    L = x.grid
    M = N * L
    zeta = _zeta(ring, x.beta)
    zinv = _zeta(ring, x.beta, -1)
    d = _Dense.from_scalars(ring, T, M, L, lambda t: Fraction(int(t == 0)))
    if x.alpha == 0:
        # e^{-Z/2} (1 - zeta^-1 e^Z)/(1 - zeta^-1) prod_n [(1 - zeta^-1 q^n e^Z)(1 - zeta q^n e^-Z)] / [..]_{Z=0}
        d.mul_exp(Fraction(-1, 2) + lift)
        d.mul_one_minus(zinv, 0, Fraction(1))
        d.div_one_minus(zinv, 0)
        for n in range(1, N):
            d.mul_one_minus(zinv, n, Fraction(1))
            d.div_one_minus(zinv, n)
            d.mul_one_minus(zeta, n, Fraction(-1))
            d.div_one_minus(zeta, n)
    else:
        # e^{Z/2} prod_{n>=0} (1 - zeta q^{n+a} e^-Z)/(..) prod_{n>=1} (1 - zeta^-1 q^{n-a} e^Z)/(..)
        a = x.alpha.numerator
        d.mul_exp(Fraction(1, 2) + lift)
        n = 0
        while n * L + a < M:
            d.mul_one_minus(zeta, n * L + a, Fraction(-1))
            d.div_one_minus(zeta, n * L + a)
            n += 1
        n = 1
        while n * L - a < M:
            d.mul_one_minus(zinv, n * L - a, Fraction(1))
            d.div_one_minus(zinv, n * L - a)
            n += 1
    return d.to_bi()


def theta_shift_exponential(alpha, beta, T: int, N: int, ring: CoefficientRing | None = None
                            ) -> BiSeries:
    """exp(-sum_{j>=1} G_{j,-x} Z^j / j!) for x = alpha tau + beta."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    ring = TorsionPoint(alpha, beta).ring() if ring is None else ring
    rows = [None] * T
    for j in range(1, T):
        rows[j] = torsional_G_at(j, -alpha, -beta, N, ring).scale(Fraction(-1, factorial(j)))
    L = rows[1].denom if T > 1 else TorsionPoint(alpha, beta).grid
    rows[0] = QSeries.zero(N * L, ring, L)
    return BiSeries(rows, 0, T, "Z", ring).exp()


def theta_shift_check(x: TorsionPoint, T: int, N: int, alpha_lift: int = 0) -> CheckResult:
    """Direct expansion of Theta(z - x)/Theta(-x) equals exp(-sum_j G_{j,-x} Z^j/j!) to (Z^T, q^N)."""
    if x.is_origin:
        raise PreconditionError("x must be nonzero")
    alpha = x.alpha + alpha_lift
    a = theta_shift_ratio(alpha, x.beta, T, N)
    b = theta_shift_exponential(alpha, x.beta, T, N)
    return CheckResult.compare(a, b, {"x": str(x), "T": T, "N": N, "alpha_lift": alpha_lift})


# ----------------------------------------------------------------------
# divisors

@dataclass(frozen=True)
class DivisorEntry:
    point: TorsionPoint
    mult: int
    lift: tuple[int, int] = (0, 0)

    @property
    def lifted(self) -> tuple[Fraction, Fraction]:
        """(alpha, beta) of the chosen representative."""
        return self.point.alpha + self.lift[0], self.point.beta + self.lift[1]


@dataclass(frozen=True)
class Divisor:
    """Formal sum of torsion points with explicit integer lifts; entries are kept as given."""

    entries: tuple[DivisorEntry, ...]

    def __post_init__(self):
        ents = tuple(self.entries)
        if not ents:
            raise DivisorError("empty divisor")
        for e in ents:
            if e.mult == 0:
                raise DivisorError("multiplicities must be nonzero")
            if e.point.is_origin and e.lift != (0, 0):
                raise DivisorError("the origin takes no lift")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def of(cls, *items) -> "Divisor":
        """Divisor.of((mult, (alpha, beta)), (mult, (alpha, beta), (la, lb)), ...)."""
        ents = []
        for it in items:
            mult, (a, b), *rest = it
            ents.append(DivisorEntry(TorsionPoint(Fraction(a), Fraction(b)), int(mult),
                                     tuple(rest[0]) if rest else (0, 0)))
        return cls(tuple(ents))

    @property
    def degree(self) -> int:
        return sum(e.mult for e in self.entries)

    @property
    def origin_multiplicity(self) -> int:
        return sum(e.mult for e in self.entries if e.point.is_origin)

    @property
    def index(self) -> Fraction:
        """m with deg D = 2m."""
        return Fraction(self.degree, 2)

    def ring(self) -> CoefficientRing:
        return cyclo_ring(lcm(*(e.point.conductor for e in self.entries)))

    @property
    def grid(self) -> int:
        return lcm(*(e.point.grid for e in self.entries))

    def lifted_sum(self) -> tuple[Fraction, Fraction]:
        sa = sum((e.mult * e.lifted[0] for e in self.entries), Fraction(0))
        sb = sum((e.mult * e.lifted[1] for e in self.entries), Fraction(0))
        return sa, sb

    def require_balanced(self):
        sa, sb = self.lifted_sum()
        if sa or sb:
            raise DivisorError(f"lifted points sum to {sa}*tau + {sb}, not 0")

    def __str__(self):
        parts = []
        for e in self.entries:
            s = f"{e.mult}@{e.point.alpha},{e.point.beta}"
            if e.lift != (0, 0):
                s += f"+{e.lift[0]},{e.lift[1]}"
            parts.append(s)
        return ";".join(parts)


_ENTRY = re.compile(r"^\s*(-?\d+)\s*@\s*([^,+]+),([^,+]+)(?:\+\s*(-?\d+)\s*,\s*(-?\d+))?\s*$")


def parse_divisor(text: str) -> Divisor:
    """Parse ``mult@alpha,beta[+lift_a,lift_b]`` entries separated by semicolons."""
    ents = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        m = _ENTRY.match(chunk)
        if not m:
            raise DivisorError(f"cannot parse divisor entry {chunk!r}")
        try:
            a, b = Fraction(m.group(2).strip()), Fraction(m.group(3).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DivisorError(f"bad rational in {chunk!r}") from exc
        if not (0 <= a < 1 and 0 <= b < 1):
            raise DivisorError(f"point {chunk!r} must be reduced to [0,1)^2; use a lift")
        lift = (int(m.group(4)), int(m.group(5))) if m.group(4) is not None else (0, 0)
        ents.append(DivisorEntry(TorsionPoint(a, b), int(m.group(1)), lift))
    return Divisor(tuple(ents))


def divisor_G(k: int, D: Divisor, N: int) -> QSeries:
    """G_{k,D} = a_0 G_{k,0} + sum_x a_x G_{k,-x}, with G_{k,0} = G_k for even k and 0 for odd k.

    The reflected point -x (of the chosen lift) is what makes
    Theta^{a_0} prod (Theta(z - x)/Theta(-x))^{a_x} = Z^{a_0} exp(-sum G_{k,D} Z^k/k!).
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    ring, L = D.ring(), D.grid
    total = QSeries.zero(N * L, ring, L)
    for e in D.entries:
        if e.point.is_origin:
            if k % 2 == 0:
                total = total + G(k, N).change_ring(ring).scale(e.mult)
            continue
        a, b = e.lifted
        total = total + torsional_G_at(k, -a, -b, N, ring).scale(e.mult)
    return total


def divisor_trace(t: int, D: Divisor, N: int) -> QSeries:
    """Tr_t(D, phi_J) = sum_{lambda |- t} phi_J(lambda) prod_j G_{j,D}^{m_j}; 1 at t = 0."""
    if t < 0:
        raise PreconditionError("t must be non-negative")
    ring, L = D.ring(), D.grid
    cache: dict[int, QSeries] = {}

    def gd(j):
        if j not in cache:
            cache[j] = divisor_G(j, D, N)
        return cache[j]

    def factor(lam: Partition) -> QSeries:
        out = QSeries.one(N * L, ring, L)
        for j, m in lam.items():
            out = out * gd(j) ** m
        return out

    return partition_trace(t, PHI_JACOBI, factor, QSeries.one(N * L, ring, L))


def divisor_product(D: Divisor, T: int, N: int) -> BiSeries:
    """Theta^{a_0} prod_{x != 0} (Theta(z - x)/Theta(-x))^{a_x} from the triple product, to (Z^T, q^N)."""
    ring, L = D.ring(), D.grid
    a0 = D.origin_multiplicity
    slack = T + abs(a0) + 2
    out = BiSeries.constant(QSeries.one(N * L, ring, L), slack, "Z")
    if a0:
        th = theta_product(slack, N).change_ring(ring)
        out = out * th ** a0
    for e in D.entries:
        if e.point.is_origin:
            continue
        a, b = e.lifted
        r = theta_shift_ratio(a, b, slack, N, ring)
        out = out * r ** e.mult
    return out.truncate(T)


def divisor_trace_series(D: Divisor, T: int, N: int) -> BiSeries:
    """sum_t Tr_t(D, phi_J) Z^(t + a_0) to (Z^T, q^N)."""
    ring, L = D.ring(), D.grid
    a0 = D.origin_multiplicity
    rows = [divisor_trace(t, D, N) for t in range(max(T - a0, 0))]
    if not rows:
        return BiSeries([], a0, T, "Z", ring, N * L, L)
    return BiSeries(rows, a0, T, "Z", ring, N * L, L)


def theorem3_reconstruct(D: Divisor, T: int, N: int) -> CheckResult:
    """The theta quotient with divisor D equals sum_t Tr_t(D, phi_J) Z^(t + a_0) to (Z^T, q^N)."""
    D.require_balanced()
    lhs = divisor_product(D, T, N)
    rhs = divisor_trace_series(D, T, N)
    return CheckResult.compare(lhs, rhs, {"divisor": str(D), "T": T, "N": N})
