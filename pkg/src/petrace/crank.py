"""Andrews-Garvan crank statistics and even crank moments.

M(m, n) is defined by the generating product
prod_n (1 - q^n) / ((1 - z q^n)(1 - z^-1 q^n)); the combinatorial crank
count agrees with it for every n except n = 1.  The moments C_{2k}(q) are
computed four ways: from the table, from the trace formula, from the
Lambert-series formula and from the bivariate generating function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable

import numpy as np

from .checks import CheckResult
from .eisenstein import lambert_partition, trace
from .errors import PreconditionError
from .partitions import (PHI_CRANK, Partition, crank, enumerate_partitions, iter_parts,
                         partition_count)
from .series import BiSeries, QSeries, eta_pochhammer, taylor_series

#: residue offsets in the Ramanujan congruences p(ell*n + r) = 0 mod ell
CONGRUENCES = {5: 4, 7: 5, 11: 6}


@dataclass(frozen=True)
class CrankTable:
    """M(m, n) for 0 <= n < N; ``rows[n][m + n]`` holds M(m, n) for |m| <= n."""

    N: int
    rows: tuple[tuple[int, ...], ...]
    source: str = field(default="genfun", compare=False)

    def M(self, m: int, n: int) -> int:
        if not 0 <= n < self.N:
            raise PreconditionError(f"n={n} outside table (N={self.N})")
        if abs(m) > n:
            return 0
        return self.rows[n][m + n]

    def row(self, n: int) -> dict[int, int]:
        return {m: self.M(m, n) for m in range(-n, n + 1) if self.M(m, n)}

    def total(self, n: int) -> int:
        return sum(self.rows[n])

    def moment(self, power: int, n: int) -> int:
        """sum_m m^power M(m, n), using M(m, n) = M(-m, n) for even powers."""
        if power % 2:
            return sum(m ** power * self.M(m, n) for m in range(-n, n + 1))
        if power == 0:
            return self.total(n)
        return 2 * sum(m ** power * self.M(m, n) for m in range(1, n + 1))

    def is_symmetric(self) -> bool:
        return all(r == r[::-1] for r in self.rows)


def crank_table_genfun(N: int) -> CrankTable:
    """Expand the crank generating product as a Laurent polynomial in z per power of q, to q^N."""
    if N < 1:
        raise PreconditionError("N must be >= 1")
    W = 2 * N + 1  # column c holds z^(c - N)
    f = np.zeros((N + 1, W), dtype=object)
    f[:] = 0
    f[0, N] = 1
    for n in range(1, N + 1):
        for j in range(N, n - 1, -1):        # * (1 - q^n)
            f[j] -= f[j - n]
        for j in range(n, N + 1):            # / (1 - z q^n)
            f[j, 1:] += f[j - n, :-1]
        for j in range(n, N + 1):            # / (1 - z^-1 q^n)
            f[j, :-1] += f[j - n, 1:]
    rows = tuple(tuple(int(x) for x in f[n, N - n:N + n + 1]) for n in range(N))
    return CrankTable(N, rows, "genfun")


def crank_distribution(n: int) -> dict[int, int]:
    """Number of partitions of n with each crank value, counted from the definition.

    Partitions are grouped by omega (number of ones) and mu (parts exceeding
    omega): the parts in [2, omega] and the mu parts above omega are counted
    independently, so no partition list is ever built.
    """
    if n < 0:
        raise PreconditionError("n must be non-negative")
    if n == 0:
        return {0: 1}
    dtype = np.int64 if n <= 350 else object
    # P[s, mu]: partitions of s into exactly mu parts
    P = np.zeros((n + 1, n + 1), dtype=dtype)
    P[0, 0] = 1
    for s in range(1, n + 1):
        for mu in range(1, s + 1):
            P[s, mu] = P[s - 1, mu - 1] + P[s - mu, mu]
    # A[r]: partitions of r into parts from [2, w], grown with w
    A = np.zeros(n + 1, dtype=dtype)
    A[0] = 1
    counts: dict[int, int] = {}

    def bump(c, v):
        v = int(v)
        if v:
            counts[c] = counts.get(c, 0) + v

    for w in range(1, n + 1):
        if w >= 2:
            for e in range(w, n + 1):
                A[e] += A[e - w]
            # no ones, largest part exactly w
            bump(w, A[n - w])
        R = n - w  # w ones; the rest split into parts <= w and mu parts > w
        mu = 0
        while mu * (w + 1) <= R:
            if mu == 0:
                bump(-w, A[R])
            else:
                s = np.arange(mu * (w + 1), R + 1)
                bump(mu - w, np.dot(A[R - s], P[s - mu * w, mu]))
            mu += 1
    return dict(sorted(counts.items()))


def crank_table_combinatorial(N: int, method: str = "count") -> CrankTable:
    """M(m, n) for n < N from the combinatorial crank.

    method "count" uses crank_distribution; "enumerate" lists every partition.
    """
    if N < 1:
        raise PreconditionError("N must be >= 1")
    rows = []
    for n in range(N):
        if method == "enumerate":
            dist: dict[int, int] = {}
            if n == 0:
                dist = {0: 1}
            for parts in (iter_parts(n) if n else ()):
                c = crank(Partition.from_parts(parts))
                dist[c] = dist.get(c, 0) + 1
        elif method == "count":
            dist = crank_distribution(n)
        else:
            raise PreconditionError(f"unknown method {method!r}")
        rows.append(tuple(dist.get(m, 0) for m in range(-n, n + 1)))
    return CrankTable(N, tuple(rows), "combinatorial")


def crank_residue_counts_genfun(modulus: int, N: int) -> list[list[int]]:
    """For n < N, counts of M(m, n) summed over m in each residue class mod ``modulus``.

    The generating product is expanded with z reduced modulo z^modulus - 1.
    """
    p = modulus
    f = np.zeros((N, p), dtype=object)
    f[:] = 0
    f[0, 0] = 1
    for n in range(1, N):
        for j in range(N - 1, n - 1, -1):
            f[j] -= f[j - n]
        for j in range(n, N):
            f[j] += np.roll(f[j - n], 1)
        for j in range(n, N):
            f[j] += np.roll(f[j - n], -1)
    return [[int(x) for x in f[n]] for n in range(N)]


def congruence_sizes(modulus: int, n_max: int, size_cap: int | None = None) -> list[int]:
    r = CONGRUENCES[modulus]
    sizes = [modulus * n + r for n in range(n_max + 1)]
    if size_cap is not None:
        sizes = [s for s in sizes if s <= size_cap]
    return sizes


def crank_congruence_check(modulus: int, n_max: int = 40, size_cap: int | None = None,
                           method: str = "count") -> CheckResult:
    """#{lambda |- ell n + r : c(lambda) = a mod ell} == p(ell n + r) / ell for every a.

    method: "count" (combinatorial counting), "genfun" (generating product mod
    z^ell - 1) or "enumerate" (explicit partition lists; keep sizes small).
    """
    if modulus not in CONGRUENCES:
        raise PreconditionError(f"no crank congruence for modulus {modulus}")
    sizes = congruence_sizes(modulus, n_max, size_cap)
    genfun_rows = None
    if method == "genfun" and sizes:
        genfun_rows = crank_residue_counts_genfun(modulus, max(sizes) + 1)
    for size in sizes:
        pn = partition_count(size)
        if pn % modulus:
            return CheckResult(False, {"size": size, "p(n)": pn, "reason": "p(n) not divisible"})
        if method == "count":
            classes = [0] * modulus
            for c, v in crank_distribution(size).items():
                classes[c % modulus] += v
        elif method == "genfun":
            classes = genfun_rows[size]
        elif method == "enumerate":
            classes = [0] * modulus
            for parts in iter_parts(size):
                classes[crank(Partition.from_parts(parts)) % modulus] += 1
        else:
            raise PreconditionError(f"unknown method {method!r}")
        for a, v in enumerate(classes):
            if v != pn // modulus:
                return CheckResult(False, {"size": size, "residue": a, "count": v,
                                           "expected": pn // modulus})
    return CheckResult(True, None, {"sizes": sizes, "method": method})


# ----------------------------------------------------------------------
# moments

def _inverse_pochhammer(N: int) -> QSeries:
    return eta_pochhammer(N).invert()


def moment_definition(power: int, N: int, table: CrankTable | None = None) -> QSeries:
    """C_power(q) = sum_n (sum_m m^power M(m, n)) q^n from the generating-function table."""
    if power < 0 or power % 2:
        raise PreconditionError("power must be a non-negative even integer")
    table = table if table is not None and table.N >= N else crank_table_genfun(N)
    return QSeries.from_dict({n: table.moment(power, n) for n in range(N)}, N)


def falling_factorial(x: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= x - i
    return out


def corollary_coefficients(k: int) -> dict[int, Fraction]:
    """{j: coefficient of Tr_j(phi_c)} in (q;q)_inf * C_{2k}."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    return {k - n: Fraction(falling_factorial(2 * k, 2 * k - 2 * n), 4 ** n * (2 * n + 1))
            for n in range(k + 1)}


def moment_corollary(power: int, N: int) -> QSeries:
    """C_{2k} = (1/(q;q)_inf) sum_n (2k)_{2k-2n} / (4^n (2n+1)) Tr_{k-n}(phi_c)."""
    if power < 2 or power % 2:
        raise PreconditionError("power must be a positive even integer")
    k = power // 2
    total = None
    for j, c in corollary_coefficients(k).items():
        term = trace(j, PHI_CRANK, N).scale(c)
        total = term if total is None else total + term
    return total * _inverse_pochhammer(N)


def moment_lambert(power: int, N: int) -> QSeries:
    """C_{2k} = ((2k)!/(q;q)_inf) sum_{lambda |- k} prod_j (1/m_j!) (2/(2j)!)^{m_j} S_lambda."""
    if power < 0 or power % 2:
        raise PreconditionError("power must be a non-negative even integer")
    k = power // 2
    if k == 0:
        return _inverse_pochhammer(N)
    total = None
    for lam in enumerate_partitions(k):
        c = Fraction(1)
        for j, m in lam.items():
            c *= Fraction(2, factorial(2 * j)) ** m / factorial(m)
        term = lambert_partition(lam, N).scale(c)
        total = term if total is None else total + term
    return total.scale(factorial(2 * k)) * _inverse_pochhammer(N)


MOMENT_METHODS = {
    "definition": moment_definition,
    "corollary": moment_corollary,
    "lambert": moment_lambert,
}


def sin_taylor(t: int, scale: Fraction = Fraction(1)) -> Fraction:
    """Coefficient of X^t in sin(scale * X)."""
    if t % 2 == 0:
        return Fraction(0)
    return Fraction((-1) ** ((t - 1) // 2), factorial(t)) * scale ** t


def theorem2_sides(K: int, T: int, N: int) -> tuple[BiSeries, BiSeries]:
    """Both sides of the even crank moment generating function as series in (X, q).

    Left: sum_{k<=K} (-1)^k C_{2k} X^{2k}/(2k)! with C_{2k} from the table.
    Right: 2 sin(X/2)/(q;q)_inf * sum_{k<=K} (-1)^k Tr_k(phi_c) X^{2k-1}.
    Both are truncated to X^T with T <= 2K + 1.
    """
    if K < 1 or T > 2 * K + 1:
        raise PreconditionError("need K >= 1 and T <= 2K + 1")
    table = crank_table_genfun(N)
    lhs = BiSeries([moment_definition(t, N, table).scale(Fraction((-1) ** (t // 2), factorial(t)))
                    if t % 2 == 0 else QSeries.zero(N) for t in range(T)], 0, T, "X")
    traces = BiSeries([trace(t // 2 + 1, PHI_CRANK, N).scale((-1) ** (t // 2 + 1))
                       if t % 2 == 1 else QSeries.zero(N) for t in range(-1, 2 * K)],
                      -1, 2 * K + 1, "X")
    sin_half = taylor_series(lambda t: 2 * sin_taylor(t, Fraction(1, 2)), T + 1, N, "X")
    rhs = (sin_half * traces).scale(_inverse_pochhammer(N))
    return lhs, rhs.truncate(T)


def theorem2_check(K: int, T: int, N: int) -> CheckResult:
    lhs, rhs = theorem2_sides(K, T, N)
    return CheckResult.compare(lhs, rhs, {"K": K, "T": T, "N": N})


def lemma41_sides(T: int, N: int) -> tuple[BiSeries, BiSeries]:
    """exp(-2 sum_k S_{2k-1}/(2k)! (-4X^2)^k) and prod_j [1 + 4 sin^2(X) q^j/(1-q^j)^2] to (X^T, q^N)."""
    from .eisenstein import lambert_S

    Ty = (T + 1) // 2 + 1
    y_series = BiSeries([QSeries.zero(N)] + [lambert_S(2 * k - 1, N).scale(Fraction(-2, factorial(2 * k)))
                                              for k in range(1, Ty)], 0, Ty, "y")
    lhs = y_series.exp().substitute_outer(-4, 2, var="X").truncate(T)

    sin = taylor_series(sin_taylor, T, N, "X")
    sin2 = (sin * sin).scale(4)
    rhs = BiSeries.constant(QSeries.one(N), T, "X")
    for j in range(1, N):
        weight = QSeries.from_dict({j * m: m for m in range(1, N // j + 1)}, N)
        rhs = rhs * (sin2.scale(weight) + 1)
    return lhs, rhs.truncate(T)


def lemma41_check(T: int, N: int) -> CheckResult:
    if T < 2 or N < 2:
        raise PreconditionError("truncations must be >= 2")
    lhs, rhs = lemma41_sides(T, N)
    return CheckResult.compare(lhs, rhs, {"T": T, "N": N})


def lemma42_sides(T: int) -> tuple[QSeries, QSeries]:
    """sin(X)/X and exp(sum_k (-4)^k B_{2k} / ((2k)(2k)!) X^{2k}) as series in X, to X^T."""
    from .eisenstein import bernoulli

    sinc = QSeries.from_dict({t: sin_taylor(t + 1) for t in range(T)}, T)
    exponent = QSeries.from_dict({2 * k: Fraction((-4) ** k) * bernoulli(2 * k)
                                  / (2 * k * factorial(2 * k)) for k in range(1, T // 2 + 1)}, T)
    return sinc, exponent.exp()


def lemma42_check(T: int) -> CheckResult:
    if T < 2:
        raise PreconditionError("truncation must be >= 2")
    a, b = lemma42_sides(T)
    return CheckResult.compare(a, b, {"T": T})


def moments_agree(K: int, N: int, methods: Iterable[str] = ("definition", "corollary", "lambert")
                  ) -> CheckResult:
    """All moment routes give identical series for C_2 .. C_{2K}."""
    methods = list(methods)
    for k in range(1, K + 1):
        ref = MOMENT_METHODS[methods[0]](2 * k, N)
        for name in methods[1:]:
            other = MOMENT_METHODS[name](2 * k, N)
            d = ref.first_discrepancy(other)
            if d is not None or other.trunc != ref.trunc:
                return CheckResult(False, {"k": k, "methods": [methods[0], name],
                                           "at": d})
    return CheckResult(True, None, {"K": K, "N": N})
