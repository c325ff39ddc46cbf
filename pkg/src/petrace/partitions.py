"""Integer partitions, their statistics, cycle index polynomials and weight functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterator, Sequence

from .errors import PreconditionError


@dataclass(frozen=True, order=True)
class Partition:
    """A partition stored by multiplicities: ``mults[j-1]`` is the number of parts equal to j."""

    mults: tuple[int, ...] = ()

    def __post_init__(self):
        m = tuple(int(x) for x in self.mults)
        if any(x < 0 for x in m):
            raise PreconditionError("multiplicities must be non-negative")
        while m and m[-1] == 0:
            m = m[:-1]
        object.__setattr__(self, "mults", m)

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        if any(p < 1 for p in parts):
            raise PreconditionError("parts must be positive integers")
        m = [0] * max(parts, default=0)
        for p in parts:
            m[p - 1] += 1
        return cls(tuple(m))

    def multiplicity(self, j: int) -> int:
        return self.mults[j - 1] if 1 <= j <= len(self.mults) else 0

    @property
    def size(self) -> int:
        return sum((j + 1) * m for j, m in enumerate(self.mults))

    @property
    def length(self) -> int:
        """Number of parts, l(lambda) with the script ell."""
        return sum(self.mults)

    @property
    def largest(self) -> int:
        return len(self.mults)

    @property
    def ones(self) -> int:
        return self.multiplicity(1)

    @property
    def parts(self) -> tuple[int, ...]:
        """Parts in nonincreasing order."""
        out = []
        for j in range(len(self.mults), 0, -1):
            out.extend([j] * self.mults[j - 1])
        return tuple(out)

    def items(self) -> Iterator[tuple[int, int]]:
        """(part, multiplicity) pairs with nonzero multiplicity."""
        for j, m in enumerate(self.mults, start=1):
            if m:
                yield j, m

    def __repr__(self):
        return f"Partition{self.parts}"


def _parts_desc(k: int, largest: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _parts_desc(k - first, first):
            yield (first,) + rest


@lru_cache(maxsize=64)
def _enumerate_cached(k: int) -> tuple[Partition, ...]:
    ps = [Partition.from_parts(p) for p in _parts_desc(k, k)]
    # canonical order: lexicographic on the multiplicity vector (m_1, ..., m_k)
    ps.sort(key=lambda p: p.mults + (0,) * (k - len(p.mults)))
    return tuple(ps)


def enumerate_partitions(k: int) -> list[Partition]:
    """All partitions of k, each once, in lexicographic order of multiplicity vectors."""
    if k < 0:
        raise PreconditionError("k must be non-negative")
    if k <= 60:
        return list(_enumerate_cached(k))
    ps = [Partition.from_parts(p) for p in _parts_desc(k, k)]
    ps.sort(key=lambda p: p.mults + (0,) * (k - len(p.mults)))
    return ps


def iter_parts(k: int) -> Iterator[tuple[int, ...]]:
    """Stream partitions of k as nonincreasing tuples (no canonical sort, constant memory)."""
    return _parts_desc(k, k)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) via Euler's pentagonal number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def z_lambda(lam: Partition) -> int:
    """z_lambda = prod_j j^{m_j} m_j!  (centralizer order of the cycle type)."""
    z = 1
    for j, m in lam.items():
        z *= j ** m * factorial(m)
    return z


def cycle_index(k: int) -> list[tuple[Partition, Fraction]]:
    """Z(S_k) in the monomial basis: pairs (lambda, 1/z_lambda)."""
    return [(lam, Fraction(1, z_lambda(lam))) for lam in enumerate_partitions(k)]


def cycle_index_eval(k: int, x: Sequence) -> Fraction:
    """Z(S_k) evaluated at x_1, ..., x_k (x[0] is x_1)."""
    total = Fraction(0)
    for lam, c in cycle_index(k):
        term = c
        for j, m in lam.items():
            term *= Fraction(x[j - 1]) ** m
        total += term
    return total


def polya_check(K: int, x: Sequence, y_trunc: int | None = None) -> bool:
    """Check sum_{k<=K} Z(S_k)(x) y^k == exp(sum_{j<=K} x_j y^j / j) through y^K, exactly."""
    from .series import QSeries

    if K < 1:
        raise PreconditionError("K must be >= 1")
    trunc = K + 1 if y_trunc is None else min(y_trunc, K + 1)
    x = [Fraction(v) for v in x] + [Fraction(0)] * max(0, K - len(x))
    rhs = QSeries.from_dict({j: x[j - 1] / j for j in range(1, trunc)}, trunc).exp()
    lhs = QSeries.from_dict({k: cycle_index_eval(k, x) for k in range(trunc)}, trunc)
    return lhs == rhs


# ----------------------------------------------------------------------
# weight functions

@dataclass(frozen=True)
class PartitionWeight:
    """A named function from partitions to rationals."""

    name: str
    rule: Callable[[Partition], Fraction]

    def __call__(self, lam: Partition) -> Fraction:
        return self.rule(lam)


def _weight(lam: Partition, factor: Callable[[int], int], signed: bool) -> Fraction:
    den = 1
    for j, m in lam.items():
        den *= factorial(m) * factor(j) ** m
    sign = -1 if signed and lam.length % 2 else 1
    return Fraction(sign, den)


def phi_lambda(lam: Partition) -> Fraction:
    """(-1)^len / prod m_j! ((2j)!)^{m_j}  (lattice symmetric functions)."""
    return _weight(lam, lambda j: factorial(2 * j), signed=True)


def phi_crank(lam: Partition) -> Fraction:
    """1 / prod m_j! ((2j)!)^{m_j}  (crank moments)."""
    return _weight(lam, lambda j: factorial(2 * j), signed=False)


def phi_jacobi(lam: Partition) -> Fraction:
    """(-1)^len / prod m_j! (j!)^{m_j}  (Taylor coefficients of Jacobi forms)."""
    return _weight(lam, factorial, signed=True)


PHI_LAMBDA = PartitionWeight("lambda", phi_lambda)
PHI_CRANK = PartitionWeight("crank", phi_crank)
PHI_JACOBI = PartitionWeight("jacobi", phi_jacobi)

WEIGHTS = {w.name: w for w in (PHI_LAMBDA, PHI_CRANK, PHI_JACOBI)}


def custom_weight(rule: Callable[[Partition], object], name: str = "custom") -> PartitionWeight:
    return PartitionWeight(name, lambda lam: Fraction(rule(lam)))


# ----------------------------------------------------------------------
# crank

def crank(lam: Partition) -> int:
    """Andrews-Garvan crank: largest part if there are no ones, else mu - omega."""
    if lam.size == 0:
        raise PreconditionError("the crank of the empty partition is undefined")
    omega = lam.ones
    if omega == 0:
        return lam.largest
    mu = sum(m for j, m in lam.items() if j > omega)
    return mu - omega


def dyson_rank(lam: Partition) -> int:
    """Largest part minus number of parts."""
    return lam.largest - lam.length
