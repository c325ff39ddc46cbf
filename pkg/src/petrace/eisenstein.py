"""Eisenstein series, Lambert series and partition Eisenstein traces as exact q-series."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable

from .errors import PreconditionError
from .partitions import Partition, PartitionWeight, enumerate_partitions
from .rings import QQ
from .series import QSeries

DEFAULT_TERMS = 30


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise PreconditionError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    # sum_{j<n+1} C(n+1, j) B_j = 0
    s = sum(comb(n + 1, j) * bernoulli(j) for j in range(n))
    return -s / (n + 1)


def sigma_divisor(nu: int, n: int) -> int:
    """sum_{d | n} d^nu."""
    if n < 1 or nu < 0:
        raise PreconditionError("need nu >= 0 and n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** nu
            e = n // d
            if e != d:
                total += e ** nu
        d += 1
    return total


@lru_cache(maxsize=None)
def G(weight: int, N: int = DEFAULT_TERMS) -> QSeries:
    """G_{2k} = -B_{2k}/(2k) + 2 sum_n sigma_{2k-1}(n) q^n, modulo q^N."""
    if weight < 2 or weight % 2:
        raise PreconditionError("weight must be a positive even integer")
    coeffs = {0: -bernoulli(weight) / weight}
    for n in range(1, N):
        coeffs[n] = Fraction(2 * sigma_divisor(weight - 1, n))
    return QSeries.from_dict(coeffs, N)


@lru_cache(maxsize=None)
def lambert_S(odd: int, N: int = DEFAULT_TERMS) -> QSeries:
    """S_{2k-1} = sum_{m>=1} m^{2k-1} q^m / (1 - q^m), expanded term by term modulo q^N."""
    if odd < 1 or odd % 2 == 0:
        raise PreconditionError("index must be a positive odd integer")
    c = [Fraction(0)] * N
    for m in range(1, N):
        mk = m ** odd
        for e in range(m, N, m):
            c[e] += mk
    return QSeries(QQ, c, 0, N)


@lru_cache(maxsize=None)
def _power(weight: int, exponent: int, N: int) -> QSeries:
    if exponent == 0:
        return QSeries.one(N)
    if exponent == 1:
        return G(weight, N)
    return _power(weight, exponent - 1, N) * G(weight, N)


def G_partition(lam: Partition, N: int = DEFAULT_TERMS) -> QSeries:
    """G_lambda = prod_j G_{2j}^{m_j}; the empty partition gives 1."""
    out = QSeries.one(N)
    for j, m in lam.items():
        out = out * _power(2 * j, m, N)
    return out


def lambert_partition(lam: Partition, N: int = DEFAULT_TERMS) -> QSeries:
    """S_lambda = prod_j S_{2j-1}^{m_j}."""
    out = QSeries.one(N)
    for j, m in lam.items():
        out = out * lambert_S(2 * j - 1, N) ** m
    return out


def partition_trace(k: int, weight: Callable[[Partition], object],
                    factor: Callable[[Partition], QSeries], one: QSeries) -> QSeries:
    """sum_{lambda |- k} weight(lambda) * factor(lambda); ``one`` for k = 0."""
    if k < 0:
        raise PreconditionError("k must be non-negative")
    if k == 0:
        return one
    total = None
    for lam in enumerate_partitions(k):
        w = weight(lam)
        if not w:
            continue
        term = factor(lam).scale(w)
        total = term if total is None else total + term
    return total if total is not None else one.scale(0)


def trace(k: int, phi: PartitionWeight | Callable, N: int = DEFAULT_TERMS) -> QSeries:
    """Tr_k(phi) = sum_{lambda |- k} phi(lambda) G_lambda, with Tr_0 = 1."""
    return partition_trace(k, phi, lambda lam: G_partition(lam, N), QSeries.one(N))


class EisensteinTable:
    """Cached G_2..G_{2K}, S_1..S_{2K-1} and B_0..B_{2K} at a fixed truncation."""

    def __init__(self, K: int, N: int = DEFAULT_TERMS):
        if K < 1:
            raise PreconditionError("K must be >= 1")
        self.K = K
        self.N = N
        self.bernoulli = tuple(bernoulli(n) for n in range(2 * K + 1))
        self.G = {2 * k: G(2 * k, N) for k in range(1, K + 1)}
        self.S = {2 * k - 1: lambert_S(2 * k - 1, N) for k in range(1, K + 1)}

    def trace(self, k: int, phi) -> QSeries:
        if k > self.K:
            raise PreconditionError(f"table only holds weights up to {2 * self.K}")
        return trace(k, phi, self.N)

    def check_invariants(self) -> bool:
        for k in range(1, self.K + 1):
            g = self.G[2 * k]
            if g[0] != -self.bernoulli[2 * k] / (2 * k):
                return False
            if self.S[2 * k - 1] != g.scale(Fraction(1, 2)) + self.bernoulli[2 * k] / (4 * k):
                return False
        return True
