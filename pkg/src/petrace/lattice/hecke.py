"""Lattice power sums, elementary symmetric functions and Hecke's limit s -> 0."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..eisenstein import G
from ..errors import PreconditionError
from ..partitions import PHI_LAMBDA, enumerate_partitions
from . import _kernels
from .numeric import MIN_IM_TAU, check_tau, eval_qseries

DEFAULT_SCHEDULE = (1.0, 0.5, 0.25, 0.125)
DEFAULT_RADIUS = 400.0
DEFAULT_TERMS = 40


@dataclass(frozen=True)
class LatticeParams:
    """Lattice Z tau + Z cut off at |omega| <= radius, with Hecke exponent s."""

    tau: complex
    radius: float
    s: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "tau", check_tau(self.tau))
        if self.radius <= 0:
            raise PreconditionError("radius must be positive")
        if self.s < 0:
            raise PreconditionError("s must be non-negative")

    def with_s(self, s: float) -> "LatticeParams":
        return LatticeParams(self.tau, self.radius, s)


@lru_cache(maxsize=16)
def _ball(tau: complex, radius: float, half: bool) -> np.ndarray:
    mmax = int(radius / tau.imag) + 1
    m = np.arange(-mmax, mmax + 1)
    nmax = int(radius + abs(tau.real) * mmax) + 1
    n = np.arange(-nmax, nmax + 1)
    mm, nn = np.meshgrid(m, n, indexing="ij")
    w = (mm * tau + nn).ravel()
    mm, nn = mm.ravel(), nn.ravel()
    keep = (np.abs(w) <= radius) & ((mm != 0) | (nn != 0))
    if half:
        keep &= (mm > 0) | ((mm == 0) & (nn > 0))
    w = w[keep]
    # ball order: by |omega|^2, ties by angle
    order = np.lexsort((np.angle(w), w.real ** 2 + w.imag ** 2))
    w = w[order]
    w.setflags(write=False)
    return w


def lattice_points(params: LatticeParams, half: bool = False) -> np.ndarray:
    """Nonzero omega = m tau + n with |omega| <= R, ball-ordered.

    ``half`` keeps one of each pair +-omega (m > 0, or m = 0 and n > 0).
    """
    return _ball(params.tau, float(params.radius), half)


def power_sum(j: int, params: LatticeParams, backend: str | None = None) -> complex:
    """P_j(s) = sum over the ball of omega^(-2j) |omega|^(-2js)."""
    if j < 1:
        raise PreconditionError("j must be >= 1")
    w = lattice_points(params, half=True)
    # each +-omega pair contributes twice
    return complex(2 * _kernels.power_sums(w, params.s, j, backend)[j - 1])


def newton_elementary(p: list[complex]) -> list[complex]:
    """[e_0, e_1, ..., e_k] from power sums p_1..p_k: k e_k = sum_i (-1)^(i-1) e_{k-i} p_i."""
    e = [1 + 0j]
    for k in range(1, len(p) + 1):
        acc = 0j
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * p[i - 1]
        e.append(acc / k)
    return e


def elementary_symmetric(k: int, params: LatticeParams, method: str = "newton",
                         backend: str | None = None) -> complex:
    """e_k of {1/w : w = omega^2 |omega|^(2s)}, one w per pair +-omega in the ball.

    method "newton" converts power sums; "brute" sums over distinct tuples (k <= 3).
    """
    if k < 0:
        raise PreconditionError("k must be >= 0")
    if k == 0:
        return 1 + 0j
    w = lattice_points(params, half=True)
    if method == "newton":
        p = list(_kernels.power_sums(w, params.s, k, backend))
        return complex(newton_elementary(p)[k])
    if method == "brute":
        return complex(_kernels.distinct_tuple_sums(w, params.s, k, backend)[k - 1])
    raise PreconditionError(f"unknown method {method!r}")


def neville(xs, ys, x0: float = 0.0) -> list[complex]:
    """Successive polynomial extrapolations to x0; entry i uses the first i+1 points... last uses all."""
    xs = [float(x) for x in xs]
    estimates = []
    for upto in range(1, len(xs) + 1):
        p = [complex(y) for y in ys[:upto]]
        for m in range(1, upto):
            for i in range(upto - m):
                p[i] = ((x0 - xs[i + m]) * p[i] + (xs[i] - x0) * p[i + 1]) / (xs[i] - xs[i + m])
        estimates.append(p[0])
    return estimates


def hecke_limit(k: int, tau: complex, schedule=DEFAULT_SCHEDULE, radius: float = DEFAULT_RADIUS,
                backend: str | None = None) -> dict:
    """Extrapolate e_k(Lambda_tau(s)) to s = 0 from the values on ``schedule``."""
    if len(schedule) < 1 or any(s <= 0 for s in schedule):
        raise PreconditionError("schedule must be a list of positive s values")
    base = LatticeParams(tau, radius)
    values = [elementary_symmetric(k, base.with_s(s), backend=backend) for s in schedule]
    est = neville(schedule, values)
    return {"schedule": list(schedule), "values": values, "estimates": est,
            "limit": est[-1], "order": len(schedule) - 1}


def numeric_G(weight: int, tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    value, _ = eval_qseries(G(weight, terms), tau)
    return value


def G2_star(tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    """G_2^*(tau) = 1/(4 pi Im tau) + G_2(tau)."""
    tau = check_tau(tau)
    return 1 / (4 * math.pi * tau.imag) + numeric_G(2, tau, terms)


def lattice_prediction(k: int, tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    """(2 pi)^(2k) F_k(G_2^*, G_4, ..., G_2k), F_k having coefficients phi_Lambda."""
    vals = {1: G2_star(tau, terms)}
    for j in range(2, k + 1):
        vals[j] = numeric_G(2 * j, tau, terms)
    total = 0j
    for lam in enumerate_partitions(k):
        term = complex(float(PHI_LAMBDA(lam)))
        for j, m in lam.items():
            term *= vals[j] ** m
        total += term
    return (2 * math.pi) ** (2 * k) * total


def theorem1_numeric_check(k: int, tau: complex, schedule=DEFAULT_SCHEDULE,
                           radius: float = DEFAULT_RADIUS, tol: float = 1e-3,
                           backend: str | None = None) -> dict:
    """Compare the extrapolated lattice e_k with the quasimodular prediction."""
    if not 1 <= k <= 3:
        raise PreconditionError("k must be 1, 2 or 3")
    tau = check_tau(tau, MIN_IM_TAU)
    lim = hecke_limit(k, tau, schedule, radius, backend)
    pred = lattice_prediction(k, tau)
    err = abs(lim["limit"] - pred)
    return {"k": k, "tau": [tau.real, tau.imag], "radius": radius,
            "schedule": list(schedule), "extrapolation_order": lim["order"],
            "lattice_value": lim["limit"], "prediction": pred,
            "abs_error": err, "tol": tol, "pass": bool(err < tol)}


def newton_vs_brute(k: int, params: LatticeParams, backend: str | None = None) -> float:
    """|e_k(Newton) - e_k(distinct tuples)| on the same ball."""
    return abs(elementary_symmetric(k, params, "newton", backend)
               - elementary_symmetric(k, params, "brute", backend))
