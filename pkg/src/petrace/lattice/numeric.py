"""Floating-point evaluation of exact q-series and of the theta function."""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import PreconditionError
from ..series import QSeries

MIN_IM_TAU = 0.5


def check_tau(tau: complex, min_im: float = 0.0) -> complex:
    tau = complex(tau)
    if tau.imag <= 0:
        raise PreconditionError("tau must lie in the upper half plane")
    if tau.imag < min_im:
        raise PreconditionError(f"Im(tau) = {tau.imag} is below {min_im}")
    return tau


def eval_qseries(s: QSeries, tau: complex) -> tuple[complex, float]:
    """(value at q = exp(2 pi i tau), tail estimate |q|^(trunc/L) / (1 - |q|))."""
    tau = check_tau(tau)
    # q^(e/L) = exp(2 pi i tau e / L)
    step = cmath.exp(2j * math.pi * tau / s.denom)
    total = 0j
    for e, c in s.items():
        total += s.ring.to_complex(c) * step ** e
    aq = abs(cmath.exp(2j * math.pi * tau))
    tail = aq ** (s.trunc / s.denom) / (1 - aq)
    return total, tail


def theta_numeric(z: complex, tau: complex, terms: int = 40) -> complex:
    """Theta(z; tau) = sum_n (-1)^n q^(n(n+1)/2) u^(n+1/2) / (q;q)_inf^3, from the theta series."""
    tau = check_tau(tau)
    q = cmath.exp(2j * math.pi * tau)
    num = 0j
    for n in range(-terms, terms):
        num += (-1) ** (n % 2) * q ** (n * (n + 1) // 2) * cmath.exp(2j * math.pi * z * (n + 0.5))
    den = 1 + 0j
    for n in range(1, 8 * terms):
        den *= 1 - q ** n
    return num / den ** 3


def log_theta_derivatives(z0: complex, tau: complex, kmax: int, radius: float = 0.5,
                          points: int = 128) -> list[complex]:
    """[D^k log Theta at z0 for k = 1..kmax], D = d/dZ with Z = 2 pi i z, by a Cauchy integral.

    The contour is a circle of the given radius in Z; it must not enclose a
    zero of Theta other than possibly none at all.
    """
    th = 2 * math.pi * np.arange(points) / points
    Zs = radius * np.exp(1j * th)
    base = theta_numeric(z0, tau)
    vals = np.array([theta_numeric(z0 + Z / (2j * math.pi), tau) / base for Z in Zs])
    logs = np.log(np.abs(vals)) + 1j * np.unwrap(np.angle(vals))
    out = []
    for k in range(1, kmax + 1):
        a_k = np.mean(logs * np.exp(-1j * k * th)) / radius ** k
        out.append(complex(a_k * math.factorial(k)))
    return out


def torsional_G_numeric(k: int, alpha: float, beta: float, tau: complex, **kw) -> complex:
    """-D^k log Theta at z = alpha tau + beta, as an independent numeric oracle."""
    return -log_theta_derivatives(alpha * tau + beta, tau, k, **kw)[k - 1]
