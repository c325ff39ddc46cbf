"""Numeric spot checks of the weight-k transformation of torsional Eisenstein series."""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import PreconditionError
from ..jacobi import TorsionPoint, torsional_G
from .numeric import MIN_IM_TAU, check_tau, eval_qseries

DEFAULT_TERMS = 40


def completed_torsional_G(k: int, x: TorsionPoint, tau: complex,
                          terms: int = DEFAULT_TERMS) -> complex:
    """G~_{k,x}(tau): G_{k,x} minus alpha at k = 1, plus 1/(4 pi Im tau) at k = 2.

    With alpha reduced to [0, 1), subtracting alpha makes the k = 1 value
    independent of the lattice representative of x.
    """
    tau = check_tau(tau)
    value, _ = eval_qseries(torsional_G(k, x, terms), tau)
    if k == 1:
        value -= float(x.alpha)
    elif k == 2:
        value += 1 / (4 * math.pi * tau.imag)
    return value


def inversion_image(x: TorsionPoint) -> TorsionPoint:
    """(alpha, beta) -> (alpha, beta) S = (beta, -alpha) for S = [[0, -1], [1, 0]]."""
    return TorsionPoint(x.beta, -x.alpha)


def modularity_spot_check(k: int, x: TorsionPoint, tau: complex = 2j,
                          terms: int = DEFAULT_TERMS, tol: float = 1e-6) -> dict:
    """Compare G~_{k,x}(-1/tau) with tau^k G~_{k,x'}(tau), x' = (beta, -alpha)."""
    if k not in (1, 2, 3):
        raise PreconditionError("k must be 1, 2 or 3")
    if x.is_origin:
        raise PreconditionError("x must be a nonzero torsion point")
    tau = check_tau(tau, MIN_IM_TAU)
    xp = inversion_image(x)
    lhs = completed_torsional_G(k, x, -1 / tau, terms)
    rhs = tau ** k * completed_torsional_G(k, xp, tau, terms)
    diff = abs(lhs - rhs)
    return {"k": k, "x": [str(x.alpha), str(x.beta)], "x_image": [str(xp.alpha), str(xp.beta)],
            "tau": [tau.real, tau.imag], "lhs": lhs, "rhs": rhs, "abs_diff": diff,
            "tol": tol, "pass": bool(diff < tol)}
