"""Floating-point side: lattice sums, Hecke's limit and modularity spot checks."""

from ._kernels import ENV_FLAG, numba_available, resolve_backend
from .hecke import (DEFAULT_SCHEDULE, LatticeParams, G2_star, elementary_symmetric,
                    hecke_limit, lattice_points, lattice_prediction, neville, newton_elementary,
                    newton_vs_brute, numeric_G, power_sum, theorem1_numeric_check)
from .modular import completed_torsional_G, inversion_image, modularity_spot_check
from .numeric import eval_qseries, log_theta_derivatives, theta_numeric, torsional_G_numeric

__all__ = [
    "ENV_FLAG", "numba_available", "resolve_backend", "DEFAULT_SCHEDULE", "LatticeParams",
    "G2_star", "elementary_symmetric", "hecke_limit", "lattice_points", "lattice_prediction",
    "neville", "newton_elementary", "newton_vs_brute", "numeric_G", "power_sum",
    "theorem1_numeric_check", "completed_torsional_G", "inversion_image",
    "modularity_spot_check", "eval_qseries", "log_theta_derivatives", "theta_numeric",
    "torsional_G_numeric",
]
