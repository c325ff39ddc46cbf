import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from petrace.eisenstein import G
from petrace.errors import PreconditionError
from petrace.jacobi import TorsionPoint, torsional_G
from petrace.lattice import (ENV_FLAG, G2_star, LatticeParams, completed_torsional_G,
                             elementary_symmetric, eval_qseries, lattice_points,
                             modularity_spot_check, neville, newton_elementary, numba_available,
                             numeric_G, power_sum, resolve_backend, theorem1_numeric_check)
from petrace.lattice import _kernels
from petrace.series import QSeries, eta_pochhammer

BACKENDS = ["numpy"] + (["numba"] if numba_available() else [])


def test_eval_constant():
    assert eval_qseries(QSeries.one(5), 0.3 + 1j)[0] == 1


def test_eval_converges():
    a, _ = eval_qseries(G(2, 30), 1j)
    b, _ = eval_qseries(G(2, 60), 1j)
    assert abs(a - b) < 1e-12


def test_eval_euler_product():
    q = cmath.exp(-2 * math.pi)
    direct = np.prod([1 - q ** n for n in range(1, 40)])
    assert abs(eval_qseries(eta_pochhammer(30), 1j)[0] - direct) < 1e-12


def test_eval_fractional_grid():
    s = QSeries.from_dict({1: 1}, 4, denom=2)
    val, tail = eval_qseries(s, 1j)
    assert abs(val - math.exp(-math.pi)) < 1e-15 and tail < 1e-5


def test_upper_half_plane_required():
    with pytest.raises(PreconditionError):
        eval_qseries(QSeries.one(3), 1 - 1j)


def test_ball_order():
    w = lattice_points(LatticeParams(1j, 10))
    r2 = np.abs(w) ** 2
    assert np.all(np.diff(r2) >= -1e-12)
    assert not np.any(w == 0)
    half = lattice_points(LatticeParams(1j, 10), half=True)
    assert 2 * half.size == w.size


@pytest.mark.parametrize("j, weight", [(2, 4), (3, 6)])
def test_power_sums_match_eisenstein(j, weight):
    P = power_sum(j, LatticeParams(1j, 300))
    expected = (2j * math.pi) ** (2 * j) / math.factorial(2 * j - 1) * numeric_G(weight, 1j)
    assert abs(P - expected) < 1e-6


@pytest.mark.parametrize("j, s", [(2, 0.0), (3, 0.0), (1, 0.5), (2, 0.25)])
def test_ball_sums_stable_under_doubling(j, s):
    a = power_sum(j, LatticeParams(1.5j + 0.2, 300, s))
    b = power_sum(j, LatticeParams(1.5j + 0.2, 600, s))
    assert abs(a - b) < 1e-6


def test_g2_star_vanishes_at_i():
    assert abs(G2_star(1j)) < 1e-14


def test_newton_identities():
    roots = [2.0, 3.0, 5.0]
    p = [sum(r ** j for r in roots) for j in range(1, 4)]
    assert np.allclose(newton_elementary(p), [1, 10, 31, 30])


def test_neville_is_exact_on_polynomials():
    xs = [1, 0.5, 0.25, 0.125]
    ys = [3 + 2 * x - x ** 3 for x in xs]
    assert abs(neville(xs, ys)[-1] - 3) < 1e-12


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("s", [1.0, 0.5])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_newton_matches_distinct_tuples(backend, s, k):
    p = LatticeParams(1j, 20, s)
    newton = elementary_symmetric(k, p, "newton", backend)
    brute = elementary_symmetric(k, p, "brute", backend)
    assert abs(newton - brute) < 1e-10


@pytest.mark.skipif(not numba_available(), reason="numba is not installed")
def test_backends_agree():
    w = lattice_points(LatticeParams(0.1 + 1.2j, 60), half=True)
    a = _kernels.power_sums(w, 0.3, 4, "numba")
    b = _kernels.power_sums(w, 0.3, 4, "numpy")
    assert np.allclose(a, b, rtol=1e-12, atol=1e-15)
    c = _kernels.distinct_tuple_sums(w[:300], 0.5, 3, "numba")
    d = _kernels.distinct_tuple_sums(w[:300], 0.5, 3, "numpy")
    assert np.allclose(c, d, rtol=1e-12, atol=1e-15)


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv(ENV_FLAG, "1")
    assert resolve_backend() == "numpy"
    monkeypatch.delenv(ENV_FLAG)
    assert resolve_backend() == ("numba" if numba_available() else "numpy")
    assert resolve_backend("numpy") == "numpy"
    with pytest.raises(PreconditionError):
        resolve_backend("fortran")


@pytest.mark.parametrize("tau", [1j, 2j])
@pytest.mark.parametrize("k", [1, 2])
def test_lattice_limit_matches_prediction(tau, k):
    rep = theorem1_numeric_check(k, tau)
    assert rep["abs_error"] < 1e-3, rep


@pytest.mark.parametrize("k", [1, 3])
def test_odd_k_vanish_at_i(k):
    rep = theorem1_numeric_check(k, 1j)
    assert abs(rep["lattice_value"]) < 1e-3 and abs(rep["prediction"]) < 1e-3


def test_lattice_limit_near_rho():
    rho = complex(0.5, math.sqrt(3) / 2) + 0.05j
    rep = theorem1_numeric_check(2, rho, radius=300)
    assert rep["abs_error"] < 1e-3, rep


def test_small_imaginary_part_rejected():
    with pytest.raises(PreconditionError):
        theorem1_numeric_check(1, 0.4j)
    modularity_spot_check(2, TorsionPoint(0, Fraction(1, 2)), 0.5j + 0.5)


@pytest.mark.parametrize("k, alpha, beta", [
    (2, 0, Fraction(1, 2)), (1, 0, Fraction(1, 2)), (3, 0, Fraction(1, 3)),
    (1, Fraction(1, 3), Fraction(1, 4)), (2, Fraction(1, 2), Fraction(1, 3)),
    (3, Fraction(1, 4), 0), (1, Fraction(2, 5), Fraction(1, 5)),
])
def test_modularity(k, alpha, beta):
    rep = modularity_spot_check(k, TorsionPoint(alpha, beta))
    assert rep["abs_diff"] < 1e-6, rep


def test_half_period_k1_values_vanish():
    rep = modularity_spot_check(1, TorsionPoint(0, Fraction(1, 2)))
    assert abs(rep["lhs"]) < 1e-12 and abs(rep["rhs"]) < 1e-12


def test_k1_correction_sign():
    # adding alpha instead of subtracting it breaks the transformation law
    x = TorsionPoint(Fraction(1, 3), Fraction(1, 4))
    xp = TorsionPoint(x.beta, -x.alpha)
    tau = 2j
    lhs = eval_qseries(torsional_G(1, x, 40), -1 / tau)[0] + float(x.alpha)
    rhs = tau * (eval_qseries(torsional_G(1, xp, 40), tau)[0] + float(xp.alpha))
    assert abs(lhs - rhs) > 1e-3
    assert abs(completed_torsional_G(1, x, -1 / tau) - tau * completed_torsional_G(1, xp, tau)) < 1e-9
