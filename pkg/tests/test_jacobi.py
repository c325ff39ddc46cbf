from fractions import Fraction
from math import factorial

import pytest

from petrace import jacobi as jb
from petrace.cyclotomic import zeta_power
from petrace.eisenstein import G
from petrace.errors import DivisorError, PreconditionError
from petrace.lattice import eval_qseries, torsional_G_numeric
from petrace.rings import QQ, CyclotomicField
from petrace.series import BiSeries, QSeries

HALF = jb.TorsionPoint(0, Fraction(1, 2))
THIRD = jb.TorsionPoint(0, Fraction(1, 3))


def test_theta_q0_slice_is_2sinh():
    th = jb.theta_product(7, 4)
    assert [th.coeff(t)[0] for t in range(7)] == [0, 1, 0, Fraction(1, 24), 0,
                                                  Fraction(1, 1920), 0]


def test_theta_linear_coefficient_is_one():
    assert jb.theta_product(4, 20).coeff(1) == QSeries.one(20)


def test_theta_exponential_cubic_coefficient():
    th = jb.theta_exponential(6, 12)
    assert th.coeff(3) == G(2, 12).scale(Fraction(-1, 2))
    assert th.coeff(3)[0] == Fraction(1, 24)


def test_theta_product_equals_exponential():
    assert jb.theta_forms_check(10, 16)


def test_theta_is_odd():
    th = jb.theta_product(11, 10)
    assert all(th.coeff(t).is_zero() for t in range(0, 11, 2))


def test_traces_match_sigma_exponential():
    res = jb.theorem1_trace_check(6, 26)
    assert res, res.discrepancy


def test_isobaric_polynomial():
    F2 = jb.isobaric_polynomial(2)
    assert sorted(F2.values()) == [Fraction(-1, 24), Fraction(1, 8)]


def test_eulerian_polynomials():
    assert jb.eulerian_polynomial(0) == [0, 1]
    assert jb.eulerian_polynomial(1) == [0, 1, 1]
    assert jb.eulerian_polynomial(2) == [0, 1, 3, 2]


def test_half_period_values():
    g2 = jb.torsional_G(2, HALF, 6)
    assert g2.coefficients() == [Fraction(-1, 4), -2, 2, -8, 10, -12]
    for k in (1, 3, 5, 7):
        assert jb.torsional_G(k, HALF, 12).is_zero()


def test_third_period_constant():
    z = zeta_power(3, 1)
    g1 = jb.torsional_G(1, THIRD, 4)
    assert g1.ring == CyclotomicField(3)
    assert g1[0] == Fraction(1, 2) + z / (1 - z)


def test_rational_ring_when_beta_is_half():
    assert jb.torsional_G(2, HALF, 3).ring == QQ
    assert jb.torsional_G(2, jb.TorsionPoint(Fraction(1, 2), 0), 3).denom == 2


@pytest.mark.parametrize("alpha, beta", [(0, Fraction(1, 3)), (0, Fraction(1, 4)),
                                         (Fraction(1, 2), 0), (Fraction(1, 3), Fraction(1, 4)),
                                         (Fraction(2, 3), Fraction(1, 2))])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_against_numeric_theta(alpha, beta, k):
    tau = 2j
    exact, _ = eval_qseries(jb.torsional_G(k, jb.TorsionPoint(alpha, beta), 30), tau)
    assert abs(exact - torsional_G_numeric(k, float(alpha), float(beta), tau)) < 1e-8


def test_lift_shifts_only_k1():
    x = jb.TorsionPoint(Fraction(1, 3), Fraction(1, 4))
    assert jb.torsional_G_at(1, Fraction(4, 3), Fraction(1, 4), 5) == jb.torsional_G(1, x, 5) + 1
    assert jb.torsional_G_at(2, Fraction(4, 3), Fraction(-3, 4), 5) == jb.torsional_G(2, x, 5)
    tau = 2j
    val, _ = eval_qseries(jb.torsional_G_at(1, Fraction(4, 3), Fraction(1, 4), 30), tau)
    assert abs(val - torsional_G_numeric(1, 4 / 3, 0.25, tau, radius=0.3)) < 1e-8


def test_origin_rejected():
    with pytest.raises(PreconditionError):
        jb.torsional_G(2, jb.ORIGIN, 5)


@pytest.mark.parametrize("alpha, beta", [(0, Fraction(1, 2)), (0, Fraction(1, 3)),
                                         (0, Fraction(1, 4)), (Fraction(1, 2), 0)])
def test_theta_shift(alpha, beta):
    res = jb.theta_shift_check(jb.TorsionPoint(alpha, beta), 9, 13)
    assert res, res.discrepancy


def test_theta_shift_asymmetric_and_lifted():
    x = jb.TorsionPoint(Fraction(1, 3), Fraction(1, 4))
    assert jb.theta_shift_check(x, 6, 6)
    assert jb.theta_shift_check(x, 6, 6, alpha_lift=-1)
    assert jb.theta_shift_check(jb.TorsionPoint(Fraction(1, 2), Fraction(1, 2)), 5, 5, alpha_lift=2)


def test_theta_shift_needs_reflected_point():
    # exp(-sum G_{j,x} Z^j/j!) (no reflection) is a different series when x != -x
    x = jb.TorsionPoint(Fraction(1, 3), Fraction(1, 4))
    T, N = 5, 5
    ratio = jb.theta_shift_ratio(x.alpha, x.beta, T, N)
    rows = [QSeries.zero(3 * N, x.ring(), 3)] + [
        jb.torsional_G(j, x, N).scale(Fraction(-1, factorial(j))) for j in range(1, T)]
    unreflected = BiSeries(rows, 0, T, "Z").exp()
    assert ratio.first_discrepancy(unreflected) is not None


def test_theta_shift_z0_slice():
    r = jb.theta_shift_ratio(0, Fraction(1, 3), 4, 6)
    assert r.coeff(0) == QSeries.one(6, CyclotomicField(3))


def test_parse_divisor():
    D = jb.parse_divisor("2@0,0;-1@0,1/2;-1@0,1/2+0,-1")
    assert D.degree == 0 and D.origin_multiplicity == 2 and D.index == 0
    assert D.entries[2].lift == (0, -1)
    assert D.lifted_sum() == (0, 0)
    assert jb.parse_divisor(str(D)) == D


@pytest.mark.parametrize("text", ["", "1@0,0+1,0", "1@0,3/2", "0@0,1/2", "x@0,1", "1@0,1/0"])
def test_bad_divisors(text):
    with pytest.raises(DivisorError):
        jb.parse_divisor(text)


def test_unbalanced_divisor_rejected():
    D = jb.parse_divisor("2@0,0;-2@0,1/2")
    with pytest.raises(DivisorError):
        jb.theorem3_reconstruct(D, 4, 4)


def test_divisor_series_at_origin():
    D = jb.parse_divisor("1@0,0")
    N = 10
    assert jb.divisor_G(1, D, N).is_zero()
    assert jb.divisor_G(4, D, N) == G(4, N)
    assert jb.divisor_trace(0, D, N) == 1
    assert jb.divisor_trace(2, D, N) == G(2, N).scale(Fraction(-1, 2))


def test_half_period_divisor_has_no_odd_part():
    D = jb.parse_divisor("2@0,0;-1@0,1/2;-1@0,1/2+0,-1")
    assert jb.divisor_G(1, D, 8).is_zero()
    assert jb.divisor_G(3, D, 8).is_zero()


@pytest.mark.parametrize("text", [
    "1@0,0",
    "2@0,0;-1@0,1/2;-1@0,1/2+0,-1",
    "1@0,1/2;1@0,1/2+0,-1;-1@0,1/3;-1@0,2/3+0,-1",
    "3@0,0;-1@1/3,0;-1@1/3,0;-1@1/3,0+-1,0",
    "-2@0,0;1@1/2,1/2;1@1/2,1/2+-1,-1",
])
def test_divisor_reconstruction(text):
    res = jb.theorem3_reconstruct(jb.parse_divisor(text), 9, 13 if "1/3,0" not in text else 6)
    assert res, res.discrepancy


def test_degree_zero_divisor_starts_at_one():
    D = jb.parse_divisor("1@0,1/2;1@0,1/2+0,-1;-1@0,1/3;-1@0,2/3+0,-1")
    F = jb.divisor_product(D, 5, 6)
    assert F.outer_valuation() == 0
    assert F.coeff(0) == QSeries.one(6, F.ring)


def test_origin_reconstruction_is_theta():
    D = jb.parse_divisor("1@0,0")
    assert jb.divisor_product(D, 8, 10) == jb.theta_product(8, 10)
