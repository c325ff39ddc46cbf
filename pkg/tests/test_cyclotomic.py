import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from petrace.cyclotomic import (Cyclo, cyclo_ring, cyclotomic_polynomial, euler_phi,
                                zeta_power)
from petrace.errors import NotAUnitError, RingMismatchError
from petrace.rings import QQ, ComplexField, CyclotomicField, common_ring


@pytest.mark.parametrize("m, poly", [
    (1, (-1, 1)), (2, (1, 1)), (3, (1, 1, 1)), (4, (1, 0, 1)),
    (6, (1, -1, 1)), (8, (1, 0, 0, 0, 1)), (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_polynomials(m, poly):
    assert cyclotomic_polynomial(m) == poly


@pytest.mark.parametrize("m", range(1, 13))
def test_degree_is_euler_phi(m):
    assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)


@pytest.mark.parametrize("m", [3, 4, 5, 8, 12])
def test_zeta_has_order_m(m):
    z = zeta_power(m, 1)
    assert z ** m == 1
    assert all(z ** j != 1 for j in range(1, m))
    assert abs(z.to_complex() - cmath.exp(2j * cmath.pi / m)) < 1e-12


def test_sum_of_primitive_roots_is_mobius():
    assert sum((zeta_power(6, j) for j in (1, 5)), Cyclo.from_rational(6, 0)) == 1
    assert sum((zeta_power(5, j) for j in range(1, 5)), Cyclo.from_rational(5, 0)) == -1


def cyclo_st(m):
    n = euler_phi(m)
    return st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7),
                    min_size=n, max_size=n).map(lambda c: Cyclo(m, c))


@given(cyclo_st(5), cyclo_st(5), cyclo_st(5))
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


@given(cyclo_st(7))
def test_complex_embedding_is_multiplicative(a):
    b = a * a + 1
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9


def test_zero_is_not_invertible():
    with pytest.raises(NotAUnitError):
        Cyclo.from_rational(3, 0).inverse()


def test_lift_to_larger_conductor():
    z3 = zeta_power(3, 1)
    assert z3.lift(12) == zeta_power(12, 4)


def test_ring_selection():
    assert cyclo_ring(1) == QQ and cyclo_ring(2) == QQ
    assert cyclo_ring(12) == CyclotomicField(12)
    assert isinstance(cyclo_ring(13), ComplexField)
    assert common_ring(CyclotomicField(2 * 2), CyclotomicField(3)) == CyclotomicField(12)


def test_rational_field_zeta():
    assert QQ.zeta(2, 1) == -1 and QQ.zeta(4, 2) == -1 and QQ.zeta(3, 3) == 1
    with pytest.raises(RingMismatchError):
        QQ.zeta(3, 1)


def test_coerce_rejects_foreign_roots():
    with pytest.raises(RingMismatchError):
        QQ.coerce(zeta_power(3, 1))
    with pytest.raises(RingMismatchError):
        CyclotomicField(4).coerce(zeta_power(3, 1))
    assert QQ.coerce(Cyclo.from_rational(3, Fraction(2, 3))) == Fraction(2, 3)


def test_json_roundtrip():
    a = zeta_power(12, 5) * Fraction(3, 7) + 2
    assert Cyclo.from_json(a.to_json()) == a
