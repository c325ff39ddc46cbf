import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from petrace.errors import PreconditionError
from petrace.partitions import (PHI_CRANK, PHI_JACOBI, PHI_LAMBDA, Partition, crank,
                                cycle_index, cycle_index_eval, dyson_rank,
                                enumerate_partitions, iter_parts, partition_count, polya_check,
                                z_lambda)


def P(*parts):
    return Partition.from_parts(parts)


def test_small_partition_counts():
    assert [partition_count(n) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert partition_count(100) == 190569292


@pytest.mark.parametrize("k", range(0, 16))
def test_enumeration_is_complete_and_distinct(k):
    ps = enumerate_partitions(k)
    assert len(ps) == partition_count(k) == len(set(ps))
    assert all(p.size == k for p in ps)


def test_canonical_order():
    assert [p.parts for p in enumerate_partitions(4)] == [
        (4,), (2, 2), (3, 1), (2, 1, 1), (1, 1, 1, 1)]


def test_partition_statistics():
    lam = P(5, 3, 3, 1, 1)
    assert lam.size == 13 and lam.length == 5 and lam.largest == 5 and lam.ones == 2
    assert lam.mults == (2, 0, 2, 0, 1)
    assert dict(lam.items()) == {1: 2, 3: 2, 5: 1}


def test_crank_examples():
    assert [crank(p) for p in enumerate_partitions(4)] == [4, 2, 0, -2, -4]
    assert crank(P(1)) == -1
    assert crank(P(5, 3, 3, 1, 1)) == 3 - 2
    with pytest.raises(PreconditionError):
        crank(Partition())


def test_dyson_rank():
    assert dyson_rank(P(4)) == 3 and dyson_rank(P(1, 1, 1)) == -2


def test_cycle_index_small():
    assert dict(cycle_index(3)) == {P(1, 1, 1): Fraction(1, 6), P(2, 1): Fraction(1, 2),
                                    P(3): Fraction(1, 3)}


@pytest.mark.parametrize("k", range(1, 9))
def test_class_sizes_sum_to_one(k):
    assert sum(c for _, c in cycle_index(k)) == 1
    assert sum(factorial(k) // z_lambda(lam) for lam in enumerate_partitions(k)) == factorial(k)


def test_cycle_index_counts_colourings():
    # Z(S_k) at x_j = n counts multisets of size k from n colours
    for k, n in itertools.product(range(1, 6), range(1, 5)):
        from math import comb
        assert cycle_index_eval(k, [n] * k) == comb(n + k - 1, k)


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=9),
                min_size=6, max_size=6))
def test_exponential_formula(x):
    assert polya_check(6, x)


def test_weights():
    lam = P(2, 1, 1)
    assert PHI_LAMBDA(lam) == Fraction(-1, 2 * 2 ** 2 * 24)
    assert PHI_CRANK(lam) == Fraction(1, 2 * 2 ** 2 * 24)
    assert PHI_JACOBI(lam) == Fraction(-1, 2 * 1 * 2)
    assert PHI_LAMBDA(Partition()) == PHI_CRANK(Partition()) == 1


def test_streamed_parts_match():
    assert sorted(iter_parts(7)) == sorted(p.parts for p in enumerate_partitions(7))
