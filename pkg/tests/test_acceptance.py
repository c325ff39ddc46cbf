"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

Orders quoted as "to q^20" or "X^10" include that power, so the exclusive
truncations passed below are one larger.
"""

import random
from fractions import Fraction

from conftest import record_criterion

from petrace import crank as ck
from petrace import jacobi as jb
from petrace.eisenstein import G, sigma_divisor
from petrace.lattice import LatticeParams, modularity_spot_check, newton_vs_brute, theorem1_numeric_check
from petrace.partitions import Partition, cycle_index, partition_count, polya_check


def P(*parts):
    return Partition.from_parts(parts)


def test_01_eisenstein_displays():
    N = 21
    consts = {2: Fraction(-1, 12), 4: Fraction(1, 120), 6: Fraction(-1, 252)}
    ok = all(G(w, N)[0] == c for w, c in consts.items())
    ok &= all(G(w, N)[n] == 2 * sigma_divisor(w - 1, n) for w in consts for n in range(1, N))
    assert record_criterion(1, "Eisenstein constants and 2 sigma coefficients", ok)


def test_02_polya():
    examples = {
        1: {P(1): Fraction(1)},
        2: {P(1, 1): Fraction(1, 2), P(2): Fraction(1, 2)},
        3: {P(1, 1, 1): Fraction(1, 6), P(2, 1): Fraction(1, 2), P(3): Fraction(1, 3)},
    }
    ok = all(dict(cycle_index(k)) == want for k, want in examples.items())
    rng = random.Random(20240611)
    samples = [[Fraction(rng.randint(-50, 50), rng.randint(1, 30)) for _ in range(8)]
               for _ in range(20)]
    ok &= all(polya_check(8, x) for x in samples)
    assert record_criterion(2, "cycle index examples, exponential formula K=8 x20", ok)


def test_03_sinc_and_sine_product():
    a = ck.lemma42_check(21)
    b = ck.lemma41_check(11, 16)
    assert record_criterion(3, "sinc exponential to X^20, sin^2 product to (X^10, q^15)",
                            bool(a) and bool(b), f"{a.discrepancy or ''}{b.discrepancy or ''}")


def test_04_moment_generating_function():
    res = ck.theorem2_check(5, 11, 21)
    assert record_criterion(4, "crank moment generating function to (X^10, q^20)", res,
                            str(res.discrepancy or ""))


def test_05_moment_routes():
    res = ck.moments_agree(5, 21)
    c3 = ck.corollary_coefficients(3) == {3: 720, 2: 30, 1: Fraction(3, 8), 0: Fraction(1, 448)}
    c4 = ck.corollary_coefficients(4) == {4: 40320, 3: 1680, 2: 21, 1: Fraction(1, 8),
                                          0: Fraction(1, 2304)}
    assert record_criterion(5, "three moment routes agree to q^20, k<=5; k=3,4 coefficients",
                            bool(res) and c3 and c4)


def test_06_crank_structure():
    t = ck.crank_table_genfun(31)
    ok = all(t.total(n) == partition_count(n) for n in range(31))
    ok &= t.is_symmetric()
    ok &= all(t.moment(2, n) == 2 * n * partition_count(n) for n in range(31))
    cong = [ck.crank_congruence_check(5, 40), ck.crank_congruence_check(7, 40),
            ck.crank_congruence_check(11, 40, size_cap=50)]
    ok &= all(bool(c) for c in cong)
    assert record_criterion(6, "crank totals, symmetry, 2n p(n), mod 5/7/11 equidistribution", ok)


def test_07_traces_exact():
    res = jb.theorem1_trace_check(6, 26)
    assert record_criterion(7, "Tr_k(phi_Lambda) = sigma exponential coefficients, k<=6, q^25",
                            res, str(res.discrepancy or ""))


def test_08_lattice_numeric():
    errors = {}
    for tau in (1j, 2j):
        for k in (1, 2):
            errors[f"e{k}@{tau}"] = theorem1_numeric_check(k, tau)["abs_error"]
    vanish = {f"e{k}@1j": abs(theorem1_numeric_check(k, 1j)["lattice_value"]) for k in (1, 3)}
    brute = max(newton_vs_brute(k, LatticeParams(1j, 20, s)) for k in (1, 2, 3) for s in (1.0, 0.5))
    ok = all(e < 1e-3 for e in errors.values()) and all(v < 1e-3 for v in vanish.values())
    ok &= brute < 1e-10
    detail = f"max error {max(errors.values()):.2e}, newton-vs-brute {brute:.1e}"
    assert record_criterion(8, "Hecke-limit lattice e_k vs quasimodular prediction", ok, detail)


def test_09_theta():
    res = jb.theta_forms_check(10, 16)
    assert record_criterion(9, "theta product = exponential form to (Z^9, q^15), odd in Z", res)


def test_10_torsional():
    points = [(0, Fraction(1, 2)), (0, Fraction(1, 3)), (0, Fraction(1, 4)), (Fraction(1, 2), 0)]
    ok = all(bool(jb.theta_shift_check(jb.TorsionPoint(a, b), 9, 13)) for a, b in points)
    half = jb.TorsionPoint(0, Fraction(1, 2))
    ok &= all(jb.torsional_G(k, half, 13).is_zero() for k in (1, 3, 5, 7))
    assert record_criterion(10, "theta quotients at four torsion points to (Z^8, q^12)", ok)


def test_11_divisor_reconstruction():
    divisors = ["1@0,0", "2@0,0;-1@0,1/2;-1@0,1/2+0,-1",
                "1@0,1/2;1@0,1/2+0,-1;-1@0,1/3;-1@0,2/3+0,-1"]
    results = [jb.theorem3_reconstruct(jb.parse_divisor(d), 9, 13) for d in divisors]
    assert record_criterion(11, "divisor reconstruction for three divisors to (Z^8, q^12)",
                            all(bool(r) for r in results))


def test_12_modularity():
    cases = [(2, (0, Fraction(1, 2))), (1, (0, Fraction(1, 2))), (3, (0, Fraction(1, 3)))]
    diffs = [modularity_spot_check(k, jb.TorsionPoint(a, b), 2j)["abs_diff"] for k, (a, b) in cases]
    assert record_criterion(12, "weight-k inversion spot checks at tau = 2i", max(diffs) < 1e-6,
                            f"max diff {max(diffs):.1e}")
