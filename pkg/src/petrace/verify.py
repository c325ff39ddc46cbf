"""Named verification suites shared by the CLI and the acceptance tests.

Each suite runs a list of named checks and returns a VerifyReport.
Truncation parameters are exclusive: ``terms=21`` compares coefficients of
q^0 .. q^20, ``zorder=11`` compares powers X^0 .. X^10 (or Z^0 .. Z^10).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import crank as ck
from . import jacobi as jb
from .checks import CheckResult, _jsonable
from .eisenstein import G, bernoulli, sigma_divisor
from .partitions import Partition, cycle_index, partition_count, polya_check

SUITE_ORDER = ("eisenstein", "polya", "lemma42", "lemma41", "theorem2", "corollary",
               "congruences", "theorem1", "lattice", "theta", "torsional", "theorem3",
               "modularity", "examples")


@dataclass
class VerifyReport:
    suite: str
    params: dict
    passed: bool = True
    checks: list = field(default_factory=list)
    first_discrepancy: object = None
    wall_time: float | None = None

    def add(self, name: str, result, detail=None):
        if isinstance(result, CheckResult):
            ok, disc, det = bool(result), result.discrepancy, result.detail
        elif isinstance(result, dict):
            ok, disc, det = bool(result["pass"]), None if result["pass"] else result, result
        else:
            ok, disc, det = bool(result), None if result else detail, detail
        self.checks.append({"name": name, "pass": ok, "detail": det})
        if not ok and self.passed:
            self.passed = False
            self.first_discrepancy = {"check": name, "at": disc}
        return ok

    def to_json(self) -> dict:
        out = {"suite": self.suite, "params": self.params, "pass": self.passed,
               "checks": self.checks}
        if self.first_discrepancy is not None:
            out["first_discrepancy"] = self.first_discrepancy
        if self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return _jsonable(out)


# ----------------------------------------------------------------------
# suites

def suite_eisenstein(terms: int = 12, **_) -> VerifyReport:
    r = VerifyReport("eisenstein", {"terms": terms})
    expected = {2: Fraction(-1, 12), 4: Fraction(1, 120), 6: Fraction(-1, 252)}
    for w, c in expected.items():
        g = G(w, terms)
        r.add(f"G_{w} constant term", g[0] == c, {"got": g[0], "expected": c})
        r.add(f"G_{w} coefficients are 2 sigma_{w - 1}(n)",
              all(g[n] == 2 * sigma_divisor(w - 1, n) for n in range(1, terms)))
    r.add("B_2, B_4, B_6", [bernoulli(n) for n in (2, 4, 6)]
          == [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42)])
    return r


def suite_polya(k: int = 8, samples: int = 20, seed: int = 2024, **_) -> VerifyReport:
    r = VerifyReport("polya", {"K": k, "samples": samples, "seed": seed})
    def P(*parts):
        return Partition.from_parts(parts)
    examples = {
        1: {P(1): Fraction(1)},
        2: {P(1, 1): Fraction(1, 2), P(2): Fraction(1, 2)},
        3: {P(1, 1, 1): Fraction(1, 6), P(2, 1): Fraction(1, 2), P(3): Fraction(1, 3)},
    }
    for n, want in examples.items():
        r.add(f"cycle index of S_{n}", dict(cycle_index(n)) == want)
    rng = random.Random(seed)
    for i in range(samples):
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(k)]
        r.add(f"exponential formula, sample {i}", polya_check(k, x), {"x": x})
    return r


def suite_lemma42(zorder: int = 21, **_) -> VerifyReport:
    r = VerifyReport("lemma42", {"zorder": zorder})
    r.add("sin(X)/X as an exponential of Bernoulli numbers", ck.lemma42_check(zorder))
    return r


def suite_lemma41(zorder: int = 11, terms: int = 16, **_) -> VerifyReport:
    r = VerifyReport("lemma41", {"zorder": zorder, "terms": terms})
    r.add("Lambert exponential equals the sin^2 product", ck.lemma41_check(zorder, terms))
    return r


def suite_theorem2(k: int = 5, terms: int = 21, zorder: int | None = None, **_) -> VerifyReport:
    T = 2 * k + 1 if zorder is None else zorder
    r = VerifyReport("theorem2", {"k": k, "terms": terms, "zorder": T})
    r.add("even crank moment generating function", ck.theorem2_check(k, T, terms))
    return r


def suite_corollary(k: int = 5, terms: int = 21, **_) -> VerifyReport:
    r = VerifyReport("corollary", {"k": k, "terms": terms})
    r.add("definition = corollary = Lambert", ck.moments_agree(k, terms))
    want3 = {3: 720, 2: 30, 1: Fraction(3, 8), 0: Fraction(1, 448)}
    want4 = {4: 40320, 3: 1680, 2: 21, 1: Fraction(1, 8), 0: Fraction(1, 2304)}
    r.add("k = 3 coefficients", ck.corollary_coefficients(3) == want3)
    r.add("k = 4 coefficients", ck.corollary_coefficients(4) == want4)
    return r


def suite_congruences(terms: int = 31, n_max: int = 40, cap11: int = 50, **_) -> VerifyReport:
    r = VerifyReport("congruences", {"terms": terms, "n_max": n_max, "mod11_size_cap": cap11})
    gen = ck.crank_table_genfun(terms)
    comb = ck.crank_table_combinatorial(terms)
    r.add("sum_m M(m,n) = p(n), generating function",
          all(gen.total(n) == partition_count(n) for n in range(terms)))
    r.add("sum_m M(m,n) = p(n), combinatorial",
          all(comb.total(n) == partition_count(n) for n in range(terms)))
    r.add("M(m,n) = M(-m,n)", gen.is_symmetric())
    r.add("combinatorial counts symmetric for n != 1",
          all(row == row[::-1] for n, row in enumerate(comb.rows) if n != 1))
    r.add("tables agree for n >= 2", all(gen.rows[n] == comb.rows[n] for n in range(2, terms)))
    r.add("sum_m m^2 M(m,n) = 2n p(n)",
          all(gen.moment(2, n) == 2 * n * partition_count(n) for n in range(terms)))
    r.add("odd moments vanish", all(gen.moment(p, n) == 0 for p in (1, 3, 5) for n in range(terms)))
    r.add("mod 5 at 5n+4", ck.crank_congruence_check(5, n_max))
    r.add("mod 7 at 7n+5", ck.crank_congruence_check(7, n_max))
    r.add("mod 11 at 11n+6", ck.crank_congruence_check(11, n_max, size_cap=cap11))
    r.add("mod 5 at 5n+4, generating function", ck.crank_congruence_check(5, n_max, method="genfun"))
    r.add("mod 7 at 7n+5, generating function", ck.crank_congruence_check(7, n_max, method="genfun"))
    r.add("mod 11 at 11n+6, generating function",
          ck.crank_congruence_check(11, n_max, size_cap=cap11, method="genfun"))
    return r


def suite_theorem1(k: int = 6, terms: int = 26, **kw) -> VerifyReport:
    r = VerifyReport("theorem1", {"k": k, "terms": terms})
    r.add("Tr_k(phi_Lambda) are the sigma exponential coefficients", jb.theorem1_trace_check(k, terms))
    lat = suite_lattice(**kw)
    r.params["lattice"] = lat.params
    for c in lat.checks:
        r.add(c["name"], c["pass"], c["detail"])
    return r


def suite_lattice(tau=None, radius: float | None = None, backend: str | None = None,
                  schedule=None, **_) -> VerifyReport:
    from .lattice import DEFAULT_SCHEDULE, LatticeParams, newton_vs_brute, theorem1_numeric_check
    from .lattice.hecke import DEFAULT_RADIUS

    radius = DEFAULT_RADIUS if radius is None else radius
    schedule = tuple(DEFAULT_SCHEDULE if schedule is None else schedule)
    taus = [1j, 2j] if tau is None else [complex(tau)]
    r = VerifyReport("lattice", {"taus": taus, "radius": radius, "schedule": list(schedule)})
    for t in taus:
        for k in (1, 2):
            r.add(f"e_{k} at tau={t}", theorem1_numeric_check(k, t, schedule, radius, backend=backend))
    if 1j in taus:
        for k in (1, 3):
            rep = theorem1_numeric_check(k, 1j, schedule, radius, backend=backend)
            r.add(f"e_{k} vanishes at tau=i", abs(rep["lattice_value"]) < 1e-3,
                  {"lattice_value": rep["lattice_value"]})
    for s in (1.0, 0.5):
        for k in (1, 2, 3):
            err = newton_vs_brute(k, LatticeParams(taus[0], 20.0, s), backend)
            r.add(f"Newton vs distinct tuples, k={k}, s={s}", err < 1e-10, {"abs_error": err})
    return r


def suite_theta(zorder: int = 10, terms: int = 16, **_) -> VerifyReport:
    r = VerifyReport("theta", {"zorder": zorder, "terms": terms})
    r.add("triple product = exponential form, odd in Z", jb.theta_forms_check(zorder, terms))
    return r


TORSION_POINTS = ((Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(1, 3)),
                  (Fraction(0), Fraction(1, 4)), (Fraction(1, 2), Fraction(0)))


def suite_torsional(zorder: int = 9, terms: int = 13, **_) -> VerifyReport:
    r = VerifyReport("torsional", {"zorder": zorder, "terms": terms})
    for a, b in TORSION_POINTS:
        x = jb.TorsionPoint(a, b)
        r.add(f"theta quotient at x={x}", jb.theta_shift_check(x, zorder, terms))
    half = jb.TorsionPoint(0, Fraction(1, 2))
    r.add("G_{k,(0,1/2)} = 0 for odd k <= 7",
          all(jb.torsional_G(k, half, terms).is_zero() for k in (1, 3, 5, 7)))
    return r


EXAMPLE_DIVISORS = (
    "1@0,0",
    "2@0,0;-1@0,1/2;-1@0,1/2+0,-1",
    "1@0,1/2;1@0,1/2+0,-1;-1@0,1/3;-1@0,2/3+0,-1",
)


def suite_theorem3(zorder: int = 9, terms: int = 13, divisor: str | None = None,
                   **_) -> VerifyReport:
    divisors = EXAMPLE_DIVISORS if divisor is None else (divisor,)
    r = VerifyReport("theorem3", {"zorder": zorder, "terms": terms, "divisors": list(divisors)})
    for d in divisors:
        r.add(f"reconstruction for {d}", jb.theorem3_reconstruct(jb.parse_divisor(d), zorder, terms))
    return r


MODULARITY_CASES = ((2, (0, Fraction(1, 2))), (1, (0, Fraction(1, 2))), (3, (0, Fraction(1, 3))))


def suite_modularity(tau=None, **_) -> VerifyReport:
    from .lattice import modularity_spot_check

    tau = 2j if tau is None else complex(tau)
    r = VerifyReport("modularity", {"tau": tau})
    for k, (a, b) in MODULARITY_CASES:
        x = jb.TorsionPoint(a, b)
        r.add(f"k={k}, x={x}", modularity_spot_check(k, x, tau))
    return r


def suite_examples(**_) -> VerifyReport:
    """Small worked values of the crank statistics and moments."""
    r = VerifyReport("examples", {})
    t = ck.crank_table_genfun(10)
    r.add("M(m,4)", t.row(4) == {-4: 1, -2: 1, 0: 1, 2: 1, 4: 1})
    r.add("M(m,1) from the generating function", t.row(1) == {-1: 1, 0: -1, 1: 1})
    r.add("M(m,1) combinatorial", ck.crank_distribution(1) == {-1: 1})
    r.add("sum_m M(m,5) = 7", ck.crank_table_combinatorial(6).total(5) == 7)
    r.add("crank mod 5 over partitions of 9",
          ck.crank_congruence_check(5, 1, method="enumerate").passed)
    c2 = ck.moment_definition(2, 10)
    r.add("C_2 coefficient of q^4 is 40", c2[4] == 40)
    r.add("C_2 via Lambert series", ck.moment_lambert(2, 10) == c2)
    return r


SUITES: dict[str, Callable[..., VerifyReport]] = {
    "eisenstein": suite_eisenstein,
    "polya": suite_polya,
    "lemma42": suite_lemma42,
    "lemma41": suite_lemma41,
    "theorem2": suite_theorem2,
    "corollary": suite_corollary,
    "congruences": suite_congruences,
    "theorem1": suite_theorem1,
    "lattice": suite_lattice,
    "theta": suite_theta,
    "torsional": suite_torsional,
    "theorem3": suite_theorem3,
    "modularity": suite_modularity,
    "examples": suite_examples,
}

#: suites making up ``all``; theorem1 already contains the lattice checks
ALL_SUITES = tuple(s for s in SUITE_ORDER if s != "lattice")


def run_suite(name: str, timing: bool = False, **params) -> VerifyReport:
    params = {k: v for k, v in params.items() if v is not None}
    start = time.perf_counter()
    report = SUITES[name](**params)
    if timing:
        report.wall_time = time.perf_counter() - start
    return report
