"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line (shown in the pytest terminal
summary, or shown directly when run as a script).
"""
import json
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from powersum_lab import cli
from powersum_lab.algebra import Poly, RatFunc, compose
from powersum_lab.bounds import (
    brownawell_masser_bound,
    castelnuovo_bound,
    riemann_bound,
    theorem2_from_degrees,
    theorem3_from_degrees,
)
from powersum_lab.chebdickson import (
    chebyshev,
    verify_chebyshev_composition,
    verify_chebyshev_product,
    verify_dickson_composition,
)
from powersum_lab.decompose import classify_shape, decompose_step, solve_outer
from powersum_lab.polyio import RecurrenceSpec
from powersum_lab.recurrence import (
    PowerSumForm,
    binet_verify,
    cardano_passes,
    cardano_verify,
    default_sample_points,
    expand_power_sum_term,
)
from powersum_lab.standard_pairs import (
    DEFAULT_EXCLUSION_GRID,
    exclusion_check_third_kind,
    make_standard_pair,
    verify_bilu_tichy_shape,
)
from powersum_lab.valuation import check_height_equality_conditions, check_sum_formula, height, height_by_places

from conftest import ACCEPTANCE_LINES

FIXTURES = Path(__file__).parent / "fixtures"
TOL = 1e-8


def record(number, title, ok, elapsed, limit, detail=""):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"[{status}] criterion {number}: {title} ({elapsed:.2f} s, limit {limit} s){' - ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, detail
    assert elapsed < limit, f"runtime {elapsed:.2f} s over {limit} s"


def rand_q(rng, lo=-6, hi=6, den=5, nonzero=False):
    while True:
        v = Fraction(rng.randint(lo, hi), rng.randint(1, den))
        if v or not nonzero:
            return v


def rand_poly(rng, deg, lo=-5, hi=5, den=3):
    coeffs = [rand_q(rng, lo, hi, den) for _ in range(deg)] + [rand_q(rng, lo, hi, den, nonzero=True)]
    return Poly(coeffs)


def linear(rng):
    return Poly([rand_q(rng), rand_q(rng, nonzero=True)])


# 1 ---------------------------------------------------------------------------------

def test_criterion_1_eta_vanishing():
    rng = random.Random(1)
    t0 = time.perf_counter()
    ok, count = True, 0
    for _ in range(25):
        b2, c2 = rand_q(rng, nonzero=True), rand_q(rng, nonzero=True)
        c0, c1 = rand_q(rng), rand_q(rng)
        b1 = -3 * b2 * c1 / c2
        b0 = 3 * b2 * (2 * c1 ** 2 - c0 * c2) / c2 ** 2
        e = expand_power_sum_term(Poly([b0, b1, b2]), Poly([c0, c1, c2]), 3)
        ok &= e.ell == 8 and e.eta(7) == 0 and e.eta(6) == 0
        # closed form for η_7 with free b_1, checked on the same grid
        free_b1 = rand_q(rng)
        e_free = expand_power_sum_term(Poly([b0, free_b1, b2]), Poly([c0, c1, c2]), 3)
        ok &= e_free.eta(7) == free_b1 * c2 ** 3 + 3 * b2 * c1 * c2 ** 2
        count += 1
    record(1, "eta vanishing family", ok, time.perf_counter() - t0, 1, f"{count} rational instances")


# 2 ---------------------------------------------------------------------------------

def test_criterion_2_identities():
    t0 = time.perf_counter()
    failures, checked = [], 0
    for m in range(1, 33):
        for n in range(1, 33 // m + 1):
            checked += 1
            if not verify_chebyshev_composition(m, n):
                failures.append(("T comp", m, n))
    for r in (1, -1, 2, -2, Fraction(3, 2)):
        for k in range(1, 33):
            for l in range(1, 33 // k + 1):
                checked += 1
                if not verify_dickson_composition(k, l, r):
                    failures.append(("D comp", k, l, r))
    for k in range(1, 17):
        for n in range(1, 32):
            for m in range(1, n + 1):
                if (n + m) * k <= 32:
                    checked += 1
                    if not verify_chebyshev_product(n, m, k):
                        failures.append(("T prod", n, m, k))
    record(2, "Chebyshev/Dickson identities", not failures, time.perf_counter() - t0, 10,
           f"{checked} identities, {len(failures)} failures")


# 3 ---------------------------------------------------------------------------------

def rand_ratfunc(rng):
    num = rand_poly(rng, rng.randint(0, 6), -4, 4, 2)
    den = rand_poly(rng, rng.randint(0, 6), -4, 4, 2)
    return RatFunc(num, den)


def test_criterion_3_height_properties():
    rng = random.Random(3)
    t0 = time.perf_counter()
    bad = []
    n_cases = 520
    for i in range(n_cases):
        f, g = rand_ratfunc(rng), rand_ratfunc(rng)
        hf, hg = height(f), height(g)
        checks = {
            "cross": hf == height_by_places(f),
            "a": hf >= 0 and height(f.inverse()) == hf,
            "b": (f + g).is_zero() or hf - hg <= height(f + g) <= hf + hg,
            "c": hf - hg <= height(f * g) <= hf + hg,
            "d": all(height(f ** k) == abs(k) * hf for k in (-3, -2, -1, 1, 2, 3)) and height(f ** 0) == 0,
            "e": (hf == 0) == f.is_constant(),
            "sum": check_sum_formula(f).holds,
            "equality_cases": check_height_equality_conditions(f, g).consistent,
        }
        if i % 4 == 0:
            P = rand_poly(rng, rng.randint(1, 4), -3, 3, 2)
            checks["f"] = height(P(f)) == P.degree * hf
            # equality-case instances where the hypotheses hold by construction
            if not f.is_constant():
                k = rng.randint(1, 3)
                g1 = f.inverse() ** k * RatFunc(Poly([rand_q(rng, nonzero=True)]))
                rep = check_height_equality_conditions(f, g1)
                checks["32i"] = rep.sum_applicable and rep.sum_equality and height(f + g1) == (k + 1) * hf
                g2 = f ** k * RatFunc(Poly([rand_q(rng, nonzero=True)]))
                rep = check_height_equality_conditions(f, g2)
                checks["32ii"] = rep.prod_applicable and rep.prod_equality
        bad += [(i, name) for name, ok in checks.items() if not ok]
    record(3, "height property suite", not bad, time.perf_counter() - t0, 10,
           f"{n_cases} random pairs, failures {bad[:5]}")


# 4 ---------------------------------------------------------------------------------

def test_criterion_4_decomposition():
    rng = random.Random(4)
    t0 = time.perf_counter()
    bad = []
    for i in range(200):
        g, h = rand_poly(rng, rng.randint(2, 5)), rand_poly(rng, rng.randint(2, 5))
        f = compose(g, h)
        found = decompose_step(f, h.degree)
        if found is None or compose(*found) != f:
            bad.append(("round trip", i))
    for i in range(100):
        n = rng.randint(2, 7)
        h = compose(linear(rng), compose(Poly.monomial(n), linear(rng)))
        tag = classify_shape(h)
        if tag.tag != "cyclic" or tag.n != n or tag.reconstruct() != h:
            bad.append(("cyclic", i))
    for i in range(100):
        n = rng.randint(3, 7)
        h = compose(linear(rng), compose(chebyshev(n), linear(rng)))
        tag = classify_shape(h)
        if tag.tag != "dihedral" or tag.n != n or tag.reconstruct() != h:
            bad.append(("dihedral", i))
    tagged = 0
    for i in range(100):
        h = rand_poly(rng, rng.randint(2, 6))
        tag = classify_shape(h)
        if tag.tag != "neither":
            tagged += 1
            if tag.reconstruct() != h or tag.l1.degree != 1 or tag.l2.degree != 1:
                bad.append(("false witness", i))
    record(4, "decomposition round trip and shapes", not bad, time.perf_counter() - t0, 30,
           f"{tagged}/100 random instances tagged, failures {bad[:5]}")


# 5 ---------------------------------------------------------------------------------

def test_criterion_5_solve_outer():
    rng = random.Random(5)
    t0 = time.perf_counter()
    bad = []
    for i in range(200):
        U, Q = rand_poly(rng, rng.randint(1, 4)), rand_poly(rng, rng.randint(1, 4))
        V = compose(U, Q)
        found = solve_outer(U, V)
        # any returned Q must recompose; it equals Q unless U has a symmetry
        if found is None or compose(U, found) != V:
            bad.append(("recover", i))
        elif found != Q and compose(U, Q) != compose(U, found):
            bad.append(("mismatch", i))
    # deg U = 1 is skipped: U∘Q + c = U∘(Q + c/lc U) is always solvable
    for i in range(50):
        U, Q = rand_poly(rng, rng.randint(2, 4)), rand_poly(rng, rng.randint(1, 4))
        V = compose(U, Q) + Poly([rand_q(rng, nonzero=True)])
        if solve_outer(U, V) is not None:
            bad.append(("perturbed", i))
    record(5, "solve_outer oracle", not bad, time.perf_counter() - t0, 10, f"failures {bad[:5]}")


# 6 ---------------------------------------------------------------------------------

def test_criterion_6_cardano_binet():
    rng = random.Random(6)
    t0 = time.perf_counter()
    bad, worst = [], 0.0
    for i in range(20):
        a = rand_poly(rng, rng.randint(0, 2))
        b = rand_poly(rng, rng.randint(0, 1))
        c = rand_poly(rng, rng.randint(0, 1))
        initial = tuple(rand_poly(rng, rng.randint(0, 2)) for _ in range(3))
        spec = RecurrenceSpec(3, (a, b, c), initial)
        recs = cardano_verify(spec, default_sample_points(100 + i, 12), TOL)[:5]
        if len(recs) < 5:
            bad.append(("too few valid samples", i))
            continue
        for rec in recs:
            worst = max(worst, *rec.residuals, rec.vieta["e1"], rec.vieta["e2"], rec.vieta["e3"])
            if not cardano_passes(rec, TOL):
                bad.append(("cardano", i))
        binet = binet_verify(spec, 12, [r.sample_point for r in recs], TOL)
        worst = max(worst, binet.max_deviation)
        if not binet.ok:
            bad.append(("binet", i, binet.max_deviation))
    record(6, "Cardano/Binet numeric", not bad, time.perf_counter() - t0, 5,
           f"worst relative residual {worst:.1e}, failures {bad[:5]}")


# 7 ---------------------------------------------------------------------------------

def test_criterion_7_bounds():
    t0 = time.perf_counter()
    t3 = theorem3_from_degrees(1, 0, 0, 1)
    t2 = theorem2_from_degrees(2, 0, 1, deg_B=3)
    ok = (t3.C == 8736
          and t2["C1"] == 7 and t2["C2"] == 314931 and t2["C11"] == Fraction(17, 3)
          and all(t2.hypothesis_flags.values())
          and brownawell_masser_bound(5, 10, 3) == 140
          and castelnuovo_bound(2, 1, 3, 0) == 4
          and riemann_bound(3, 4) == 6)
    record(7, "bounds exactness", ok, time.perf_counter() - t0, 1,
           f"C = {t3.C}, C1 = {t2['C1']}, C2 = {t2['C2']}, C11 = {t2['C11']}")


# 8 ---------------------------------------------------------------------------------

PAIR_PARAMS = {
    "first": [dict(m=3, n=1, a=2, p=Poly([1, 1])), dict(m=5, n=2, a=Fraction(-1, 3)), dict(m=4, n=3, p=Poly([0, 0, 1]))],
    "second": [dict(a=1, b=1), dict(a=2, b=-3, p=Poly([1, 1])), dict(a=Fraction(1, 2), b=5, p=Poly([-2, 0, 1]))],
    "third": [dict(m=3, n=2, a=2), dict(m=5, n=3, a=-1), dict(m=7, n=4, a=Fraction(1, 2))],
    "fourth": [dict(m=4, n=2, a=2, b=3), dict(m=6, n=4, a=-1, b=Fraction(1, 2)), dict(m=2, n=8, a=5, b=-2)],
    "fifth": [dict(a=1), dict(a=2), dict(a=Fraction(-3, 4))],
}


def restriction_ok(kind, params, pair):
    from math import gcd
    m, n = params.get("m"), params.get("n")
    if kind == "first":
        p = params.get("p", Poly([1]))
        return gcd(n, m) == 1 and 0 <= n < m and pair.left.degree == m and pair.right.degree == n + m * p.degree
    if kind == "second":
        return pair.left.degree == 2
    if kind == "third":
        return gcd(m, n) == 1 and (pair.left.degree, pair.right.degree) == (m, n)
    if kind == "fourth":
        return gcd(m, n) == 2 and (pair.left.degree, pair.right.degree) == (m, n)
    return (pair.left.degree, pair.right.degree) == (6, 4)


def test_criterion_8_standard_pairs():
    t0 = time.perf_counter()
    bad = []
    x = Poly.x()
    built = 0
    for kind, sets in PAIR_PARAMS.items():
        for params in sets:
            for switched in (False, True):
                pair = make_standard_pair(kind, switched=switched, **params)
                built += 1
                base = pair if not switched else make_standard_pair(kind, **params)
                if not restriction_ok(kind, params, base):
                    bad.append(("restriction", kind, params))
                if not verify_bilu_tichy_shape(pair.left, pair.right, x, pair, x, x):
                    bad.append(("identity witness", kind, params))
    U = PowerSumForm(((Poly([3, -3, 1]), Poly([1, 1, 1])), (Poly([1]), Poly([0, 1]))))
    for p in (5, 7):
        rep = exclusion_check_third_kind(U, 3, p, DEFAULT_EXCLUSION_GRID)
        if len(rep.rows) != 9 or not rep.holds:
            bad.append(("exclusion", p))
    record(8, "standard pair table and exclusion", not bad, time.perf_counter() - t0, 5,
           f"{built} pairs built, failures {bad[:5]}")


# 9 ---------------------------------------------------------------------------------

CLI_RUNS = [
    (["terms", "--spec", str(FIXTURES / "fib.json"), "--max-n", "6"], 0),
    (["check-structure", "--spec", str(FIXTURES / "power_sum.json")], 1),
    (["verify-roots", "--spec", str(FIXTURES / "cubic.json"), "--seed", "1"], 0),
    (["decompose", "--poly", "x^6-3*x^3+2"], 0),
    (["classify", "--poly", "3*x^4 - 24*x^3 + 72*x^2 - 96*x + 48"], 0),
    (["find-outer-q", "--outer", "x^2 + 1", "--target", "x^6 - 2*x^4 + x^2 + 1"], 0),
    (["find-outer-q", "--outer", "x^2", "--target", "x^2 + 1"], 1),
    (["identities", "--family", "all", "--max-n", "6"], 0),
    (["height", "--poly", "x^3 + 1", "--den", "x - 2"], 0),
    (["valuation", "--poly", "x^2 + 1", "--den", "x"], 0),
    (["standard-pair", "--spec", str(FIXTURES / "pair_third.json")], 0),
    (["standard-pair", "--spec", str(FIXTURES / "pair_witness_bad.json")], 1),
    (["bounds", "--theorem", "2", "--spec", str(FIXTURES / "cubic.json")], 0),
    (["bounds", "--theorem", "3", "--spec", str(FIXTURES / "fib.json")], 0),
    (["decompose", "--poly", "x^2 +* 1"], 2),
]


def test_criterion_9_cli_determinism():
    t0 = time.perf_counter()
    bad = []
    seen = set()
    for argv, expected in CLI_RUNS:
        first, second = cli.run(argv), cli.run(argv)
        if first != second:
            bad.append(("nondeterministic", argv[0]))
        code, out = first
        if code != expected:
            bad.append(("exit code", argv[0], code))
        if json.loads(out)["exit_code"] != code:
            bad.append(("exit mirror", argv[0]))
        seen.add(argv[0])
    missing = set(cli.COMMANDS) - seen
    codes = {expected for _, expected in CLI_RUNS}
    ok = not bad and not missing and {0, 1, 2} <= codes
    record(9, "CLI determinism and exit codes", ok, time.perf_counter() - t0, 5,
           f"{len(CLI_RUNS)} runs x2, failures {bad[:5]}, uncovered {sorted(missing)}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
