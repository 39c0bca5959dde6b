"""Acceptance gate: one test per reference target, one printed verdict line each.

Targets that the implementation cannot attain are asserted anyway and fail
honestly; their verdict lines carry the measured values and the nearest
attainable substitute.
"""

import itertools
import json
import time
from fractions import Fraction

import pytest
from click.testing import CliRunner

from conftest import fixture_path
from hyperwalk._seeds import derive_rng
from hyperwalk.assoc import (build_reduction, CASES, find_certificate, find_h7_occurrence,
                             is_associative, random_operator, verify_certificate)
from hyperwalk.cli_io import main
from hyperwalk.complexity_model import check_admissibility, cost_exponent
from hyperwalk.errors import ValidationError
from hyperwalk.lp_solver import (build_exponent_lp, optimize_over_schedules, solve_exact,
                                 solve_schedule)
from hyperwalk.oracle import find_subhypergraph, plant_pattern, QueryCounter
from hyperwalk.pattern import is_valid_schedule
from hyperwalk.schedule_enum import (count_complete_schedules, enumerate_complete_schedules,
                                     poset_elements)
from hyperwalk.stats import verify_tail_bounds
from hyperwalk.walk_sim import (check_claim_lambda, mc_lemma3, mc_pair_swap, mc_regularity,
                                mc_vertex_swap, SwapParams, TripleUniverse)


@pytest.fixture
def announce(capsys):
    def _announce(num, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {num:02d}] {'PASS' if ok else 'FAIL'}: {detail}")
    return _announce


def test_criterion_01_k4_schedule_count(announce, k4):
    t0 = time.perf_counter()
    count = count_complete_schedules(k4)
    result = CliRunner().invoke(main, ["schedules", "--pattern", fixture_path("k4.json"),
                                       "--count-only"])
    elapsed = time.perf_counter() - t0
    cli_count = json.loads(result.output)["count"] if result.exit_code == 0 else None
    ok = count == 1680384 and cli_count == 1680384 and elapsed < 60
    announce(1, ok, f"complete schedule count {count} (cli {cli_count}) in {elapsed:.2f}s")
    assert count == 1680384
    assert cli_count == 1680384
    assert elapsed < 60


def test_criterion_02_single_triple_count(announce, triple_pattern):
    t0 = time.perf_counter()
    enumerated = len(list(enumerate_complete_schedules(triple_pattern)))
    elements, _ = poset_elements(triple_pattern)
    brute = sum(1 for perm in itertools.permutations(elements)
                if is_valid_schedule(triple_pattern, perm).ok)
    elapsed = time.perf_counter() - t0
    ok = enumerated == brute == 48 and elapsed < 1
    announce(2, ok, f"one-hyperedge pattern has {enumerated} schedules "
                    f"(brute force {brute}) in {elapsed:.2f}s")
    assert enumerated == 48
    assert brute == 48
    assert elapsed < 1


def test_criterion_03_k4_evaluation(announce, k4, k4_schedule, k4_params):
    overall = cost_exponent(k4, k4_schedule, k4_params).overall
    ok = overall == Fraction(241, 128)
    announce(3, ok, f"4-clique cost exponent {overall} (want 241/128)")
    assert overall == Fraction(241, 128)


def test_criterion_04_k4_optimization(announce, k4, k4_schedule):
    lp_value = solve_exact(build_exponent_lp(k4, k4_schedule)).optimum
    result = optimize_over_schedules(k4, mode="exhaustive")
    per_lp = result.solve_seconds / result.lp_solves
    reference_among_argmins = k4_schedule in result.argmin_schedules
    ok = (lp_value == Fraction(241, 128) and result.best == Fraction(241, 128)
          and reference_among_argmins and per_lp < 0.020)
    announce(4, ok, f"schedule LP {lp_value}; exhaustive minimum {result.best} over "
                    f"{result.schedules_visited} schedules, {result.lp_solves} LP solves, "
                    f"{per_lp * 1000:.2f}ms per LP, argmins {result.argmin_count}, "
                    f"reference schedule among argmins: {reference_among_argmins}")
    assert lp_value == Fraction(241, 128)
    assert result.best == Fraction(241, 128)
    assert result.schedules_visited == 1680384
    assert reference_among_argmins
    assert per_lp < 0.020


def test_criterion_05_h7_exponent(announce, h7, h7_schedule, h7_params, h7_alt_schedule):
    inclusive = cost_exponent(h7, h7_schedule, h7_params).overall
    exclusive = cost_exponent(h7, h7_schedule, h7_params,
                              product_indexing="exclusive").overall
    lp_value = solve_exact(build_exponent_lp(h7, h7_schedule)).optimum
    alt = solve_schedule(h7, h7_alt_schedule)
    alt_value = alt.solution.optimum
    target = Fraction(169, 80)
    ok = inclusive == target and lp_value <= target
    announce(5, ok, f"reference-schedule cost {inclusive} and LP optimum {lp_value} "
                    f"(want 169/80 and <= 169/80); the committed inclusive level "
                    f"products cannot reach them on this schedule, while the "
                    f"exclusive diagnostic gives {exclusive} and an alternative "
                    f"schedule's LP attains {alt_value}")
    # The two sub-claims are kept assertable on their own.
    assert exclusive == target
    assert alt_value == target
    assert inclusive == target, (
        f"inclusive cost is {inclusive}; 169/80 needs the exclusive diagnostic")
    assert lp_value <= target, (
        f"reference-schedule LP optimum is {lp_value} > 169/80; the alternative "
        f"schedule reaches 169/80 exactly")


def test_criterion_06_admissibility(announce, k4, k4_params, h7, h7_params):
    strict_k4 = check_admissibility(k4, k4_params, relax_vertex=False)
    relaxed_h7 = check_admissibility(h7, h7_params, relax_vertex=True)
    strict_h7 = check_admissibility(h7, h7_params, relax_vertex=False)
    failing = sorted(e.condition for e in strict_h7.failing())
    only_vertex_budget = all(c.startswith("vertex_budget[") for c in failing)
    ok = (strict_k4.strict_ok and relaxed_h7.strict_ok
          and not strict_h7.strict_ok and only_vertex_budget and failing)
    announce(6, ok, f"4-clique witness strictly admissible: {strict_k4.strict_ok}; "
                    f"7-vertex witness passes with relaxed vertex budgets: "
                    f"{relaxed_h7.strict_ok}; otherwise non-strict exactly on {failing}")
    assert strict_k4.strict_ok
    assert relaxed_h7.strict_ok
    assert not strict_h7.strict_ok
    assert failing == ["vertex_budget[2]", "vertex_budget[3]",
                       "vertex_budget[6]", "vertex_budget[7]"]


def test_criterion_07_tightness_identity(announce, k4_params):
    x, y, z = k4_params.x, k4_params.y, k4_params.z
    combined = y[(1, 2)] + y[(1, 3)] + y[(2, 3)] - (x[1] + x[2] + x[3])
    ok = combined == z[(1, 2, 3)] == Fraction(241, 128)
    announce(7, ok, f"pair-sum minus vertex-sum {combined} equals triple exponent "
                    f"{z[(1, 2, 3)]} equals 241/128")
    assert combined == z[(1, 2, 3)] == Fraction(241, 128)


def test_criterion_08_hypergeometric_tails(announce):
    report = verify_tail_bounds(max_n=60)
    ok = report.holds and report.elapsed_seconds < 300
    announce(8, ok, f"{report.checks} tail-bound comparisons over {report.points} "
                    f"parameter points, {len(report.violations)} violations, "
                    f"{report.elapsed_seconds:.1f}s")
    assert report.holds
    assert report.elapsed_seconds < 300


def test_criterion_09_lambda_claim(announce):
    universe = TripleUniverse(4)
    allt = universe.all_triples()
    failures = 0
    for t in range(10000):
        rng = derive_rng(1729, "acceptance-claim", t)
        gamma = set(rng.sample(allt, rng.randrange(0, 65)))
        gamma_p = set(rng.sample(allt, rng.randrange(0, 65)))
        p = rng.randrange(1, 65)
        if not check_claim_lambda(gamma, gamma_p, p, universe):
            failures += 1
    ok = failures == 0
    announce(9, ok, f"prefix-difference claim held on 10000 seeded instances "
                    f"({failures} failures)")
    assert failures == 0


def test_criterion_10_lemma3_coupling(announce):
    universe = TripleUniverse(8)
    allt = universe.all_triples()
    rng = derive_rng(1729, "acceptance-lemma3")
    chosen = rng.sample(allt, 110)
    shared, own, own_p = chosen[:90], chosen[90:100], chosen[100:110]
    gamma = set(shared) | set(own)
    gamma_p = set(shared) | set(own_p)
    assert len(gamma) == len(gamma_p) == 100
    assert len(gamma ^ gamma_p) == 20
    report = mc_lemma3(gamma, gamma_p, p=120, r=30, trials=10000, seed=1729,
                       universe=universe)
    ok = report.frequency >= 0.99 and report.passes_floor
    announce(10, ok, f"coupled selection stayed below the threshold "
                     f"{report.threshold:.1f} with frequency {report.frequency} "
                     f"(floor {report.floor:.6f}, worst difference "
                     f"{report.worst_difference})")
    assert report.frequency >= 0.99
    assert report.passes_floor


def test_criterion_11_regularity_and_swaps(announce):
    # The requested sizes put 1024 pairs inside a 16 x 16 grid of capacity 256,
    # so the draws they describe do not exist; the nearest feasible settings
    # are reported alongside the honest failure.
    demo_reg = mc_regularity(64, 64, 64, 3072, 3072, trials=100, seed=1729)
    demo_vertex = mc_vertex_swap(SwapParams(16, 16, 16, 200, 200, 200),
                                 trials=1000, seed=1729)
    demo_pair = mc_pair_swap(SwapParams(16, 16, 16, 200, 200, 200),
                             trials=1000, seed=1729)
    demos_ok = (demo_reg.passes_point and not demo_reg.vacuous
                and demo_vertex.passes and demo_pair.passes)
    announce(11, False,
             f"requested sizes are unrealizable (1024 pairs cannot sit inside a "
             f"16x16 grid of 256 slots); feasible demonstrations pass: regularity "
             f"failure {demo_reg.failure_frequency} <= {demo_reg.bound_failure:.3f} "
             f"at (64,64,64,f=3072), vertex-swap exceedance "
             f"{demo_vertex.exceedance_frequency} and pair-swap exceedance "
             f"{demo_pair.exceedance_frequency} <= 1% at (16,16,16,f=200): {demos_ok}")
    assert demos_ok
    with pytest.raises(ValidationError):
        mc_regularity(16, 16, 16, 1024, 1024, trials=10, seed=1)
    pytest.fail("mc_regularity at r=(16,16,16), f=1024 is unrealizable: a pair "
                "family on 16 x 16 vertices holds at most 256 pairs, so the "
                "requested comparison cannot be sampled; see the feasible "
                "demonstrations in the verdict line")


def test_criterion_12_oracle_soundness_and_reductions(announce, k4):
    recovered = 0
    for seed in range(100):
        inst, _ = plant_pattern(15, k4, 0.05, seed=seed)
        found = find_subhypergraph(inst, k4)
        brute = [quad for quad in itertools.combinations(range(1, 16), 4)
                 if all(t in inst.hyperedges for t in itertools.combinations(quad, 3))]
        if found is not None and tuple(sorted(found.values())) in brute:
            recovered += 1
    equivalent = 0
    for seed in range(1000):
        op = random_operator(4, seed=seed)
        verdict = is_associative(op)
        certs = {case: find_certificate(op, case) for case in CASES}
        certified = {case: c is not None and verify_certificate(op, c)
                     for case, c in certs.items()}
        # Non-associativity shows up as a certificate in at least one case.
        if (verdict is True) == (not (certified["i"] or certified["ii"])):
            equivalent += 1
    cross_validated = 0
    cross_total = 0
    for n in range(2, 7):
        for k in range(6):
            op = random_operator(n, seed=1000 + 10 * n + k)
            for case in CASES:
                cross_total += 1
                red = build_reduction(op, case)
                occ = find_h7_occurrence(red)
                cert = find_certificate(op, case)
                if (occ is None) != (cert is None):
                    continue
                if occ is not None:
                    counter = QueryCounter()
                    if occ != cert.values or not red.checker(occ, counter):
                        continue
                    if counter.total != 4:
                        continue
                cross_validated += 1
    ok = recovered == 100 and equivalent == 1000 and cross_validated == cross_total
    announce(12, ok, f"planted-pattern recovery {recovered}/100 at n=15; "
                     f"associativity equivalence {equivalent}/1000 at n=4; "
                     f"reduction cross-validation {cross_validated}/{cross_total} "
                     f"at n<=6")
    assert recovered == 100
    assert equivalent == 1000
    assert cross_validated == cross_total
