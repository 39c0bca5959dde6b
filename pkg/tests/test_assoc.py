import itertools

import pytest

from hyperwalk.assoc import (AssocCertificate, build_reduction, CASES, certificate_pattern,
                             find_certificate, find_h7_occurrence, is_associative,
                             modular_sum, random_operator, TernaryOperator,
                             verify_certificate)
from hyperwalk.errors import ValidationError
from hyperwalk.oracle import QueryCounter


def first_violation_brute(op):
    n = op.n
    for tup in itertools.product(range(1, n + 1), repeat=5):
        a1, a2, a3, a4, a5 = tup
        left = op(op(a1, a2, a3), a4, a5)
        mid = op(a1, op(a2, a3, a4), a5)
        right = op(a1, a2, op(a3, a4, a5))
        if not (left == mid == right):
            return tup
    return None


def test_modular_sum_is_associative():
    for n in range(2, 7):
        assert is_associative(modular_sum(n)) is True


def test_operator_table_validation():
    with pytest.raises(ValidationError):
        TernaryOperator(2, (1, 2, 3))
    with pytest.raises(ValidationError):
        TernaryOperator(2, tuple([3] * 8))
    op = TernaryOperator(2, tuple(1 for _ in range(8)))
    assert op(2, 2, 2) == 1


def test_from_callable_matches_table():
    ms = modular_sum(3)
    clone = TernaryOperator.from_callable(3, lambda a, b, c: ms(a, b, c))
    assert clone.table == ms.table


def test_perturbed_changes_exactly_one_entry():
    ms = modular_sum(4)
    bad = ms.perturbed((1, 2, 3), value=ms(1, 2, 3) % 4 + 1)
    diffs = [(a, b, c) for a in range(1, 5) for b in range(1, 5) for c in range(1, 5)
             if ms(a, b, c) != bad(a, b, c)]
    assert diffs == [(1, 2, 3)]
    with pytest.raises(ValidationError):
        ms.perturbed((1, 2, 3), value=ms(1, 2, 3))


def test_violation_is_lexicographically_first():
    ms = modular_sum(4)
    bad = ms.perturbed((1, 2, 3), value=ms(1, 2, 3) % 4 + 1)
    verdict = is_associative(bad)
    assert verdict is not True
    assert tuple(verdict) == first_violation_brute(bad)


def test_certificates_found_and_verified_in_both_cases():
    ms = modular_sum(4)
    bad = ms.perturbed((1, 2, 3), value=ms(1, 2, 3) % 4 + 1)
    for case in CASES:
        cert = find_certificate(bad, case)
        assert cert is not None
        assert cert.case == case
        assert verify_certificate(bad, cert)
    assert find_certificate(ms, "i") is None
    assert find_certificate(ms, "ii") is None
    with pytest.raises(ValidationError):
        find_certificate(bad, "iii")


def test_corrupt_certificate_rejected():
    ms = modular_sum(4)
    bad = ms.perturbed((1, 2, 3), value=ms(1, 2, 3) % 4 + 1)
    cert = find_certificate(bad, "i")
    wrong_a6 = cert.values[5] % 4 + 1
    corrupt = AssocCertificate(cert.case, cert.values[:5] + (wrong_a6,) + cert.values[6:])
    assert not verify_certificate(bad, corrupt)


def test_certificate_pattern_shapes():
    pat_i = certificate_pattern("i")
    assert pat_i.kappa == 7
    assert pat_i.directed
    assert len(pat_i.triples) == 4
    assert pat_i.orientation_of((1, 2, 3)) == (1, 2, 3)
    assert pat_i.orientation_of((4, 5, 6)) == (6, 4, 5)
    assert pat_i.orientation_of((1, 5, 7)) == (1, 7, 5)
    pat_ii = certificate_pattern("ii")
    assert pat_ii.orientation_of((2, 3, 4)) == (2, 3, 4)
    assert pat_ii.orientation_of((1, 5, 6)) == (1, 6, 5)
    assert pat_ii.orientation_of((1, 2, 7)) == (1, 2, 7)


def test_reduction_instance_is_complete_weighted_table():
    op = modular_sum(3)
    red = build_reduction(op)
    assert red.case == "i"
    assert red.instance.directed
    assert red.instance.weighted
    assert len(red.instance.hyperedges) == 27
    assert red.instance.weights[(2, 3, 1)] == op(2, 3, 1)


def test_reduction_checker_spends_exactly_four_queries():
    ms = modular_sum(4)
    bad = ms.perturbed((1, 2, 3), value=ms(1, 2, 3) % 4 + 1)
    red = build_reduction(bad)
    cert = find_certificate(bad, "i")
    counter = QueryCounter()
    assert red.checker(cert.values, counter)
    assert counter.total == 4
    good = build_reduction(ms)
    counter = QueryCounter()
    honest = (1, 2, 3, 4, 1, ms(1, 2, 3), ms(2, 3, 4))
    assert not good.checker(honest, counter)
    assert counter.total == 4
    with pytest.raises(ValidationError):
        red.checker((1, 2, 3))


def test_occurrence_matches_certificate_search():
    ms = modular_sum(4)
    bad = ms.perturbed((1, 2, 3), value=ms(1, 2, 3) % 4 + 1)
    for case in CASES:
        red = build_reduction(bad, case)
        occ = find_h7_occurrence(red)
        cert = find_certificate(bad, case)
        assert occ is not None and cert is not None
        assert occ == cert.values
    assert find_h7_occurrence(build_reduction(ms)) is None


def test_equivalence_over_seeded_family():
    hits = 0
    for seed in range(40):
        op = random_operator(3, seed=seed)
        verdict = is_associative(op)
        certs = {case: find_certificate(op, case) for case in CASES}
        if verdict is True:
            assert certs["i"] is None and certs["ii"] is None
        else:
            hits += 1
            assert certs["i"] is not None and certs["ii"] is not None
            for case in CASES:
                assert verify_certificate(op, certs[case])
    assert hits > 0  # random tables are almost never associative


def test_random_operator_seeded():
    assert random_operator(4, seed=9).table == random_operator(4, seed=9).table
    assert random_operator(4, seed=9).table != random_operator(4, seed=10).table
