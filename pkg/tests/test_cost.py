from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hyperwalk.complexity_model import (check_admissibility, check_parameter_keys,
                                        cost_exponent, delta_exponent, epsilon_exponent,
                                        ParameterExponents, setup_exponent,
                                        triple_capacity_value, update_exponent,
                                        zero_parameters)
from hyperwalk.errors import InvalidScheduleError, KeyMismatchError, ValidationError
from hyperwalk.pattern import (is_valid_schedule, pair_element, single_triple_pattern,
                               triple_element, vertex_element)


def test_k4_reference_cost(k4, k4_schedule, k4_params):
    cost = cost_exponent(k4, k4_schedule, k4_params)
    assert cost.overall == Fraction(241, 128)
    assert cost.setup == Fraction(241, 128)
    assert cost.dominant() == "setup"
    assert len(cost.terms) == 14
    assert all(t.total <= cost.overall for t in cost.terms)


def test_h7_reference_cost_both_indexings(h7, h7_schedule, h7_params):
    inclusive = cost_exponent(h7, h7_schedule, h7_params)
    exclusive = cost_exponent(h7, h7_schedule, h7_params, product_indexing="exclusive")
    assert inclusive.overall == Fraction(23, 10)
    assert exclusive.overall == Fraction(169, 80)
    assert inclusive.setup == exclusive.setup == Fraction(169, 80)


def test_k4_witness_tightness_identity(k4_params):
    x, y, z = k4_params.x, k4_params.y, k4_params.z
    lhs = y[(1, 2)] + y[(1, 3)] + y[(2, 3)] - (x[1] + x[2] + x[3])
    assert lhs == z[(1, 2, 3)] == Fraction(241, 128)


def test_zero_parameters_cost_is_half_kappa(k4, k4_schedule, triple_pattern):
    # With nothing sampled every vertex costs a half and everything else is
    # free, so the last term accumulates kappa/2.
    cost = cost_exponent(k4, k4_schedule, zero_parameters(k4))
    assert cost.overall == Fraction(2)
    assert cost.setup == 0
    sched = (vertex_element(1), vertex_element(2), vertex_element(3),
             pair_element(1, 2), pair_element(1, 3), pair_element(2, 3),
             triple_element(1, 2, 3))
    cost3 = cost_exponent(triple_pattern, sched, zero_parameters(triple_pattern))
    assert cost3.overall == Fraction(3, 2)


def test_exponent_pieces_on_k4_witness(k4, k4_params):
    assert epsilon_exponent(k4_params, vertex_element(1)) == Fraction(1, 4)
    assert delta_exponent(k4_params, vertex_element(1)) == Fraction(1, 4)
    assert delta_exponent(k4_params, pair_element(1, 2)) == Fraction(5, 8)
    assert delta_exponent(k4_params, triple_element(1, 2, 3)) == Fraction(241, 256)
    assert setup_exponent(k4_params) == Fraction(241, 128)
    assert update_exponent(k4, k4_params, triple_element(1, 2, 3)) == 0
    cap = triple_capacity_value(k4_params, (1, 2, 3))
    assert cap == Fraction(241, 128)


def test_update_exponent_picks_worst_triple(k4, k4_params):
    # The vertex update scans every triple through the vertex.
    z = k4_params.z
    x = k4_params.x
    expected = max(Fraction(0), max(z[t] - x[1] for t in ((1, 2, 3), (1, 2, 4), (1, 3, 4))))
    assert update_exponent(k4, k4_params, vertex_element(1)) == expected


def test_invalid_schedule_raises(k4, k4_schedule, k4_params):
    bad = (k4_schedule[3],) + k4_schedule[1:]
    with pytest.raises(InvalidScheduleError):
        cost_exponent(k4, bad, k4_params)


def test_key_mismatch_raises(k4_params, triple_pattern):
    sched = (vertex_element(1), vertex_element(2), vertex_element(3),
             pair_element(1, 2), pair_element(1, 3), pair_element(2, 3),
             triple_element(1, 2, 3))
    with pytest.raises(KeyMismatchError):
        cost_exponent(triple_pattern, sched, k4_params)
    with pytest.raises(KeyMismatchError):
        check_parameter_keys(triple_pattern, k4_params)


def test_float_exponents_rejected():
    with pytest.raises(ValidationError):
        ParameterExponents({1: 0.5}, {}, {})


def test_pair_key_canonicalization():
    params = ParameterExponents({1: 1, 2: 1}, {(2, 1): Fraction(3, 2)}, {})
    assert params.y == {(1, 2): Fraction(3, 2)}
    with pytest.raises(ValidationError):
        ParameterExponents({}, {(1, 1): 1}, {})


def test_k4_witness_admissibility_strict(k4, k4_params):
    report = check_admissibility(k4, k4_params, relax_vertex=False)
    assert report.strict_ok
    assert report.nonstrict_ok
    assert report.failing() == ()


def test_h7_witness_admissibility_needs_vertex_relaxation(h7, h7_params):
    relaxed = check_admissibility(h7, h7_params, relax_vertex=True)
    assert relaxed.strict_ok
    strict = check_admissibility(h7, h7_params, relax_vertex=False)
    assert not strict.strict_ok
    failing = {e.condition for e in strict.failing()}
    assert failing == {"vertex_budget[2]", "vertex_budget[3]",
                       "vertex_budget[6]", "vertex_budget[7]"}


def rational(denominator=16):
    return st.integers(min_value=0, max_value=2 * denominator).map(
        lambda k: Fraction(k, denominator))


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.sampled_from([1, 2, 3]), rational(), min_size=3, max_size=3),
       st.dictionaries(st.sampled_from([(1, 2), (1, 3), (2, 3)]), rational(),
                       min_size=3, max_size=3),
       rational())
def test_inclusive_dominates_exclusive_when_epsilons_nonnegative(x, y, z):
    pattern = single_triple_pattern()
    params = ParameterExponents(x, y, {(1, 2, 3): z})
    sched = (vertex_element(1), vertex_element(2), vertex_element(3),
             pair_element(1, 2), pair_element(1, 3), pair_element(2, 3),
             triple_element(1, 2, 3))
    eps_ok = all(epsilon_exponent(params, el) >= 0 for el in sched)
    if not eps_ok:
        return
    inc = cost_exponent(pattern, sched, params)
    exc = cost_exponent(pattern, sched, params, product_indexing="exclusive")
    assert inc.overall >= exc.overall >= inc.setup
    for a, b in zip(inc.terms, exc.terms):
        assert a.total - b.total == a.epsilon


@settings(max_examples=40, deadline=None)
@given(st.permutations([0, 1, 2, 3, 4, 5, 6]))
def test_cost_defined_for_every_valid_order(perm):
    pattern = single_triple_pattern()
    elements = [vertex_element(1), vertex_element(2), vertex_element(3),
                pair_element(1, 2), pair_element(1, 3), pair_element(2, 3),
                triple_element(1, 2, 3)]
    sched = tuple(elements[i] for i in perm)
    params = zero_parameters(pattern)
    if is_valid_schedule(pattern, sched).ok:
        assert cost_exponent(pattern, sched, params).overall == Fraction(3, 2)
    else:
        with pytest.raises(InvalidScheduleError):
            cost_exponent(pattern, sched, params)


def test_bad_product_indexing_rejected(k4, k4_schedule, k4_params):
    with pytest.raises(ValidationError):
        cost_exponent(k4, k4_schedule, k4_params, product_indexing="both")
