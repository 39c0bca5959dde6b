"""Exact query-cost exponents for a pattern under a loading schedule.

All quantities are exponents of the instance size n, kept as rationals.  A
parameter assignment gives each vertex, pair and triple of the pattern a
sample-size exponent; the model turns a schedule plus parameters into one
setup exponent and one term per level, whose maximum is the overall cost
exponent.  Conventions, for level t with prior levels r <= t:

  spectral-gap exponent  delta(t) = (own sample-size exponent) / 2
  marked-fraction exponent eps(t):
      vertex i       (1 - x_i) / 2
      pair {i,j}     (x_i + x_j - y_ij) / 2
      triple {i,j,k} (y_ij + y_ik + y_jk - x_i - x_j - x_k - z_ijk) / 2
  update exponent  U(t): largest refill cost of a later-level register per
      step, never negative; triples cost nothing to update.
  term(t) = sum of eps(r) over r <= t, plus delta(t), plus U(t).

The sum over r <= t includes level t itself; a keyword lets callers evaluate
the off-by-one variant (sum over r < t) for sensitivity comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Mapping, NamedTuple, Optional, Sequence, Tuple

from .errors import InvalidScheduleError, KeyMismatchError, ValidationError
from .pattern import (LoadingSchedule, PatternHypergraph, ScheduleElement,
                      derive_sigma2, is_valid_schedule, PAIR, TRIPLE, VERTEX)

PRODUCT_INDEXINGS = ("inclusive", "exclusive")


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise ValidationError(f"exponents must be exact rationals, got float {value!r}")
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot read {value!r} as a rational") from exc


@dataclass(frozen=True, eq=True)
class ParameterExponents:
    """Sample-size exponents keyed by vertex, sorted pair and sorted triple.

    Intended domain: every value nonnegative and every x_i at most 1; those
    range conditions are checked by check_admissibility rather than here, so
    that out-of-range assignments can still be constructed and reported on.
    """

    x: Mapping[int, Fraction]
    y: Mapping[Tuple[int, int], Fraction]
    z: Mapping[Tuple[int, int, int], Fraction]

    def __post_init__(self):
        object.__setattr__(self, "x", {int(k): _as_fraction(v) for k, v in sorted(self.x.items())})
        object.__setattr__(self, "y", {tuple(sorted(k)): _as_fraction(v) for k, v in sorted(self.y.items())})
        object.__setattr__(self, "z", {tuple(sorted(k)): _as_fraction(v) for k, v in sorted(self.z.items())})
        for k in self.y:
            if len(k) != 2 or len(set(k)) != 2:
                raise ValidationError(f"pair key {k!r} must name two distinct vertices")
        for k in self.z:
            if len(k) != 3 or len(set(k)) != 3:
                raise ValidationError(f"triple key {k!r} must name three distinct vertices")


def zero_parameters(pattern: PatternHypergraph) -> ParameterExponents:
    """All-zero assignment: query everything, sample nothing."""
    return ParameterExponents(
        {v: Fraction(0) for v in pattern.vertices},
        {p: Fraction(0) for p in derive_sigma2(pattern)},
        {t: Fraction(0) for t in pattern.triples},
    )


def check_parameter_keys(pattern: PatternHypergraph, params: ParameterExponents) -> None:
    """Raise KeyMismatchError unless keys match the pattern exactly."""
    want_x = set(pattern.vertices)
    want_y = set(derive_sigma2(pattern))
    want_z = set(pattern.triples)
    for label, have, want in (("x", set(params.x), want_x),
                              ("y", set(params.y), want_y),
                              ("z", set(params.z), want_z)):
        if have != want:
            missing = sorted(want - have)
            extra = sorted(have - want)
            raise KeyMismatchError(f"{label} keys disagree with pattern: missing {missing}, extra {extra}")


def triple_capacity_value(params: ParameterExponents, triple: Tuple[int, int, int]) -> Fraction:
    """Pair exponents around the triple minus its vertex exponents."""
    i, j, k = sorted(triple)
    return (params.y[(i, j)] + params.y[(i, k)] + params.y[(j, k)]
            - params.x[i] - params.x[j] - params.x[k])


def epsilon_exponent(params: ParameterExponents, element: ScheduleElement) -> Fraction:
    if element.kind == VERTEX:
        return (1 - params.x[element.verts[0]]) / 2
    if element.kind == PAIR:
        i, j = element.verts
        return (params.x[i] + params.x[j] - params.y[element.verts]) / 2
    return (triple_capacity_value(params, element.verts) - params.z[element.verts]) / 2


def delta_exponent(params: ParameterExponents, element: ScheduleElement) -> Fraction:
    if element.kind == VERTEX:
        return params.x[element.verts[0]] / 2
    if element.kind == PAIR:
        return params.y[element.verts] / 2
    return params.z[element.verts] / 2


def update_exponent(pattern: PatternHypergraph, params: ParameterExponents,
                    element: ScheduleElement) -> Fraction:
    """Per-step refill exponent for registers of later levels, floored at 0."""
    zero = Fraction(0)
    if element.kind == TRIPLE:
        return zero
    if element.kind == VERTEX:
        i = element.verts[0]
        costs = [params.z[t] - params.x[i] for t in pattern.triples if i in t]
    else:
        i, j = element.verts
        costs = [params.z[t] - params.y[(i, j)] for t in pattern.triples
                 if i in t and j in t]
    return max([zero] + costs)


def setup_exponent(params: ParameterExponents) -> Fraction:
    return max(params.z.values(), default=Fraction(0))


class LevelTerm(NamedTuple):
    """One summand of the cost: level position (1-based), its element, and
    the exponents entering term(t)."""

    position: int
    element: ScheduleElement
    epsilon: Fraction
    delta: Fraction
    update: Fraction
    total: Fraction


@dataclass(frozen=True)
class CostBreakdown:
    setup: Fraction
    terms: Tuple[LevelTerm, ...]
    overall: Fraction

    def dominant(self) -> str:
        """Which part attains the overall exponent (ties go to setup)."""
        if self.setup == self.overall:
            return "setup"
        t = max(self.terms, key=lambda lt: (lt.total, -lt.position))
        return f"level {t.position} ({t.element})"


def cost_exponent(pattern: PatternHypergraph, schedule: Sequence[ScheduleElement],
                  params: ParameterExponents, *,
                  product_indexing: str = "inclusive") -> CostBreakdown:
    """Exact cost exponent of running the walk under the given schedule.

    product_indexing "inclusive" sums eps over levels r <= t inside term(t);
    "exclusive" is the off-by-one variant summing over r < t only, kept for
    sensitivity analysis.
    """
    if product_indexing not in PRODUCT_INDEXINGS:
        raise ValidationError(f"product_indexing must be one of {PRODUCT_INDEXINGS}")
    report = is_valid_schedule(pattern, schedule)
    if not report.ok:
        raise InvalidScheduleError(report.message, clause=report.clause, position=report.position)
    check_parameter_keys(pattern, params)
    terms = []
    running = Fraction(0)
    for pos, el in enumerate(schedule, start=1):
        eps = epsilon_exponent(params, el)
        running += eps
        delta = delta_exponent(params, el)
        upd = update_exponent(pattern, params, el)
        prefix = running if product_indexing == "inclusive" else running - eps
        terms.append(LevelTerm(pos, el, eps, delta, upd, prefix + delta + upd))
    setup = setup_exponent(params)
    overall = max([setup] + [t.total for t in terms])
    return CostBreakdown(setup, tuple(terms), overall)


class SlackEntry(NamedTuple):
    """One admissibility condition: its id, slack, whether strictness is
    demanded, and whether it holds."""

    condition: str
    slack: Fraction
    strict: bool
    ok: bool


@dataclass(frozen=True)
class AdmissibilityReport:
    strict_ok: bool
    slacks: Tuple[SlackEntry, ...]
    relax_vertex: bool

    @property
    def nonstrict_ok(self) -> bool:
        """All conditions hold with strict ones weakened to >= 0."""
        return all(e.slack >= 0 for e in self.slacks)

    def failing(self) -> Tuple[SlackEntry, ...]:
        return tuple(e for e in self.slacks if not e.ok)


def _entry(condition: str, slack: Fraction, strict: bool) -> SlackEntry:
    ok = slack > 0 if strict else slack >= 0
    return SlackEntry(condition, slack, strict, ok)


def check_admissibility(pattern: PatternHypergraph, params: ParameterExponents,
                        relax_vertex: bool = True) -> AdmissibilityReport:
    """Evaluate every admissibility condition and report slacks.

    Baseline conditions (>= 0): x_i >= 0, x_i <= 1, y_ij >= 0, z_ijk >= 0,
    y_ij <= x_i + x_j, and z_ijk at most the triple capacity.  Strict
    conditions (> 0): y_ij exceeds each endpoint exponent, and around each
    triple the two pair exponents at any shared vertex exceed the triple's
    vertex exponents combined.  With relax_vertex (the default) the
    vertex budget 1 - x_i only needs >= 0, so saturated vertices pass;
    otherwise it is strict too.
    """
    check_parameter_keys(pattern, params)
    entries = []
    for i in pattern.vertices:
        entries.append(_entry(f"x_nonneg[{i}]", params.x[i], False))
        entries.append(_entry(f"vertex_budget[{i}]", 1 - params.x[i], not relax_vertex))
    for (i, j) in derive_sigma2(pattern):
        yij = params.y[(i, j)]
        entries.append(_entry(f"y_nonneg[{i},{j}]", yij, False))
        entries.append(_entry(f"pair_capacity[{i},{j}]", params.x[i] + params.x[j] - yij, False))
        entries.append(_entry(f"pair_over_vertex[{i},{j}|{i}]", yij - params.x[i], True))
        entries.append(_entry(f"pair_over_vertex[{i},{j}|{j}]", yij - params.x[j], True))
    for t in pattern.triples:
        i, j, k = t
        cap = triple_capacity_value(params, t)
        entries.append(_entry(f"z_nonneg[{i},{j},{k}]", params.z[t], False))
        entries.append(_entry(f"triple_capacity[{i},{j},{k}]", cap - params.z[t], False))
        xsum = params.x[i] + params.x[j] + params.x[k]
        for a in t:
            rest = [v for v in t if v != a]
            pair_sum = params.y[tuple(sorted((a, rest[0])))] + params.y[tuple(sorted((a, rest[1])))]
            entries.append(_entry(f"shared_vertex[{i},{j},{k}|{a}]", pair_sum - xsum, True))
    return AdmissibilityReport(all(e.ok for e in entries), tuple(entries), relax_vertex)
