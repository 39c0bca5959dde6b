"""Exact rational linear programming for cost-exponent optimization.

The programs here minimize a single epigraph variable subject to rational
inequality rows, so their duals start primal-feasible at the all-slack basis.
solve_exact therefore runs primal simplex on the dual, with rows kept as
integer vectors plus one positive denominator each; every pivot is exact and
the returned multipliers form a certificate that audit_solution re-checks
independently.

build_exponent_lp linearizes the cost model of complexity_model for one
schedule: one row per setup triple and one row per level and update branch,
all pushed below the epigraph variable.  optimize_over_schedules runs that
over a schedule stream, caching one solve per automorphism class.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, permutations
from math import comb, gcd
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .complexity_model import (ParameterExponents, check_admissibility,
                               PRODUCT_INDEXINGS)
from .errors import HyperwalkError, InvalidScheduleError, ValidationError
from .pattern import (LoadingSchedule, PatternHypergraph, ScheduleElement,
                      derive_sigma2, is_valid_schedule, make_element,
                      PAIR, TRIPLE, VERTEX)
from .schedule_enum import (EnumerationConfig, enumerate_complete_schedules,
                            heuristic_schedules, neighbor_schedules,
                            poset_elements)


class LPRow(NamedTuple):
    """One constraint: coeffs aligned with LinearProgram.variables."""

    name: str
    coeffs: Tuple[Fraction, ...]
    rel: str
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """Minimize one designated variable over rational rows; vars >= 0."""

    variables: Tuple[str, ...]
    rows: Tuple[LPRow, ...]
    objective: str

    def __post_init__(self):
        if self.objective not in self.variables:
            raise ValidationError(f"objective {self.objective!r} is not a variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValidationError("variable names must be distinct")
        for row in self.rows:
            if row.rel not in ("<=", "=="):
                raise ValidationError(f"row {row.name!r} has unknown relation {row.rel!r}")
            if len(row.coeffs) != len(self.variables):
                raise ValidationError(f"row {row.name!r} has {len(row.coeffs)} coefficients, "
                                      f"want {len(self.variables)}")

    def row_as_dict(self, i: int) -> Dict[str, Fraction]:
        return {v: c for v, c in zip(self.variables, self.rows[i].coeffs) if c}


@dataclass(frozen=True)
class LPSolution:
    status: str
    optimum: Optional[Fraction]
    witness: Dict[str, Fraction]
    dual: Tuple[Fraction, ...]
    tight_rows: Tuple[str, ...]
    pivots: int


def _reduce_row(vec: List[int], den: int) -> Tuple[List[int], int]:
    g = den
    for a in vec:
        if a:
            g = gcd(g, a)
            if g == 1:
                return vec, den
    if g > 1:
        vec = [a // g for a in vec]
        den //= g
    return vec, den


def solve_exact(lp: LinearProgram, max_pivots: int = 200000) -> LPSolution:
    """Exact optimum of the program, with dual multipliers.

    Equality rows are split into opposing inequalities internally; the dual
    value reported for such a row is the difference of the two multipliers.
    """
    nvars = len(lp.variables)
    obj_idx = lp.variables.index(lp.objective)

    # internal <= rows; provenance maps original row -> [(internal idx, sign)]
    rows_a: List[Tuple[Fraction, ...]] = []
    rows_b: List[Fraction] = []
    provenance: List[List[Tuple[int, int]]] = []
    for row in lp.rows:
        entry = [(len(rows_a), 1)]
        rows_a.append(row.coeffs)
        rows_b.append(row.rhs)
        if row.rel == "==":
            entry.append((len(rows_a), -1))
            rows_a.append(tuple(-c for c in row.coeffs))
            rows_b.append(-row.rhs)
        provenance.append(entry)
    m = len(rows_a)

    # dual tableau: one row per primal variable, columns = m multipliers,
    # n slacks, then the rhs (the primal objective vector, here e_obj >= 0).
    width = m + nvars + 1
    tableau: List[List[int]] = []
    dens: List[int] = []
    for i in range(nvars):
        cells = [-rows_a[k][i] for k in range(m)]
        den = reduce(lambda acc, f: acc * f.denominator // gcd(acc, f.denominator), cells, 1)
        vec = [int(f * den) for f in cells]
        vec += [den if j == i else 0 for j in range(nvars)]
        vec.append(den if i == obj_idx else 0)
        vec, den = _reduce_row(vec, den)
        tableau.append(vec)
        dens.append(den)
    zden = reduce(lambda acc, f: acc * f.denominator // gcd(acc, f.denominator), rows_b, 1)
    zrow = [int(rows_b[k] * zden) for k in range(m)] + [0] * nvars + [0]
    zrow, zden = _reduce_row(zrow, zden)

    basis = [m + i for i in range(nvars)]
    pivots = 0
    stalls = 0
    bland = False
    while True:
        # entering column: most negative reduced cost, Bland once stalled
        enter = -1
        if bland:
            for j in range(width - 1):
                if zrow[j] < 0:
                    enter = j
                    break
        else:
            best = 0
            for j in range(width - 1):
                v = zrow[j]
                if v < best:
                    best = v
                    enter = j
        if enter < 0:
            break
        # ratio test: min rhs/coeff over positive coeffs; row denominators
        # cancel, so compare with integer cross products
        leave = -1
        ln, ld = 0, 0
        for i in range(nvars):
            piv = tableau[i][enter]
            if piv > 0:
                rn = tableau[i][-1]
                if leave < 0 or rn * ld < ln * piv or (rn * ld == ln * piv and basis[i] < basis[leave]):
                    leave, ln, ld = i, rn, piv
        if leave < 0:
            return LPSolution("infeasible", None, {}, (), (), pivots)
        if pivots >= max_pivots:
            raise HyperwalkError(f"simplex exceeded {max_pivots} pivots")
        pivots += 1
        if tableau[leave][-1] == 0:
            stalls += 1
            if stalls > 2 * width:
                bland = True
        else:
            stalls = 0
        prow = tableau[leave]
        pval = prow[enter]  # > 0 by the ratio test
        for i in range(nvars):
            if i == leave:
                continue
            f = tableau[i][enter]
            if f:
                row = tableau[i]
                tableau[i], dens[i] = _reduce_row(
                    [a * pval - f * b for a, b in zip(row, prow)], dens[i] * pval)
        f = zrow[enter]
        if f:
            zrow, zden = _reduce_row([a * pval - f * b for a, b in zip(zrow, prow)], zden * pval)
        tableau[leave], dens[leave] = _reduce_row(prow, pval)
        basis[leave] = enter

    internal_dual = [Fraction(0)] * m
    for i in range(nvars):
        if basis[i] < m:
            internal_dual[basis[i]] = Fraction(tableau[i][-1], dens[i])
    witness = {lp.variables[i]: Fraction(zrow[m + i], zden) for i in range(nvars)}
    dual = tuple(sum(Fraction(sign) * internal_dual[k] for k, sign in provenance[r])
                 for r in range(len(lp.rows)))
    tight = tuple(lp.rows[r].name for r in range(len(lp.rows))
                  if all(zrow[k] == 0 for k, _ in provenance[r]))
    optimum = Fraction(zrow[-1], zden)
    return LPSolution("optimal", optimum, witness, dual, tight, pivots)


def audit_solution(lp: LinearProgram, sol: LPSolution) -> List[str]:
    """Independent exact check of feasibility, duality and slackness.

    Returns a list of violated conditions; empty means the certificate is
    sound: witness feasible, multipliers sign-correct, reduced costs
    nonnegative, complementary slackness holds and objective values agree.
    """
    if sol.status != "optimal":
        return [f"status {sol.status} carries no certificate"]
    problems = []
    vals = [sol.witness.get(v, Fraction(0)) for v in lp.variables]
    if any(v < 0 for v in vals):
        problems.append("witness has a negative variable")
    slacks = []
    for row, lam in zip(lp.rows, sol.dual):
        lhs = sum(c * v for c, v in zip(row.coeffs, vals))
        s = row.rhs - lhs
        slacks.append(s)
        if row.rel == "==":
            if s != 0:
                problems.append(f"equality row {row.name} violated by {s}")
        else:
            if s < 0:
                problems.append(f"row {row.name} violated by {-s}")
            if lam < 0:
                problems.append(f"row {row.name} has negative multiplier {lam}")
        if s != 0 and lam != 0:
            problems.append(f"row {row.name} breaks complementary slackness")
    for j, var in enumerate(lp.variables):
        c = Fraction(1) if var == lp.objective else Fraction(0)
        reduced = c + sum(row.coeffs[j] * lam for row, lam in zip(lp.rows, sol.dual))
        if reduced < 0:
            problems.append(f"variable {var} has negative reduced cost {reduced}")
        if reduced != 0 and vals[j] != 0:
            problems.append(f"variable {var} breaks complementary slackness")
    dual_value = -sum(row.rhs * lam for row, lam in zip(lp.rows, sol.dual))
    if dual_value != sol.optimum:
        problems.append(f"dual value {dual_value} disagrees with optimum {sol.optimum}")
    if vals[lp.variables.index(lp.objective)] != sol.optimum:
        problems.append("witness does not attain the reported optimum")
    return problems


def variable_names(pattern: PatternHypergraph) -> Tuple[str, ...]:
    names = [f"x[{i}]" for i in pattern.vertices]
    names += ["y[%d,%d]" % p for p in derive_sigma2(pattern)]
    names += ["z[%d,%d,%d]" % t for t in pattern.triples]
    names.append("T")
    return tuple(names)


def params_from_witness(pattern: PatternHypergraph, witness: Mapping[str, Fraction]) -> ParameterExponents:
    return ParameterExponents(
        {i: witness[f"x[{i}]"] for i in pattern.vertices},
        {p: witness["y[%d,%d]" % p] for p in derive_sigma2(pattern)},
        {t: witness["z[%d,%d,%d]" % t] for t in pattern.triples},
    )


def build_exponent_lp(pattern: PatternHypergraph, schedule: Sequence[ScheduleElement], *,
                      margin: Optional[Fraction] = None, relax_vertex: bool = True,
                      product_indexing: str = "inclusive") -> LinearProgram:
    """Linear program whose optimum is the best cost exponent of a schedule.

    The epigraph variable T dominates the setup exponent and every level
    term.  Admissibility enters as the closure of its conditions (strict
    inequalities relaxed to non-strict), which is the right feasible set for
    the infimum; passing a margin tightens the strict rows away from their
    boundaries instead (vertex budgets stay non-strict while relax_vertex is
    set).
    """
    if product_indexing not in PRODUCT_INDEXINGS:
        raise ValidationError(f"product_indexing must be one of {PRODUCT_INDEXINGS}")
    report = is_valid_schedule(pattern, schedule)
    if not report.ok:
        raise InvalidScheduleError(report.message, clause=report.clause, position=report.position)
    variables = variable_names(pattern)
    vidx = {v: i for i, v in enumerate(variables)}
    half = Fraction(1, 2)
    zero = Fraction(0)

    def xn(i):
        return f"x[{i}]"

    def yn(p):
        return "y[%d,%d]" % tuple(sorted(p))

    def zn(t):
        return "z[%d,%d,%d]" % tuple(sorted(t))

    rows: List[LPRow] = []

    def add(name, coeffs: Mapping[str, Fraction], rhs: Fraction):
        dense = [zero] * len(variables)
        for var, c in coeffs.items():
            dense[vidx[var]] += c
        rows.append(LPRow(name, tuple(dense), "<=", Fraction(rhs)))

    gap = Fraction(0) if margin is None else Fraction(margin)
    for i in pattern.vertices:
        cap = Fraction(1) if relax_vertex else 1 - gap
        add(f"vertex_budget[{i}]", {xn(i): Fraction(1)}, cap)
    for (i, j) in derive_sigma2(pattern):
        add(f"pair_capacity[{i},{j}]", {yn((i, j)): Fraction(1), xn(i): Fraction(-1), xn(j): Fraction(-1)}, zero)
        add(f"pair_over_vertex[{i},{j}|{i}]", {xn(i): Fraction(1), yn((i, j)): Fraction(-1)}, -gap)
        add(f"pair_over_vertex[{i},{j}|{j}]", {xn(j): Fraction(1), yn((i, j)): Fraction(-1)}, -gap)
    for t in pattern.triples:
        i, j, k = t
        cap_coeffs = {zn(t): Fraction(1), xn(i): Fraction(1), xn(j): Fraction(1), xn(k): Fraction(1)}
        for p in combinations(t, 2):
            cap_coeffs[yn(p)] = Fraction(-1)
        add(f"triple_capacity[{i},{j},{k}]", cap_coeffs, zero)
        for a in t:
            rest = [v for v in t if v != a]
            coeffs = {xn(i): Fraction(1), xn(j): Fraction(1), xn(k): Fraction(1)}
            for b in rest:
                coeffs[yn((a, b))] = coeffs.get(yn((a, b)), zero) - 1
            add(f"shared_vertex[{i},{j},{k}|{a}]", coeffs, -gap)
        add(f"setup[{i},{j},{k}]", {zn(t): Fraction(1), "T": Fraction(-1)}, zero)

    def eps_terms(el: ScheduleElement) -> Tuple[Dict[str, Fraction], Fraction]:
        if el.kind == VERTEX:
            return {xn(el.verts[0]): -half}, half
        if el.kind == PAIR:
            i, j = el.verts
            return {xn(i): half, xn(j): half, yn(el.verts): -half}, zero
        coeffs = {zn(el.verts): -half}
        for v in el.verts:
            coeffs[xn(v)] = -half
        for p in combinations(el.verts, 2):
            coeffs[yn(p)] = half
        return coeffs, zero

    def delta_terms(el: ScheduleElement) -> Dict[str, Fraction]:
        if el.kind == VERTEX:
            return {xn(el.verts[0]): half}
        if el.kind == PAIR:
            return {yn(el.verts): half}
        return {zn(el.verts): half}

    def update_branches(el: ScheduleElement):
        yield "const", {}
        if el.kind == VERTEX:
            i = el.verts[0]
            for t in pattern.triples:
                if i in t:
                    yield "%d,%d,%d" % t, {zn(t): Fraction(1), xn(i): Fraction(-1)}
        elif el.kind == PAIR:
            i, j = el.verts
            for t in pattern.triples:
                if i in t and j in t:
                    yield "%d,%d,%d" % t, {zn(t): Fraction(1), yn(el.verts): Fraction(-1)}

    running: Dict[str, Fraction] = {}
    running_const = zero
    for pos, el in enumerate(schedule, start=1):
        eps, eps_const = eps_terms(el)
        if product_indexing == "inclusive":
            for var, c in eps.items():
                running[var] = running.get(var, zero) + c
            running_const += eps_const
        base = dict(running)
        base_const = running_const
        for var, c in delta_terms(el).items():
            base[var] = base.get(var, zero) + c
        for label, branch in update_branches(el):
            coeffs = dict(base)
            for var, c in branch.items():
                coeffs[var] = coeffs.get(var, zero) + c
            coeffs["T"] = coeffs.get("T", zero) - 1
            add(f"term[{pos}|{label}]", coeffs, -base_const)
        if product_indexing == "exclusive":
            for var, c in eps.items():
                running[var] = running.get(var, zero) + c
            running_const += eps_const
    return LinearProgram(variables, tuple(rows), "T")


@dataclass(frozen=True)
class ScheduleSolveReport:
    """Solve of one schedule plus the strictness story of its witness.

    When the plain solve leaves some strict admissibility condition tight,
    ``margined`` holds a re-solve with the given rational margin enforced on
    the strict rows.
    """

    schedule: LoadingSchedule
    solution: LPSolution
    witness_params: Optional[ParameterExponents]
    tight_strict_conditions: Tuple[str, ...]
    margin: Fraction
    margined: Optional[LPSolution]


def solve_schedule(pattern: PatternHypergraph, schedule: Sequence[ScheduleElement], *,
                   margin: Fraction = Fraction(1, 1024), relax_vertex: bool = True,
                   product_indexing: str = "inclusive") -> ScheduleSolveReport:
    """Optimize one schedule, then chase strictness post hoc."""
    lp = build_exponent_lp(pattern, schedule, relax_vertex=relax_vertex,
                           product_indexing=product_indexing)
    sol = solve_exact(lp)
    if sol.status != "optimal":
        return ScheduleSolveReport(tuple(schedule), sol, None, (), margin, None)
    params = params_from_witness(pattern, sol.witness)
    adm = check_admissibility(pattern, params, relax_vertex=relax_vertex)
    tight = tuple(e.condition for e in adm.slacks if e.strict and e.slack == 0)
    margined = None
    if tight:
        margined = solve_exact(build_exponent_lp(pattern, schedule, margin=margin,
                                                 relax_vertex=relax_vertex,
                                                 product_indexing=product_indexing))
    return ScheduleSolveReport(tuple(schedule), sol, params, tight, margin, margined)


def pattern_automorphisms(pattern: PatternHypergraph) -> List[Dict[int, int]]:
    """Vertex permutations preserving the unordered triple set."""
    triple_set = set(pattern.triples)
    autos = []
    for perm in permutations(pattern.vertices):
        sigma = {v: perm[v - 1] for v in pattern.vertices}
        if all(tuple(sorted((sigma[a], sigma[b], sigma[c]))) in triple_set for (a, b, c) in pattern.triples):
            autos.append(sigma)
    return autos


class _Canonicalizer:
    """Maps schedules (as element-index tuples) to orbit representatives.

    Complete patterns get the fast path: the unique automorphism renaming
    vertices in order of first appearance canonicalizes the whole orbit.
    Other patterns take the minimum over their (small) automorphism group.
    """

    def __init__(self, pattern: PatternHypergraph):
        self.pattern = pattern
        self.elements, _ = poset_elements(pattern)
        self.index = {el: i for i, el in enumerate(self.elements)}
        self.complete = len(pattern.triples) == comb(pattern.kappa, 3)
        self.autos = pattern_automorphisms(pattern)
        self.tables = [self._table(sigma) for sigma in self.autos]

    def _table(self, sigma: Dict[int, int]) -> List[int]:
        out = []
        for el in self.elements:
            mapped = make_element(el.kind, tuple(sigma[v] for v in el.verts))
            out.append(self.index[mapped])
        return out

    def encode(self, schedule: Sequence[ScheduleElement]) -> Tuple[int, ...]:
        return tuple(self.index[el] for el in schedule)

    def decode(self, encoded: Sequence[int]) -> LoadingSchedule:
        return tuple(self.elements[i] for i in encoded)

    def canonical(self, encoded: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(self.autos) == 1:
            return encoded
        if self.complete:
            rename = {}
            for idx in encoded:
                for v in self.elements[idx].verts:
                    if v not in rename:
                        rename[v] = len(rename) + 1
            table = self._table(rename)
            return tuple(table[i] for i in encoded)
        return min(tuple(t[i] for i in encoded) for t in self.tables)

    def orbit(self, encoded: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        return sorted({tuple(t[i] for i in encoded) for t in self.tables})


@dataclass(frozen=True)
class OptimizeResult:
    """Outcome of optimizing the cost exponent over a schedule stream."""

    best: Fraction
    argmin_count: int
    argmin_schedules: Tuple[LoadingSchedule, ...]
    witness_schedule: LoadingSchedule
    witness_params: ParameterExponents
    schedules_visited: int
    lp_solves: int
    solve_seconds: float
    mode: str
    product_indexing: str


def optimize_over_schedules(pattern: PatternHypergraph, mode: str = "exhaustive",
                            config: Optional[EnumerationConfig] = None, *,
                            product_indexing: str = "inclusive",
                            seed_schedules: Sequence[Sequence[ScheduleElement]] = (),
                            descent_rounds: int = 200,
                            progress=None) -> OptimizeResult:
    """Minimize the optimized cost exponent over complete schedules.

    Exhaustive mode walks the full enumeration stream but solves one LP per
    automorphism class, reusing the value across the class; every schedule
    is still visited and counted.  Heuristic mode samples random schedules
    (plus any ``seed_schedules``), then hill-climbs by adjacent swaps from
    the best ones.  Ties always resolve to the lexicographically smallest
    schedule; ``progress`` is an optional callback taking (visited, best).
    """
    if mode not in ("exhaustive", "heuristic"):
        raise ValidationError(f"unknown optimization mode {mode!r}")
    canon = _Canonicalizer(pattern)
    cache: Dict[Tuple[int, ...], Fraction] = {}
    t_solve = 0.0
    solves = 0

    def lookup(key: Tuple[int, ...]) -> Fraction:
        nonlocal t_solve, solves
        got = cache.get(key)
        if got is None:
            t0 = time.perf_counter()
            lp = build_exponent_lp(pattern, canon.decode(key), product_indexing=product_indexing)
            sol = solve_exact(lp)
            t_solve += time.perf_counter() - t0
            solves += 1
            if sol.status != "optimal":
                raise HyperwalkError(f"schedule LP unexpectedly {sol.status}")
            got = sol.optimum
            cache[key] = got
        return got

    best: Optional[Fraction] = None
    best_keys = set()
    visited = 0

    def consider(encoded: Tuple[int, ...]) -> Fraction:
        nonlocal best, visited
        visited += 1
        key = canon.canonical(encoded)
        val = lookup(key)
        if best is None or val < best:
            best = val
            best_keys.clear()
            best_keys.add(key)
        elif val == best:
            best_keys.add(key)
        if progress is not None and visited % 100000 == 0:
            progress(visited, best)
        return val

    config = config or EnumerationConfig()
    seen_raw = set()
    if mode == "exhaustive":
        for schedule in enumerate_complete_schedules(pattern):
            consider(canon.encode(schedule))
        argmin_raw = set()
        for key in best_keys:
            argmin_raw.update(canon.orbit(key))
    else:
        frontier = []
        for schedule in seed_schedules:
            report = is_valid_schedule(pattern, schedule)
            if not report.ok:
                raise InvalidScheduleError(report.message, clause=report.clause,
                                           position=report.position)
            enc = canon.encode(tuple(schedule))
            if enc not in seen_raw:
                seen_raw.add(enc)
                frontier.append((consider(enc), enc))
        for schedule in heuristic_schedules(pattern, config.budget, config.seed):
            enc = canon.encode(schedule)
            if enc not in seen_raw:
                seen_raw.add(enc)
                frontier.append((consider(enc), enc))
        frontier.sort(key=lambda pair: (pair[0], pair[1]))
        for _, start in frontier[:5]:
            current = start
            for _ in range(descent_rounds):
                options = []
                for nb in neighbor_schedules(pattern, canon.decode(current)):
                    enc = canon.encode(nb)
                    if enc not in seen_raw:
                        seen_raw.add(enc)
                        options.append((consider(enc), enc))
                    else:
                        options.append((lookup(canon.canonical(enc)), enc))
                if not options:
                    break
                options.sort(key=lambda pair: (pair[0], pair[1]))
                if options[0][0] >= lookup(canon.canonical(current)):
                    break
                current = options[0][1]
        argmin_raw = {enc for enc in seen_raw if lookup(canon.canonical(enc)) == best}

    argmins = sorted(argmin_raw)
    witness_enc = argmins[0]
    witness_schedule = canon.decode(witness_enc)
    final = solve_exact(build_exponent_lp(pattern, witness_schedule,
                                          product_indexing=product_indexing))
    return OptimizeResult(
        best=best,
        argmin_count=len(argmins),
        argmin_schedules=tuple(canon.decode(e) for e in argmins),
        witness_schedule=witness_schedule,
        witness_params=params_from_witness(pattern, final.witness),
        schedules_visited=visited,
        lp_solves=solves,
        solve_seconds=t_solve,
        mode=mode,
        product_indexing=product_indexing,
    )
