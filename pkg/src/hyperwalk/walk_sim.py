"""Classical data structures of the nested walk and their lemma checks.

Everything here is classical simulation: ordered triple lists, index-coupled
set differences, regularity of random pair sets, and the symmetric-difference
growth of triple sets under single-vertex and single-pair swaps.  Monte-Carlo
estimators derive one RNG stream per trial from the master seed, so results
do not depend on evaluation order.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from ._seeds import derive_rng, resolve_seed
from .errors import ValidationError, VacuousBoundWarning

Triple = Tuple[int, int, int]
Pair = Tuple[int, int]


@dataclass(frozen=True)
class TripleUniverse:
    """All of V x V x V for an n-vertex instance, ordered lexicographically."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"universe needs n >= 1, got {self.n}")

    @property
    def size(self) -> int:
        return self.n ** 3

    def all_triples(self) -> List[Triple]:
        rng = range(1, self.n + 1)
        return [(u, v, w) for u in rng for v in rng for w in rng]

    def validate_triples(self, triples: Iterable[Triple], label: str) -> Set[Triple]:
        out = set()
        for t in triples:
            t = tuple(t)
            if len(t) != 3 or any(not (1 <= v <= self.n) for v in t):
                raise ValidationError(f"{label} holds {t!r}, not a triple over 1..{self.n}")
            out.add(t)
        return out


def build_lambda(gamma: Iterable[Triple], universe: TripleUniverse) -> List[Triple]:
    """Ordered list: gamma ascending, then its complement ascending."""
    g = universe.validate_triples(gamma, "gamma")
    rest = [t for t in universe.all_triples() if t not in g]
    return sorted(g) + rest


def y_of(R: Iterable[int], gamma: Iterable[Triple], universe: TripleUniverse) -> Set[Triple]:
    """Triples of gamma selected by the 1-based positions R in the lambda list."""
    g = universe.validate_triples(gamma, "gamma")
    lam = build_lambda(g, universe)
    size = universe.size
    out = set()
    for a in R:
        if not 1 <= a <= size:
            raise ValidationError(f"index {a} outside 1..{size}")
        t = lam[a - 1]
        if t in g:
            out.add(t)
    return out


def lambda_prefix_marked(gamma: Set[Triple], universe: TripleUniverse, p: int) -> Set[Triple]:
    """The set {lambda[a] : a <= p} intersected with gamma."""
    lam = build_lambda(gamma, universe)
    return {t for t in lam[:p] if t in gamma}


def coupling_permutation(gamma: Iterable[Triple], gamma_p: Iterable[Triple],
                         p: int, universe: TripleUniverse) -> Tuple[int, ...]:
    """Permutation of 1..p aligning shared prefix-marked triples.

    Positions a <= min(p, |gamma|) whose triple also sits in the primed
    prefix-marked set map to that triple's primed position; every other
    position takes the smallest target index still available, scanning in
    increasing order.
    """
    if p > universe.size:
        raise ValidationError(f"p = {p} exceeds universe size {universe.size}")
    g = universe.validate_triples(gamma, "gamma")
    gp = universe.validate_triples(gamma_p, "gamma_p")
    lam = build_lambda(g, universe)
    lam_p = build_lambda(gp, universe)
    marked_p = {t for t in lam_p[:p] if t in gp}
    pos_p = {t: i + 1 for i, t in enumerate(lam_p)}
    pi = [0] * p
    used = set()
    for a in range(1, min(p, len(g)) + 1):
        t = lam[a - 1]
        if t in marked_p:
            pi[a - 1] = pos_p[t]
            used.add(pos_p[t])
    free = iter(b for b in range(1, p + 1) if b not in used)
    for a in range(p):
        if pi[a] == 0:
            pi[a] = next(free)
    return tuple(pi)


def check_claim_lambda(gamma: Iterable[Triple], gamma_p: Iterable[Triple],
                       p: int, universe: TripleUniverse) -> bool:
    """Whether the prefix-marked sets differ at most twice as much as the sets."""
    g = universe.validate_triples(gamma, "gamma")
    gp = universe.validate_triples(gamma_p, "gamma_p")
    lam1 = lambda_prefix_marked(g, universe, p)
    lam1_p = lambda_prefix_marked(gp, universe, p)
    return len(lam1 ^ lam1_p) <= 2 * len(g ^ gp)


class Lemma3Report(NamedTuple):
    """Coupled selection differences against the logarithmic threshold.

    The threshold and floor use the natural log of n; the base-2 variants are
    carried along since the source leaves the base open.
    """

    trials: int
    seed: int
    frequency: float
    threshold: float
    floor: float
    frequency_base2: float
    threshold_base2: float
    floor_base2: float
    passes_floor: bool
    passes_floor_base2: bool
    worst_difference: int


def mc_lemma3(gamma: Iterable[Triple], gamma_p: Iterable[Triple], p: int, r: int,
              trials: int, seed: Optional[int] = None,
              universe: Optional[TripleUniverse] = None, n: Optional[int] = None) -> Lemma3Report:
    """Sample r-subsets of 1..p and couple them through the permutation.

    Reports how often |Y(R) symmetric-difference Y'(pi(R))| stays below
    22 r |gamma^gamma'| / p + 100 log n, against the theoretical floor
    1 - 2 (1/2)^(11 r |gamma^gamma'| / p + 50 log n).
    """
    if universe is None:
        if n is None:
            raise ValidationError("pass a TripleUniverse or n")
        universe = TripleUniverse(n)
    if r > p:
        raise ValidationError(f"need r <= p, got r={r} p={p}")
    if p > universe.size:
        raise ValidationError(f"p = {p} exceeds universe size {universe.size}")
    if trials < 1:
        raise ValidationError("trials must be positive")
    seed = resolve_seed(seed)
    g = universe.validate_triples(gamma, "gamma")
    gp = universe.validate_triples(gamma_p, "gamma_p")
    lam = build_lambda(g, universe)
    lam_p = build_lambda(gp, universe)
    pi = coupling_permutation(g, gp, p, universe)
    diff = len(g ^ gp)
    rate = 22 * r * diff / p
    floor_rate = 11 * r * diff / p
    threshold = rate + 100 * math.log(universe.n)
    threshold2 = rate + 100 * math.log2(universe.n)
    floor = 1 - 2 * 0.5 ** (floor_rate + 50 * math.log(universe.n))
    floor2 = 1 - 2 * 0.5 ** (floor_rate + 50 * math.log2(universe.n))
    hits = 0
    hits2 = 0
    worst = 0
    positions = range(1, p + 1)
    for t in range(trials):
        rng = derive_rng(seed, "lemma3", t)
        R = rng.sample(positions, r)
        y = {lam[a - 1] for a in R} & g
        y_p = {lam_p[pi[a - 1] - 1] for a in R} & gp
        d = len(y ^ y_p)
        worst = max(worst, d)
        if d <= threshold:
            hits += 1
        if d <= threshold2:
            hits2 += 1
    freq = hits / trials
    freq2 = hits2 / trials
    return Lemma3Report(trials, seed, freq, threshold, floor, freq2, threshold2, floor2,
                        freq >= floor, freq2 >= floor2, worst)


# ----------------------------------------------------------------------
# pair-set structures
# ----------------------------------------------------------------------


def gamma_of(f_ij: Iterable[Pair], f_ik: Iterable[Pair], f_jk: Iterable[Pair]) -> Set[Triple]:
    """Triples (u,v,w) whose three projections lie in the three pair sets."""
    by_u: Dict[int, List[int]] = {}
    for (u, w) in f_ik:
        by_u.setdefault(u, []).append(w)
    jk = set(map(tuple, f_jk))
    out = set()
    for (u, v) in f_ij:
        for w in by_u.get(u, ()):
            if (v, w) in jk:
                out.add((u, v, w))
    return out


def m_index_size(r_i: int, r_j: int, r_k: int, f_ij: int, f_ik: int, f_jk: int) -> int:
    """Index-universe size for triple levels: ceiling of 11 f f f / (r r r)."""
    return math.ceil(Fraction(11 * f_ij * f_ik * f_jk, r_i * r_j * r_k))


@dataclass(frozen=True)
class LevelSets:
    """One triple context's sampled structures, with size checks.

    gamma is derived, not stored independently, so its defining conjunction
    holds by construction; e_ijk subsets must come from gamma.
    """

    v_i: Tuple[int, ...]
    v_j: Tuple[int, ...]
    v_k: Tuple[int, ...]
    f_ij: FrozenSet[Pair]
    f_ik: FrozenSet[Pair]
    f_jk: FrozenSet[Pair]

    def __post_init__(self):
        for name, pairs, left, right in (("f_ij", self.f_ij, self.v_i, self.v_j),
                                         ("f_ik", self.f_ik, self.v_i, self.v_k),
                                         ("f_jk", self.f_jk, self.v_j, self.v_k)):
            ls, rs = set(left), set(right)
            for (a, b) in pairs:
                if a not in ls or b not in rs:
                    raise ValidationError(f"{name} holds ({a},{b}) outside its vertex sets")

    @property
    def gamma(self) -> Set[Triple]:
        return gamma_of(self.f_ij, self.f_ik, self.f_jk)

    @property
    def index_universe_size(self) -> int:
        return m_index_size(len(self.v_i), len(self.v_j), len(self.v_k),
                            len(self.f_ij), len(self.f_ik), len(self.f_jk))


def _sample_pairs(rng, left: Sequence[int], right: Sequence[int], count: int,
                  label: str) -> Set[Pair]:
    total = len(left) * len(right)
    if count > total:
        raise ValidationError(f"{label} = {count} exceeds {len(left)}x{len(right)} = {total}")
    picks = rng.sample(range(total), count)
    nr = len(right)
    return {(left[idx // nr], right[idx % nr]) for idx in picks}


class MarkedPairFlags(NamedTuple):
    """Outcome of the four pair-level conditions, plus the verdict."""

    planted_present: bool
    left_degrees_ok: bool
    right_degrees_ok: bool
    joint_bounded: bool

    @property
    def ok(self) -> bool:
        return all(self)


def marked_pair_check(f_ij: Iterable[Pair], v_i: Sequence[int], v_j: Sequence[int],
                      planted: Pair, contexts: Optional[Dict[int, Tuple[Sequence[int], Iterable[Pair]]]] = None,
                      ) -> MarkedPairFlags:
    """Literal evaluation of the four marked-pair conditions.

    contexts maps a prior level's third-vertex count r_k to (V_k, F_ik); the
    joint-degree cap 11 f_ij f_ik / (r_i r_j r_k) is checked against each
    supplied context only.
    """
    pairs = set(map(tuple, f_ij))
    f = len(pairs)
    r_i, r_j = len(v_i), len(v_j)
    if r_i == 0 or r_j == 0:
        raise ValidationError("vertex sets must be nonempty")
    planted_ok = tuple(planted) in pairs
    left_deg: Dict[int, int] = {u: 0 for u in v_i}
    right_deg: Dict[int, int] = {v: 0 for v in v_j}
    for (u, v) in pairs:
        left_deg[u] += 1
        right_deg[v] += 1
    lo_i, hi_i = Fraction(f, 2 * r_i), Fraction(2 * f, r_i)
    lo_j, hi_j = Fraction(f, 2 * r_j), Fraction(2 * f, r_j)
    left_ok = all(lo_i <= d <= hi_i for d in left_deg.values())
    right_ok = all(lo_j <= d <= hi_j for d in right_deg.values())
    joint_ok = True
    for (v_k, f_ik) in (contexts or {}).values():
        r_k = len(v_k)
        cap = Fraction(11 * f * len(set(map(tuple, f_ik))), r_i * r_j * r_k)
        by_w: Dict[int, Set[int]] = {}
        for (u, w) in f_ik:
            by_w.setdefault(w, set()).add(u)
        by_v: Dict[int, Set[int]] = {}
        for (u, v) in pairs:
            by_v.setdefault(v, set()).add(u)
        for v in v_j:
            us = by_v.get(v, set())
            for w in v_k:
                if len(us & by_w.get(w, set())) > cap:
                    joint_ok = False
                    break
            if not joint_ok:
                break
        if not joint_ok:
            break
    return MarkedPairFlags(planted_ok, left_ok, right_ok, joint_ok)


def _wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> Tuple[float, float]:
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    z2 = z * z
    denom = 1 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


class RegularityReport(NamedTuple):
    """Failure rate of conditions (degrees and joint caps) vs the success bound."""

    trials: int
    seed: int
    failure_frequency: float
    failure_wilson: Tuple[float, float]
    bound_success: float
    bound_failure: float
    vacuous: bool
    passes_point: bool
    passes_wilson: bool


def regularity_success_bound(r_i: int, r_j: int, r_k: int, f_ij: int, f_ik: int,
                             kappa: int = 3) -> float:
    """Lower bound on the probability that the degree and joint caps all hold."""
    return (1
            - 2 * r_i * math.exp(-f_ij / (8 * r_i))
            - 2 * r_j * math.exp(-f_ij / (8 * r_j))
            - r_j * r_k * kappa * 2 ** (-11 * f_ij * f_ik / (r_i * r_j * r_k)))


def mc_regularity(r_i: int, r_j: int, r_k: int, f_ij: int, f_ik: int,
                  trials: int, seed: Optional[int] = None, kappa: int = 3) -> RegularityReport:
    """Estimate how often a random pair set breaks regularity.

    Each trial samples the prior context F_ik first, redrawing it until its
    column degrees respect the 2 f_ik / r_k cap (the standing hypothesis on
    already-marked outer levels), then samples F_ij and evaluates the degree
    conditions and the joint cap.  Failure frequency is compared against the
    complement of the success bound.
    """
    for label, f, cap in (("f_ij", f_ij, r_i * r_j), ("f_ik", f_ik, r_i * r_k)):
        if f < 0 or f > cap:
            raise ValidationError(f"{label} = {f} must lie in 0..{cap}")
    if min(r_i, r_j, r_k) < 1:
        raise ValidationError("vertex sample sizes must be positive")
    if trials < 1:
        raise ValidationError("trials must be positive")
    seed = resolve_seed(seed)
    bound = regularity_success_bound(r_i, r_j, r_k, f_ij, f_ik, kappa)
    vacuous = bound <= 0
    if vacuous:
        warnings.warn(f"success bound {bound:.3g} is not positive; check is vacuous",
                      VacuousBoundWarning, stacklevel=2)
    v_i = tuple(range(1, r_i + 1))
    v_j = tuple(range(1, r_j + 1))
    v_k = tuple(range(1, r_k + 1))
    col_cap = Fraction(2 * f_ik, r_k)
    failures = 0
    for t in range(trials):
        rng = derive_rng(seed, "regularity", t)
        for _ in range(1000):
            fik = _sample_pairs(rng, v_i, v_k, f_ik, "f_ik")
            cols: Dict[int, int] = {}
            for (u, w) in fik:
                cols[w] = cols.get(w, 0) + 1
            if all(c <= col_cap for c in cols.values()):
                break
        else:
            raise ValidationError("could not draw a context set meeting its degree cap")
        fij = _sample_pairs(rng, v_i, v_j, f_ij, "f_ij")
        flags = marked_pair_check(fij, v_i, v_j, next(iter(fij)) if fij else (v_i[0], v_j[0]),
                                  contexts={r_k: (v_k, fik)})
        if not (flags.left_degrees_ok and flags.right_degrees_ok and flags.joint_bounded):
            failures += 1
    freq = failures / trials
    wil = _wilson_interval(failures, trials)
    bound_failure = 1 - bound
    return RegularityReport(trials, seed, freq, wil, bound, bound_failure, vacuous,
                            freq <= bound_failure, wil[0] <= bound_failure)


class SwapReport(NamedTuple):
    """Exceedance rate of the symmetric-difference threshold under a swap."""

    trials: int
    seed: int
    exceedance_frequency: float
    threshold: Fraction
    convention: float
    passes: bool
    worst_difference: int
    mean_difference: float


class SwapParams(NamedTuple):
    r_i: int
    r_j: int
    r_k: int
    f_ij: int
    f_ik: int
    f_jk: int


def _validate_swap(params: SwapParams, trials: int) -> None:
    p = params
    for label, f, cap in (("f_ij", p.f_ij, p.r_i * p.r_j),
                          ("f_ik", p.f_ik, p.r_i * p.r_k),
                          ("f_jk", p.f_jk, p.r_j * p.r_k)):
        if f < 0 or f > cap:
            raise ValidationError(f"{label} = {f} must lie in 0..{cap}")
    if min(p.r_i, p.r_j, p.r_k) < 1:
        raise ValidationError("vertex sample sizes must be positive")
    if trials < 1:
        raise ValidationError("trials must be positive")


def mc_vertex_swap(params: SwapParams, trials: int, seed: Optional[int] = None,
                   convention: float = 0.01) -> SwapReport:
    """Replace one vertex of V_i by a fresh one, transporting its pair slots.

    Every pair (u, v) of F_ij becomes (u', v) and likewise in F_ik, so the
    new triple set mirrors the old one at u'; the report counts how often
    |gamma ^ gamma'| reaches 44 f_ij f_ik f_jk / (r_i^2 r_j r_k).
    """
    params = SwapParams(*params)
    _validate_swap(params, trials)
    seed = resolve_seed(seed)
    p = params
    threshold = Fraction(44 * p.f_ij * p.f_ik * p.f_jk, p.r_i ** 2 * p.r_j * p.r_k)
    v_i = tuple(range(1, p.r_i + 1))
    v_j = tuple(range(1, p.r_j + 1))
    v_k = tuple(range(1, p.r_k + 1))
    fresh = p.r_i + 1
    exceed = 0
    worst = 0
    total = 0
    for t in range(trials):
        rng = derive_rng(seed, "vertex-swap", t)
        fij = _sample_pairs(rng, v_i, v_j, p.f_ij, "f_ij")
        fik = _sample_pairs(rng, v_i, v_k, p.f_ik, "f_ik")
        fjk = _sample_pairs(rng, v_j, v_k, p.f_jk, "f_jk")
        u = rng.choice(v_i)
        fij_new = {(fresh if a == u else a, b) for (a, b) in fij}
        fik_new = {(fresh if a == u else a, b) for (a, b) in fik}
        gamma = gamma_of(fij, fik, fjk)
        gamma_new = gamma_of(fij_new, fik_new, fjk)
        d = len(gamma ^ gamma_new)
        worst = max(worst, d)
        total += d
        if d >= threshold:
            exceed += 1
    freq = exceed / trials
    return SwapReport(trials, seed, freq, threshold, convention, freq <= convention,
                      worst, total / trials)


def mc_pair_swap(params: SwapParams, trials: int, seed: Optional[int] = None,
                 convention: float = 0.01) -> SwapReport:
    """Swap one pair of F_ij for a fresh one and track the triple-set change.

    Each trial removes a uniformly chosen (u, v) from F_ij, inserts a uniform
    (u', v') outside it, and counts how often |gamma ^ gamma'| reaches
    22 f_ik f_jk / (r_i r_j r_k).
    """
    params = SwapParams(*params)
    _validate_swap(params, trials)
    p = params
    if p.f_ij < 1:
        raise ValidationError("pair swap needs at least one pair in f_ij")
    if p.f_ij >= p.r_i * p.r_j:
        raise ValidationError("pair swap needs a spare slot outside f_ij")
    seed = resolve_seed(seed)
    threshold = Fraction(22 * p.f_ik * p.f_jk, p.r_i * p.r_j * p.r_k)
    v_i = tuple(range(1, p.r_i + 1))
    v_j = tuple(range(1, p.r_j + 1))
    v_k = tuple(range(1, p.r_k + 1))
    exceed = 0
    worst = 0
    total = 0
    for t in range(trials):
        rng = derive_rng(seed, "pair-swap", t)
        fij = _sample_pairs(rng, v_i, v_j, p.f_ij, "f_ij")
        fik = _sample_pairs(rng, v_i, v_k, p.f_ik, "f_ik")
        fjk = _sample_pairs(rng, v_j, v_k, p.f_jk, "f_jk")
        out_pair = rng.choice(sorted(fij))
        while True:
            cand = (rng.choice(v_i), rng.choice(v_j))
            if cand not in fij:
                break
        fij_new = (fij - {out_pair}) | {cand}
        gamma = gamma_of(fij, fik, fjk)
        gamma_new = gamma_of(fij_new, fik, fjk)
        d = len(gamma ^ gamma_new)
        worst = max(worst, d)
        total += d
        if d >= threshold:
            exceed += 1
    freq = exceed / trials
    return SwapReport(trials, seed, freq, threshold, convention, freq <= convention,
                      worst, total / trials)
