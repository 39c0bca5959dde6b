"""Enumeration and counting of complete loading schedules.

Complete schedules are exactly the linear extensions of the containment
order on vertices, derived pairs and triples, so counting runs as a dynamic
program over downsets while enumeration streams extensions in lexicographic
order.  No symmetry reduction happens here; callers that want to exploit
pattern automorphisms do so on top of the raw stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

from ._seeds import derive_rng, resolve_seed
from .errors import IsolatedVertexError, ValidationError
from .pattern import (LoadingSchedule, PatternHypergraph, ScheduleElement,
                      derive_sigma2, make_element, PAIR, TRIPLE, VERTEX)


@dataclass(frozen=True)
class EnumerationConfig:
    """Knobs for schedule generation.

    mode: "exhaustive" streams every complete schedule, "count" only counts,
    "heuristic" streams seeded random complete schedules.
    budget: maximum number of schedules a heuristic stream yields.
    seed: master seed; None picks the environment override or the default.
    """

    mode: str = "exhaustive"
    budget: int = 1000
    seed: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ("exhaustive", "count", "heuristic"):
            raise ValidationError(f"unknown enumeration mode {self.mode!r}")
        if self.budget < 1:
            raise ValidationError("budget must be at least 1")


def poset_elements(pattern: PatternHypergraph) -> Tuple[List[ScheduleElement], List[int]]:
    """Element list in canonical order plus one prerequisite bitmask each.

    Raises IsolatedVertexError when some vertex lies in no triple, since no
    complete schedule can exist then.
    """
    covered = {v for t in pattern.triples for v in t}
    for v in range(1, pattern.kappa + 1):
        if v not in covered:
            raise IsolatedVertexError(f"vertex {v} lies in no triple")
    elements: List[ScheduleElement] = [make_element(VERTEX, (v,)) for v in range(1, pattern.kappa + 1)]
    elements += [make_element(PAIR, p) for p in derive_sigma2(pattern)]
    elements += [make_element(TRIPLE, t) for t in pattern.triples]
    index = {el: i for i, el in enumerate(elements)}
    masks = []
    for el in elements:
        if el.kind == VERTEX:
            masks.append(0)
        elif el.kind == PAIR:
            masks.append(sum(1 << index[make_element(VERTEX, (v,))] for v in el.verts))
        else:
            masks.append(sum(1 << index[make_element(PAIR, p)] for p in combinations(el.verts, 2)))
    return elements, masks


def count_complete_schedules(pattern: PatternHypergraph) -> int:
    """Number of complete schedules, by dynamic programming over downsets."""
    _, masks = poset_elements(pattern)
    m = len(masks)
    layer = {0: 1}
    for _ in range(m):
        nxt = {}
        for done, ways in layer.items():
            for i in range(m):
                bit = 1 << i
                if not done & bit and masks[i] & done == masks[i]:
                    key = done | bit
                    nxt[key] = nxt.get(key, 0) + ways
        layer = nxt
    return layer.get((1 << m) - 1, 0)


def enumerate_complete_schedules(pattern: PatternHypergraph) -> Iterator[LoadingSchedule]:
    """Stream every complete schedule in lexicographic element order."""
    elements, masks = poset_elements(pattern)
    m = len(masks)
    full = (1 << m) - 1
    chosen: List[int] = []

    def extend(done: int) -> Iterator[LoadingSchedule]:
        if done == full:
            yield tuple(elements[i] for i in chosen)
            return
        for i in range(m):
            bit = 1 << i
            if not done & bit and masks[i] & done == masks[i]:
                chosen.append(i)
                yield from extend(done | bit)
                chosen.pop()

    return extend(0)


def random_complete_schedule(pattern_data, rng) -> Tuple[int, ...]:
    """One uniform-ish random linear extension, as a tuple of element indices.

    Each step picks uniformly among the currently loadable elements; this is
    not the uniform distribution on extensions, but it reaches all of them.
    """
    elements, masks = pattern_data
    m = len(masks)
    done = 0
    out = []
    for _ in range(m):
        avail = [i for i in range(m) if not done & (1 << i) and masks[i] & done == masks[i]]
        pick = avail[rng.randrange(len(avail))]
        out.append(pick)
        done |= 1 << pick
    return tuple(out)


def heuristic_schedules(pattern: PatternHypergraph, budget: int = 1000,
                        seed: Optional[int] = None) -> Iterator[LoadingSchedule]:
    """Stream up to ``budget`` distinct random complete schedules, seeded."""
    data = poset_elements(pattern)
    elements = data[0]
    rng = derive_rng(resolve_seed(seed), "schedule-heuristic")
    seen = set()
    attempts = 0
    cap = 50 * budget
    while len(seen) < budget and attempts < cap:
        attempts += 1
        order = random_complete_schedule(data, rng)
        if order not in seen:
            seen.add(order)
            yield tuple(elements[i] for i in order)


def schedules_stream(pattern: PatternHypergraph,
                     config: Optional[EnumerationConfig] = None) -> Iterator[LoadingSchedule]:
    """Dispatch on the configured mode; "count" mode is not a stream."""
    config = config or EnumerationConfig()
    if config.mode == "exhaustive":
        return enumerate_complete_schedules(pattern)
    if config.mode == "heuristic":
        return heuristic_schedules(pattern, config.budget, config.seed)
    raise ValidationError("count mode has no schedule stream; call count_complete_schedules")


def neighbor_schedules(pattern: PatternHypergraph, schedule: Sequence[ScheduleElement]) -> Iterator[LoadingSchedule]:
    """All valid schedules one adjacent transposition away, in position order."""
    from .pattern import is_valid_schedule
    sched = list(schedule)
    for i in range(len(sched) - 1):
        sched[i], sched[i + 1] = sched[i + 1], sched[i]
        candidate = tuple(sched)
        if is_valid_schedule(pattern, candidate).ok:
            yield candidate
        sched[i], sched[i + 1] = sched[i + 1], sched[i]
