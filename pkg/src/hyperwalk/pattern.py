"""Small 3-uniform patterns and the loading schedules that assemble them.

A pattern is a 3-uniform hypergraph on vertices 1..kappa.  Loading schedules
list vertices, derived pairs and triples in an order that only ever loads an
object after everything it contains, ending with every triple present.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Optional, Sequence, Tuple

from .errors import ValidationError

VERTEX = "vertex"
PAIR = "pair"
TRIPLE = "triple"

_KIND_RANK = {VERTEX: 0, PAIR: 1, TRIPLE: 2}
_KIND_SIZE = {VERTEX: 1, PAIR: 2, TRIPLE: 3}


class ScheduleElement(NamedTuple):
    """One entry of a loading schedule: a vertex, a pair, or a triple.

    ``verts`` is a strictly increasing tuple of 1, 2 or 3 vertex labels.
    """

    kind: str
    verts: Tuple[int, ...]

    @property
    def sort_key(self):
        return (_KIND_RANK[self.kind], self.verts)

    def __str__(self):
        sep = "-" if any(v > 9 for v in self.verts) else ""
        return self.kind[0] + sep.join(str(v) for v in self.verts)


def _canonical_verts(kind: str, verts: Sequence[int]) -> Tuple[int, ...]:
    vs = tuple(sorted(verts))
    if len(vs) != _KIND_SIZE[kind] or len(set(vs)) != len(vs):
        raise ValidationError(f"{kind} needs {_KIND_SIZE[kind]} distinct vertices, got {tuple(verts)}")
    if any(not isinstance(v, int) or v < 1 for v in vs):
        raise ValidationError(f"vertex labels must be positive integers, got {tuple(verts)}")
    return vs


def vertex_element(i: int) -> ScheduleElement:
    return ScheduleElement(VERTEX, _canonical_verts(VERTEX, (i,)))


def pair_element(i: int, j: int) -> ScheduleElement:
    return ScheduleElement(PAIR, _canonical_verts(PAIR, (i, j)))


def triple_element(i: int, j: int, k: int) -> ScheduleElement:
    return ScheduleElement(TRIPLE, _canonical_verts(TRIPLE, (i, j, k)))


def make_element(kind: str, verts: Sequence[int]) -> ScheduleElement:
    if kind not in _KIND_SIZE:
        raise ValidationError(f"unknown schedule element kind {kind!r}")
    return ScheduleElement(kind, _canonical_verts(kind, verts))


LoadingSchedule = Tuple[ScheduleElement, ...]


@dataclass(frozen=True)
class PatternHypergraph:
    """3-uniform pattern on vertices 1..kappa.

    ``triples`` holds each hyperedge as a sorted vertex tuple.  When
    ``directed`` is set, ``orientations`` carries one ordered reading per
    triple; only oracle queries consult it, everything combinatorial works on
    the unordered triples.
    """

    kappa: int
    triples: Tuple[Tuple[int, int, int], ...]
    directed: bool = False
    orientations: Optional[Tuple[Tuple[int, int, int], ...]] = None

    def __post_init__(self):
        if not isinstance(self.kappa, int) or self.kappa < 1:
            raise ValidationError(f"kappa must be a positive integer, got {self.kappa!r}")
        seen = set()
        canon = []
        for t in self.triples:
            ts = tuple(sorted(t))
            if len(ts) != 3 or len(set(ts)) != 3:
                raise ValidationError(f"triple {t!r} must have three distinct vertices")
            if any(v < 1 or v > self.kappa for v in ts):
                raise ValidationError(f"triple {t!r} out of range 1..{self.kappa}")
            if ts in seen:
                raise ValidationError(f"duplicate triple {ts!r}")
            seen.add(ts)
            canon.append(ts)
        object.__setattr__(self, "triples", tuple(sorted(canon)))
        if self.directed:
            if self.orientations is None:
                raise ValidationError("directed pattern needs one orientation per triple")
            omap = {}
            for o in self.orientations:
                ot = tuple(o)
                key = tuple(sorted(ot))
                if key not in seen:
                    raise ValidationError(f"orientation {ot!r} does not match any triple")
                if key in omap:
                    raise ValidationError(f"duplicate orientation for triple {key!r}")
                omap[key] = ot
            if len(omap) != len(self.triples):
                raise ValidationError("directed pattern needs one orientation per triple")
            object.__setattr__(self, "orientations", tuple(omap[t] for t in self.triples))
        elif self.orientations is not None:
            raise ValidationError("orientations supplied but pattern not directed")

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(range(1, self.kappa + 1))

    @property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return derive_sigma2(self)

    def orientation_of(self, triple: Tuple[int, int, int]) -> Tuple[int, int, int]:
        if not self.directed:
            return tuple(sorted(triple))
        return self.orientations[self.triples.index(tuple(sorted(triple)))]


def derive_sigma2(pattern: PatternHypergraph) -> Tuple[Tuple[int, int], ...]:
    """Pairs contained in at least one triple of the pattern, sorted."""
    found = {p for t in pattern.triples for p in combinations(t, 2)}
    return tuple(sorted(found))


def complete_pattern(kappa: int) -> PatternHypergraph:
    """Pattern holding every triple on 1..kappa."""
    return PatternHypergraph(kappa, tuple(combinations(range(1, kappa + 1), 3)))


def single_triple_pattern() -> PatternHypergraph:
    return PatternHypergraph(3, ((1, 2, 3),))


class ValidityReport(NamedTuple):
    """Outcome of a schedule well-formedness check.

    ``clause`` names the first violated rule (i..v) or is None when valid:
    i   every element is a known vertex, derived pair, or triple
    ii  a pair appears only after both endpoints
    iii a triple appears only after its three pairs
    iv  no element repeats
    v   every triple of the pattern appears
    """

    ok: bool
    clause: Optional[str]
    position: Optional[int]
    message: str


def is_valid_schedule(pattern: PatternHypergraph, schedule: Sequence[ScheduleElement]) -> ValidityReport:
    """Check the well-formedness clauses, reporting the first violation."""
    universe_pairs = set(derive_sigma2(pattern))
    universe_triples = set(pattern.triples)
    loaded = set()
    for pos, el in enumerate(schedule):
        if el.kind == VERTEX:
            known = 1 <= el.verts[0] <= pattern.kappa
        elif el.kind == PAIR:
            known = el.verts in universe_pairs
        elif el.kind == TRIPLE:
            known = el.verts in universe_triples
        else:
            known = False
        if not known:
            return ValidityReport(False, "i", pos, f"element {el} at position {pos} is not part of the pattern")
        if el.kind == PAIR:
            missing = [v for v in el.verts if (VERTEX, (v,)) not in loaded]
            if missing:
                return ValidityReport(False, "ii", pos, f"pair {el} at position {pos} precedes vertex {missing[0]}")
        if el.kind == TRIPLE:
            for p in combinations(el.verts, 2):
                if (PAIR, p) not in loaded:
                    return ValidityReport(False, "iii", pos,
                                          f"triple {el} at position {pos} precedes pair {make_element(PAIR, p)}")
        if tuple(el) in loaded:
            return ValidityReport(False, "iv", pos, f"element {el} repeats at position {pos}")
        loaded.add(tuple(el))
    for t in pattern.triples:
        if (TRIPLE, t) not in loaded:
            return ValidityReport(False, "v", len(schedule), f"triple {make_element(TRIPLE, t)} never appears")
    return ValidityReport(True, None, None, "schedule is well formed and complete")
