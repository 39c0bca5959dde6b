"""Instance generation, the query-counting membership oracle, and brute force.

The finder here is classical ground truth for soundness and completeness
checks; its query counter doubles as the contrast figure against the
optimized exponents (reporting only, nothing quantum runs here).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from ._seeds import derive_rng, resolve_seed
from .errors import ValidationError
from .pattern import PatternHypergraph

Triple = Tuple[int, int, int]


def _canonical_instance_triple(triple: Iterable[int], n: int, directed: bool) -> Triple:
    t = tuple(triple)
    if len(t) != 3:
        raise ValidationError(f"hyperedge {t!r} is not a triple")
    for v in t:
        if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
            raise ValidationError(f"vertex {v!r} outside 1..{n}")
    if directed:
        return t
    if len(set(t)) != 3:
        raise ValidationError(f"undirected hyperedge {t!r} repeats a vertex")
    return tuple(sorted(t))


@dataclass(frozen=True)
class InstanceHypergraph:
    """A concrete n-vertex input.

    Undirected instances store sorted vertex triples; directed ones keep the
    given order and may repeat vertices (the operator-table reduction queries
    arbitrary ordered triples).  weights, when present, must label every
    stored hyperedge.
    """

    n: int
    hyperedges: FrozenSet[Triple]
    directed: bool = False
    weights: Optional[Mapping[Triple, int]] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"instance needs n >= 1, got {self.n}")
        canon = frozenset(_canonical_instance_triple(t, self.n, self.directed)
                          for t in self.hyperedges)
        object.__setattr__(self, "hyperedges", canon)
        if self.weights is not None:
            w = {}
            for t, label in self.weights.items():
                key = _canonical_instance_triple(t, self.n, self.directed)
                if key not in canon:
                    raise ValidationError(f"weight on non-hyperedge {key}")
                w[key] = label
            missing = canon - w.keys()
            if missing:
                raise ValidationError(f"{len(missing)} hyperedges lack weights")
            object.__setattr__(self, "weights", w)

    @property
    def weighted(self) -> bool:
        return self.weights is not None


@dataclass
class QueryCounter:
    """Counts oracle calls: total, and distinct by queried triple."""

    total: int = 0
    _seen: set = field(default_factory=set)

    @property
    def distinct(self) -> int:
        return len(self._seen)

    def record(self, key: Triple) -> None:
        self.total += 1
        self._seen.add(key)

    def merge(self, other: "QueryCounter") -> None:
        self.total += other.total
        self._seen |= other._seen


def chi(instance: InstanceHypergraph, triple: Iterable[int],
        counter: Optional[QueryCounter] = None):
    """Membership answer for one triple; the weight label when weighted."""
    key = _canonical_instance_triple(triple, instance.n, instance.directed)
    if counter is not None:
        counter.record(key)
    if instance.weighted:
        return instance.weights.get(key)
    return key in instance.hyperedges


def plant_pattern(n: int, pattern: PatternHypergraph, density: float,
                  seed: Optional[int] = None) -> Tuple[InstanceHypergraph, Dict[int, int]]:
    """Random background at the given density plus one planted pattern copy.

    Returns the instance and the embedding used for the plant (pattern vertex
    to instance vertex).  Directed patterns yield directed instances whose
    background ranges over ordered distinct-vertex triples.
    """
    if n < pattern.kappa:
        raise ValidationError(f"n = {n} below pattern size {pattern.kappa}")
    if not 0 <= density <= 1:
        raise ValidationError(f"density {density} outside [0, 1]")
    rng = derive_rng(resolve_seed(seed), "plant", n, repr(density))
    image = rng.sample(range(1, n + 1), pattern.kappa)
    embedding = {i + 1: image[i] for i in range(pattern.kappa)}
    edges = set()
    if pattern.directed:
        candidates = itertools.permutations(range(1, n + 1), 3)
    else:
        candidates = itertools.combinations(range(1, n + 1), 3)
    for t in candidates:
        if density == 1 or (density > 0 and rng.random() < density):
            edges.add(t)
    for t in pattern.triples:
        oriented = pattern.orientation_of(t) if pattern.directed else t
        img = tuple(embedding[v] for v in oriented)
        edges.add(img if pattern.directed else tuple(sorted(img)))
    inst = InstanceHypergraph(n, frozenset(edges), directed=pattern.directed)
    return inst, embedding


def _pattern_automorphisms_local(pattern: PatternHypergraph) -> List[Tuple[int, ...]]:
    """Vertex permutations preserving triples, and orientations when directed."""
    verts = list(range(1, pattern.kappa + 1))
    triples = set(pattern.triples)
    autos = []
    for perm in itertools.permutations(verts):
        relabel = {v: perm[v - 1] for v in verts}
        ok = True
        for t in triples:
            img = tuple(sorted(relabel[v] for v in t))
            if img not in triples:
                ok = False
                break
            if pattern.directed:
                src = pattern.orientation_of(t)
                if tuple(relabel[v] for v in src) != pattern.orientation_of(img):
                    ok = False
                    break
        if ok:
            autos.append(perm)
    return autos


def _least_representative(pattern: PatternHypergraph, phi: Dict[int, int]) -> Dict[int, int]:
    best = None
    for perm in _pattern_automorphisms_local(pattern):
        cand = tuple(phi[perm[v - 1]] for v in range(1, pattern.kappa + 1))
        if best is None or cand < best:
            best = cand
    return {v: best[v - 1] for v in range(1, pattern.kappa + 1)}


def find_subhypergraph(instance: InstanceHypergraph, pattern: PatternHypergraph,
                       counter: Optional[QueryCounter] = None) -> Optional[Dict[int, int]]:
    """Backtracking injective search for a pattern copy.

    Pattern vertices are assigned most-constrained first (descending triple
    degree); each assignment immediately queries every newly completed
    triple.  The returned embedding is the lexicographically least member of
    its automorphism orbit, or None when no copy exists.
    """
    if instance.weighted:
        raise ValidationError("weighted instances need a predicate search, not membership")
    if instance.directed != pattern.directed:
        raise ValidationError("instance and pattern orientation modes differ")
    kappa = pattern.kappa
    degree = {v: 0 for v in range(1, kappa + 1)}
    for t in pattern.triples:
        for v in t:
            degree[v] += 1
    order = sorted(degree, key=lambda v: (-degree[v], v))
    rank = {v: i for i, v in enumerate(order)}
    checks_at: List[List[Triple]] = [[] for _ in range(kappa)]
    for t in pattern.triples:
        checks_at[max(rank[v] for v in t)].append(t)
    phi: Dict[int, int] = {}
    used = [False] * (instance.n + 1)

    def probe(t: Triple) -> bool:
        src = pattern.orientation_of(t) if pattern.directed else t
        img = tuple(phi[v] for v in src)
        return bool(chi(instance, img, counter))

    def extend(depth: int) -> bool:
        if depth == kappa:
            return True
        v = order[depth]
        for cand in range(1, instance.n + 1):
            if used[cand]:
                continue
            phi[v] = cand
            used[cand] = True
            if all(probe(t) for t in checks_at[depth]) and extend(depth + 1):
                return True
            used[cand] = False
            del phi[v]
        return False

    if extend(0):
        return _least_representative(pattern, dict(phi))
    return None
