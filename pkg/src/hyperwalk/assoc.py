"""Ternary associativity: brute-force checks, certificates, and the reduction.

A ternary operator F on {1..n} is associative when
F(F(a,b,c),d,e) = F(a,F(b,c,d),e) = F(a,b,F(c,d,e)) for every 5-tuple.
A violation of the first equality (case i) or the second (case ii) is
witnessed by a 7-tuple fixing the two intermediate products; the reduction
re-states certificate search as finding a 7-vertex directed pattern in the
complete weighted instance whose ordered-triple weights are the table itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Tuple

from ._seeds import derive_rng, resolve_seed
from .errors import ValidationError
from .oracle import InstanceHypergraph, QueryCounter, chi
from .pattern import PatternHypergraph

CASES = ("i", "ii")


@dataclass(frozen=True)
class TernaryOperator:
    """Total map {1..n}^3 -> {1..n}, stored as a dense row-major table."""

    n: int
    table: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"domain size must be positive, got {self.n}")
        table = tuple(self.table)
        if len(table) != self.n ** 3:
            raise ValidationError(f"table has {len(table)} entries, need n^3 = {self.n ** 3}")
        for v in table:
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= self.n:
                raise ValidationError(f"table value {v!r} outside 1..{self.n}")
        object.__setattr__(self, "table", table)

    def __call__(self, a: int, b: int, c: int) -> int:
        n = self.n
        if not (1 <= a <= n and 1 <= b <= n and 1 <= c <= n):
            raise ValidationError(f"arguments ({a},{b},{c}) outside 1..{n}")
        return self.table[(a - 1) * n * n + (b - 1) * n + (c - 1)]

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[int, int, int], int]) -> "TernaryOperator":
        rng = range(1, n + 1)
        return cls(n, tuple(fn(a, b, c) for a in rng for b in rng for c in rng))

    def perturbed(self, position: Tuple[int, int, int], value: int) -> "TernaryOperator":
        a, b, c = position
        idx = (a - 1) * self.n * self.n + (b - 1) * self.n + (c - 1)
        if self.table[idx] == value:
            raise ValidationError(f"perturbation at {position} leaves the table unchanged")
        table = list(self.table)
        table[idx] = value
        return TernaryOperator(self.n, tuple(table))


def modular_sum(n: int) -> TernaryOperator:
    return TernaryOperator.from_callable(n, lambda a, b, c: (a + b + c - 3) % n + 1)


def random_operator(n: int, seed: Optional[int] = None) -> TernaryOperator:
    rng = derive_rng(resolve_seed(seed), "operator", n)
    return TernaryOperator(n, tuple(rng.randrange(1, n + 1) for _ in range(n ** 3)))


def is_associative(op: TernaryOperator):
    """True, or the lexicographically first violating 5-tuple."""
    rng = range(1, op.n + 1)
    for a, b, c, d, e in itertools.product(rng, repeat=5):
        left = op(op(a, b, c), d, e)
        mid = op(a, op(b, c, d), e)
        if left != mid or mid != op(a, b, op(c, d, e)):
            return (a, b, c, d, e)
    return True


class AssocCertificate(NamedTuple):
    """A 7-tuple witnessing one violation case through its two products."""

    case: str
    values: Tuple[int, int, int, int, int, int, int]


def _check_case(case: str) -> None:
    if case not in CASES:
        raise ValidationError(f"case must be one of {CASES}, got {case!r}")


def _complete_tuple(op_or_weights, case: str, a1, a2, a3, a4, a5):
    """The forced a6, a7 and the two final products for one 5-tuple."""
    f = op_or_weights
    if case == "i":
        a6 = f(a1, a2, a3)
        a7 = f(a2, a3, a4)
        return a6, a7, f(a6, a4, a5), f(a1, a7, a5)
    a6 = f(a2, a3, a4)
    a7 = f(a3, a4, a5)
    return a6, a7, f(a1, a6, a5), f(a1, a2, a7)


def find_certificate(op: TernaryOperator, case: str) -> Optional[AssocCertificate]:
    """Lexicographically first certificate for the given case, if any."""
    _check_case(case)
    rng = range(1, op.n + 1)
    for a1, a2, a3, a4, a5 in itertools.product(rng, repeat=5):
        a6, a7, left, right = _complete_tuple(op, case, a1, a2, a3, a4, a5)
        if left != right:
            return AssocCertificate(case, (a1, a2, a3, a4, a5, a6, a7))
    return None


def verify_certificate(op: TernaryOperator, cert: AssocCertificate) -> bool:
    """Re-derives the two products and the disequality; four table lookups."""
    _check_case(cert.case)
    a1, a2, a3, a4, a5, a6, a7 = cert.values
    b6, b7, left, right = _complete_tuple(op, cert.case, a1, a2, a3, a4, a5)
    return b6 == a6 and b7 == a7 and left != right


_ORIENTATIONS = {
    "i": ((1, 2, 3), (2, 3, 4), (6, 4, 5), (1, 7, 5)),
    "ii": ((2, 3, 4), (3, 4, 5), (1, 6, 5), (1, 2, 7)),
}


def certificate_pattern(case: str = "i") -> PatternHypergraph:
    """The 7-vertex directed pattern whose copies encode one violation case."""
    _check_case(case)
    orientations = _ORIENTATIONS[case]
    triples = tuple(tuple(sorted(t)) for t in orientations)
    return PatternHypergraph(7, triples, directed=True, orientations=orientations)


class Reduction(NamedTuple):
    """Weighted instance plus the pattern and its occurrence predicate.

    checker(values, counter) spends exactly four weight queries: two fix the
    products against vertices 6 and 7 and two feed the disequality.
    """

    instance: InstanceHypergraph
    pattern: PatternHypergraph
    checker: Callable[[Tuple[int, ...], Optional[QueryCounter]], bool]
    case: str


def build_reduction(op: TernaryOperator, case: str = "i") -> Reduction:
    """Complete weighted directed instance over the domain, one edge per query."""
    _check_case(case)
    rng = range(1, op.n + 1)
    weights = {(a, b, c): op(a, b, c) for a in rng for b in rng for c in rng}
    instance = InstanceHypergraph(op.n, frozenset(weights), directed=True, weights=weights)
    pattern = certificate_pattern(case)

    def checker(values: Tuple[int, ...], counter: Optional[QueryCounter] = None) -> bool:
        if len(values) != 7:
            raise ValidationError(f"need 7 vertices, got {len(values)}")
        a1, a2, a3, a4, a5, a6, a7 = values
        q = lambda a, b, c: chi(instance, (a, b, c), counter)
        b6, b7, left, right = _complete_tuple(q, case, a1, a2, a3, a4, a5)
        return b6 == a6 and b7 == a7 and left != right

    return Reduction(instance, pattern, checker, case)


def find_h7_occurrence(reduction: Reduction,
                       counter: Optional[QueryCounter] = None) -> Optional[Tuple[int, ...]]:
    """First 7-tuple of instance vertices accepted by the reduction's checker.

    The scan runs over all 5-tuples and forces the two product vertices from
    the instance weights, so repeats among the seven are allowed.
    """
    inst = reduction.instance
    rng = range(1, inst.n + 1)
    q = lambda a, b, c: chi(inst, (a, b, c), counter)
    for a1, a2, a3, a4, a5 in itertools.product(rng, repeat=5):
        a6, a7, left, right = _complete_tuple(q, reduction.case, a1, a2, a3, a4, a5)
        if left != right:
            return (a1, a2, a3, a4, a5, a6, a7)
    return None
