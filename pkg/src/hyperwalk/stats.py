"""Exact hypergeometric distribution and certified tail-bound checks.

Probabilities are exact rationals built from binomial coefficients.  The
three tail bounds are transcendental, so comparisons go through outward
rounded interval arithmetic: a bound counts as verified only when the exact
tail is at most the interval's lower end, and as violated only when it
exceeds the upper end, escalating precision until one side is certain.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, floor
from typing import Dict, NamedTuple, Sequence, Tuple

import mpmath

from .errors import HyperwalkError, ValidationError


class HGParams(NamedTuple):
    """Population N with m marked elements, draws of size r."""

    N: int
    m: int
    r: int


def _validate(p: HGParams) -> None:
    if p.N < 0 or p.m < 0 or p.r < 0:
        raise ValidationError(f"negative hypergeometric parameter in {p}")
    if p.m > p.N or p.r > p.N:
        raise ValidationError(f"need m <= N and r <= N, got {p}")


def hg_pmf(p: HGParams, j: int) -> Fraction:
    """Probability of exactly j marked among the r draws."""
    _validate(p)
    if j < 0 or j > p.r:
        raise ValidationError(f"support is 0..{p.r}, got {j}")
    num = comb(p.m, j) * comb(p.N - p.m, p.r - j)
    return Fraction(num, comb(p.N, p.r))


def hg_mean(p: HGParams) -> Fraction:
    _validate(p)
    if p.N == 0:
        return Fraction(0)
    return Fraction(p.r * p.m, p.N)


def hg_tail_ge(p: HGParams, k: int) -> Fraction:
    """P[X >= k], exact."""
    _validate(p)
    lo = max(k, 0)
    num = sum(comb(p.m, j) * comb(p.N - p.m, p.r - j) for j in range(lo, p.r + 1))
    return Fraction(num, comb(p.N, p.r))


def hg_tail_le(p: HGParams, k: int) -> Fraction:
    """P[X <= k], exact."""
    _validate(p)
    hi = min(k, p.r)
    if hi < 0:
        return Fraction(0)
    num = sum(comb(p.m, j) * comb(p.N - p.m, p.r - j) for j in range(0, hi + 1))
    return Fraction(num, comb(p.N, p.r))


def hg_sample(p: HGParams, rng) -> int:
    """One draw by partial shuffle: r distinct positions, successes below m."""
    _validate(p)
    overlay: Dict[int, int] = {}
    hits = 0
    for step in range(p.r):
        idx = rng.randrange(step, p.N)
        val = overlay.get(idx, idx)
        overlay[idx] = overlay.get(step, step)
        overlay[step] = val
        if val < p.m:
            hits += 1
    return hits


# ----------------------------------------------------------------------
# tail bounds
# ----------------------------------------------------------------------

BOUND_KINDS = ("upper", "lower", "upper_large")


def _mpf_to_fraction(x) -> Fraction:
    if mpmath.isnan(x) or mpmath.isinf(x):
        raise HyperwalkError(f"non-finite interval endpoint {x}")
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    val = Fraction(man, 1)
    val = val * Fraction(2) ** exp
    return -val if sign else val


def _iv_rational(q: Fraction):
    """Enclosing interval of a rational under the current precision."""
    return mpmath.iv.mpf(q.numerator) / mpmath.iv.mpf(q.denominator)


def _bound_interval(kind: str, p: HGParams, delta: Fraction, prec: int) -> Tuple[Fraction, Fraction]:
    mu = hg_mean(p)
    with mpmath.workprec(prec):
        if kind == "upper":
            iv = mpmath.iv.exp(_iv_rational(-mu * delta * delta / 3))
        elif kind == "lower":
            iv = mpmath.iv.exp(_iv_rational(-mu * delta * delta / 2))
        else:
            # (1/2)^((1+delta) mu) = exp(-(1+delta) mu ln 2)
            ln2 = mpmath.iv.log(mpmath.iv.mpf(2))
            iv = mpmath.iv.exp(-_iv_rational((1 + delta) * mu) * ln2)
    return _mpf_to_fraction(iv.a), _mpf_to_fraction(iv.b)


def _check_delta_domain(kind: str, delta: Fraction) -> None:
    if kind == "upper":
        if not 0 < delta <= 1:
            raise ValidationError(f"upper bound needs 0 < delta <= 1, got {delta}")
    elif kind == "lower":
        if not 0 < delta < 1:
            raise ValidationError(f"lower bound needs 0 < delta < 1, got {delta}")
    elif kind == "upper_large":
        # threshold 2e - 1 is irrational; demand delta above a certified cover
        with mpmath.workprec(80):
            cover = mpmath.iv.mpf(2) * mpmath.iv.exp(mpmath.iv.mpf(1)) - 1
        if not delta > _mpf_to_fraction(cover.b):
            raise ValidationError(f"large-deviation bound needs delta > 2e-1, got {delta}")
    else:
        raise ValidationError(f"unknown bound kind {kind!r}")


def tail_event_probability(kind: str, p: HGParams, delta: Fraction) -> Fraction:
    """Exact probability of the deviation event each bound controls."""
    mu = hg_mean(p)
    if kind == "upper":
        return hg_tail_ge(p, ceil((1 + delta) * mu))
    if kind == "lower":
        return hg_tail_le(p, floor((1 - delta) * mu))
    return hg_tail_ge(p, floor((1 + delta) * mu) + 1)


class BoundCheck(NamedTuple):
    params: HGParams
    kind: str
    delta: Fraction
    tail: Fraction
    bound_low: Fraction
    bound_high: Fraction
    holds: bool


def check_tail_bound(kind: str, p: HGParams, delta,
                     start_prec: int = 100, max_prec: int = 2000) -> BoundCheck:
    """Certified comparison of the exact tail against one bound."""
    delta = Fraction(delta)
    _check_delta_domain(kind, delta)
    tail = tail_event_probability(kind, p, delta)
    prec = start_prec
    while True:
        lo, hi = _bound_interval(kind, p, delta, prec)
        if tail <= lo:
            return BoundCheck(p, kind, delta, tail, lo, hi, True)
        if tail > hi:
            return BoundCheck(p, kind, delta, tail, lo, hi, False)
        prec *= 2
        if prec > max_prec:
            raise HyperwalkError(f"cannot separate tail from bound at {p}, {kind}, delta={delta}")


@dataclass(frozen=True)
class TailBoundReport:
    max_n: int
    deltas_upper: Tuple[Fraction, ...]
    deltas_lower: Tuple[Fraction, ...]
    deltas_large: Tuple[Fraction, ...]
    points: int
    checks: int
    violations: Tuple[BoundCheck, ...]
    elapsed_seconds: float

    @property
    def holds(self) -> bool:
        return not self.violations


def verify_tail_bounds(max_n: int = 60,
                       deltas_upper: Sequence = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)),
                       deltas_lower: Sequence = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)),
                       deltas_large: Sequence = (Fraction(5), Fraction(6), Fraction(8)),
                       progress=None) -> TailBoundReport:
    """Sweep every population of size at most max_n against all three bounds.

    The exact deviation probability is compared against the outward-rounded
    bound at every (N, m, r) and every configured delta; enclosures are cached
    per exponent since distinct parameter points share bound values.
    """
    du = tuple(Fraction(d) for d in deltas_upper)
    dl = tuple(Fraction(d) for d in deltas_lower)
    dg = tuple(Fraction(d) for d in deltas_large)
    for d in du:
        _check_delta_domain("upper", d)
    for d in dl:
        _check_delta_domain("lower", d)
    for d in dg:
        _check_delta_domain("upper_large", d)

    cache: Dict[Tuple[str, Fraction], Tuple[Fraction, Fraction]] = {}

    def enclosure(kind: str, p: HGParams, delta: Fraction, prec: int):
        mu = hg_mean(p)
        if kind == "upper":
            key = ("exp", -mu * delta * delta / 3)
        elif kind == "lower":
            key = ("exp", -mu * delta * delta / 2)
        else:
            key = ("pow2", (1 + delta) * mu)
        got = cache.get(key) if prec == 100 else None
        if got is None:
            got = _bound_interval(kind, p, delta, prec)
            if prec == 100:
                cache[key] = got
        return got

    t0 = time.perf_counter()
    points = 0
    checks = 0
    violations = []
    for N in range(1, max_n + 1):
        for m in range(0, N + 1):
            for r in range(0, N + 1):
                p = HGParams(N, m, r)
                points += 1
                for kind, deltas in (("upper", du), ("lower", dl), ("upper_large", dg)):
                    for delta in deltas:
                        tail = tail_event_probability(kind, p, delta)
                        prec = 100
                        while True:
                            lo, hi = enclosure(kind, p, delta, prec)
                            if tail <= lo:
                                holds = True
                                break
                            if tail > hi:
                                holds = False
                                break
                            prec *= 2
                            if prec > 2000:
                                raise HyperwalkError(f"cannot separate tail from bound at {p}")
                        checks += 1
                        if not holds:
                            violations.append(BoundCheck(p, kind, delta, tail, lo, hi, False))
        if progress is not None:
            progress(N, checks, len(violations))
    return TailBoundReport(max_n, du, dl, dg, points, checks, tuple(violations),
                           time.perf_counter() - t0)
