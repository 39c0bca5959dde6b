"""Command-line surface: file formats, report emission, and dispatch.

Exact rationals travel as "p/q" strings so reports round-trip losslessly;
floats are rounded to six significant digits.  Reports are emitted with
sorted keys and no timing fields, so identical (config, seed) runs are
byte-identical.  --jobs is accepted for interface stability but execution
is sequential; per-trial RNG streams make the results independent of any
worker count anyway.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import click

from ._seeds import DEFAULT_SEED, resolve_seed
from .assoc import (build_reduction, certificate_pattern, find_certificate,
                    is_associative, TernaryOperator, verify_certificate)
from .complexity_model import (check_admissibility, check_parameter_keys, cost_exponent,
                               ParameterExponents, PRODUCT_INDEXINGS)
from .errors import HyperwalkError, ParseError, ValidationError
from .lp_solver import optimize_over_schedules
from .oracle import find_subhypergraph, InstanceHypergraph, QueryCounter
from .pattern import (LoadingSchedule, make_element, PAIR, PatternHypergraph,
                      ScheduleElement, TRIPLE, VERTEX)
from .schedule_enum import count_complete_schedules, EnumerationConfig, schedules_stream
from .stats import verify_tail_bounds
from .walk_sim import (check_claim_lambda, mc_lemma3, mc_pair_swap, mc_regularity,
                       mc_vertex_swap, SwapParams, TripleUniverse)
from ._seeds import derive_rng


# ----------------------------------------------------------------------
# rationals and element tokens
# ----------------------------------------------------------------------


def format_rational(value) -> str:
    q = Fraction(value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return Fraction(text)
        raise ParseError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def parse_element_token(token: str) -> ScheduleElement:
    if not isinstance(token, str) or len(token) < 2 or token[0] not in "vpt":
        raise ParseError(f"bad schedule token {token!r}")
    body = token[1:]
    if "-" in body:
        parts = body.split("-")
    else:
        parts = list(body)
    try:
        verts = tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(f"bad schedule token {token!r}") from None
    kind = {"v": VERTEX, "p": PAIR, "t": TRIPLE}[token[0]]
    want = {"v": 1, "p": 2, "t": 3}[token[0]]
    if len(verts) != want:
        raise ParseError(f"token {token!r} needs {want} vertex indices")
    return make_element(kind, verts)


def schedule_tokens(schedule: Sequence[ScheduleElement]) -> List[str]:
    return [str(e) for e in schedule]


def _sig6(value: float) -> float:
    return float(f"{value:.6g}")


# ----------------------------------------------------------------------
# file parsing
# ----------------------------------------------------------------------


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise ParseError(f"{path}: missing field {key!r}")
    return obj[key]


def parse_pattern(path: str) -> PatternHypergraph:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: pattern file must hold an object")
    kappa = _require(data, "kappa", path)
    triples = [tuple(t) for t in _require(data, "triples", path)]
    directed = bool(data.get("directed", False))
    orientations = data.get("orientations")
    if orientations is not None:
        orientations = tuple(tuple(t) for t in orientations)
    return PatternHypergraph(kappa, tuple(triples), directed=directed,
                             orientations=orientations)


def parse_schedule(path: str) -> LoadingSchedule:
    data = _load_json(path)
    if isinstance(data, dict):
        data = _require(data, "schedule", path)
    if not isinstance(data, list):
        raise ParseError(f"{path}: schedule file must hold a token list")
    return tuple(parse_element_token(t) for t in data)


def _parse_key(text: str, arity: int, path: str) -> Tuple[int, ...]:
    try:
        verts = tuple(int(p) for p in str(text).split(","))
    except ValueError:
        raise ParseError(f"{path}: bad key {text!r}") from None
    if len(verts) != arity:
        raise ParseError(f"{path}: key {text!r} needs {arity} indices")
    return verts


def parse_params(path: str, pattern: Optional[PatternHypergraph] = None) -> ParameterExponents:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: params file must hold an object")
    x = {_parse_key(k, 1, path)[0]: parse_rational(v)
         for k, v in _require(data, "x", path).items()}
    y = {_parse_key(k, 2, path): parse_rational(v)
         for k, v in _require(data, "y", path).items()}
    z = {_parse_key(k, 3, path): parse_rational(v)
         for k, v in _require(data, "z", path).items()}
    params = ParameterExponents(x=x, y=y, z=z)
    if pattern is not None:
        check_parameter_keys(pattern, params)
    return params


def params_payload(params: ParameterExponents) -> Dict[str, Dict[str, str]]:
    return {
        "x": {str(i): format_rational(v) for i, v in sorted(params.x.items())},
        "y": {",".join(map(str, k)): format_rational(v) for k, v in sorted(params.y.items())},
        "z": {",".join(map(str, k)): format_rational(v) for k, v in sorted(params.z.items())},
    }


def parse_instance(path: str) -> InstanceHypergraph:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: instance file must hold an object")
    n = _require(data, "n", path)
    edges = [tuple(t) for t in _require(data, "hyperedges", path)]
    directed = bool(data.get("directed", False))
    weights = data.get("weights")
    if weights is not None:
        weights = {_parse_key(k, 3, path): v for k, v in weights.items()}
    return InstanceHypergraph(n, frozenset(edges), directed=directed, weights=weights)


def parse_operator(path: str) -> TernaryOperator:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: operator file must hold an object")
    n = _require(data, "n", path)
    table = _require(data, "table", path)
    if not isinstance(table, list):
        raise ParseError(f"{path}: table must be a dense list of n^3 values")
    return TernaryOperator(n, tuple(table))


# ----------------------------------------------------------------------
# dispatch
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation: the command name plus its flag values."""

    command: str
    options: Dict[str, Any]


def _report(config: RunConfig, body: Dict[str, Any]) -> Dict[str, Any]:
    out = {"command": config.command}
    out.update(body)
    return out


def _run_schedules(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    opt = config.options
    pattern = parse_pattern(opt["pattern"])
    if opt["count_only"]:
        return _report(config, {"count": count_complete_schedules(pattern)}), 0
    cfg = EnumerationConfig(mode=opt["mode"], budget=opt["budget"], seed=opt["seed"])
    limit = opt["limit"]
    listed = []
    for sched in schedules_stream(pattern, cfg):
        listed.append(schedule_tokens(sched))
        if len(listed) >= limit:
            break
    return _report(config, {"count": count_complete_schedules(pattern),
                            "listed": len(listed), "schedules": listed}), 0


def _run_optimize(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    opt = config.options
    pattern = parse_pattern(opt["pattern"])
    mode = "exhaustive" if opt["exhaustive"] else opt["mode"]
    seeds = [parse_schedule(p) for p in opt["seed_schedule"]]
    cfg = EnumerationConfig(mode="count" if mode == "exhaustive" else "heuristic",
                            budget=opt["budget"], seed=opt["seed"])
    result = optimize_over_schedules(pattern, mode=mode, config=cfg,
                                     product_indexing=opt["product_indexing"],
                                     seed_schedules=seeds,
                                     descent_rounds=opt["descent_rounds"])
    body = {
        "exponent": format_rational(result.best),
        "mode": result.mode,
        "product_indexing": result.product_indexing,
        "schedules_visited": result.schedules_visited,
        "lp_solves": result.lp_solves,
        "argmin_count": result.argmin_count,
        "witness_schedule": schedule_tokens(result.witness_schedule),
        "witness_params": params_payload(result.witness_params),
    }
    return _report(config, body), 0


def _admissibility_payload(report) -> Dict[str, Any]:
    return {
        "strict_ok": report.strict_ok,
        "nonstrict_ok": report.nonstrict_ok,
        "relax_vertex": report.relax_vertex,
        "failing": [{"condition": s.condition, "slack": format_rational(s.slack),
                     "strict": s.strict} for s in report.failing()],
    }


def _run_evaluate(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    opt = config.options
    pattern = parse_pattern(opt["pattern"])
    schedule = parse_schedule(opt["schedule"])
    params = parse_params(opt["params"], pattern)
    cost = cost_exponent(pattern, schedule, params,
                         product_indexing=opt["product_indexing"])
    adm = check_admissibility(pattern, params, relax_vertex=opt["relax_vertex"])
    body = {
        "overall": format_rational(cost.overall),
        "setup": format_rational(cost.setup),
        "product_indexing": opt["product_indexing"],
        "dominant": cost.dominant(),
        "terms": [{"position": t.position, "element": str(t.element),
                   "epsilon": format_rational(t.epsilon),
                   "delta": format_rational(t.delta),
                   "update": format_rational(t.update),
                   "total": format_rational(t.total)} for t in cost.terms],
        "admissibility": _admissibility_payload(adm),
    }
    return _report(config, body), 0


def _random_triple_sets(n: int, size: int, delta: int, seed: int):
    """Two size-`size` subsets of the triple universe with |A ^ B| = delta."""
    if delta % 2:
        raise ValidationError("symmetric difference size must be even for equal sizes")
    universe = TripleUniverse(n)
    allt = universe.all_triples()
    half = delta // 2
    if size + half > len(allt):
        raise ValidationError("not enough triples for the requested sizes")
    rng = derive_rng(seed, "triple-sets", n, size, delta)
    picks = rng.sample(allt, size + half)
    shared = set(picks[: size - half])
    own_a = set(picks[size - half: size])
    own_b = set(picks[size:])
    return shared | own_a, shared | own_b, universe


def _run_simulate(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    opt = config.options
    check = opt["check"]
    seed = resolve_seed(opt["seed"])
    trials = opt["trials"]
    params = _load_json(opt["params"]) if opt["params"] else {}
    if not isinstance(params, dict):
        raise ParseError(f"{opt['params']}: params file must hold an object")

    if check == "lambda-claim":
        n = opt["n"] or 4
        universe = TripleUniverse(n)
        allt = universe.all_triples()
        max_size = int(params.get("max_size", len(allt)))
        failures = 0
        for t in range(trials):
            rng = derive_rng(seed, "lambda-claim", t)
            a = set(rng.sample(allt, rng.randrange(0, max_size + 1)))
            b = set(rng.sample(allt, rng.randrange(0, max_size + 1)))
            p = rng.randrange(1, len(allt) + 1)
            if not check_claim_lambda(a, b, p, universe):
                failures += 1
        freq = (trials - failures) / trials
        body = {"check": check, "n": n, "trials": trials, "seed": seed,
                "frequency": _sig6(freq), "bound": 1.0, "pass": failures == 0}
        return _report(config, body), 0 if failures == 0 else 1

    if check == "lemma3":
        n = opt["n"] or 8
        size = int(params.get("gamma_size", 100))
        delta = int(params.get("delta", 20))
        p = int(params.get("p", 120))
        r = int(params.get("r", 30))
        convention = float(params.get("convention", 0.99))
        a, b, universe = _random_triple_sets(n, size, delta, seed)
        rep = mc_lemma3(a, b, p=p, r=r, trials=trials, seed=seed, universe=universe)
        ok = rep.passes_floor and rep.frequency >= convention
        body = {"check": check, "n": n, "trials": trials, "seed": seed,
                "gamma_size": size, "difference": delta, "p": p, "r": r,
                "frequency": _sig6(rep.frequency), "threshold": _sig6(rep.threshold),
                "bound": _sig6(rep.floor), "convention": convention,
                "frequency_base2": _sig6(rep.frequency_base2),
                "threshold_base2": _sig6(rep.threshold_base2),
                "bound_base2": _sig6(rep.floor_base2),
                "worst_difference": rep.worst_difference, "pass": ok}
        return _report(config, body), 0 if ok else 1

    if check == "regularity":
        need = [int(params.get(k, 0)) for k in ("r_i", "r_j", "r_k", "f_ij", "f_ik")]
        kappa = int(params.get("kappa", 3))
        rep = mc_regularity(*need, trials=trials, seed=seed, kappa=kappa)
        ok = rep.passes_point and rep.passes_wilson
        body = {"check": check, "trials": trials, "seed": seed,
                "failure_frequency": _sig6(rep.failure_frequency),
                "wilson": [_sig6(rep.failure_wilson[0]), _sig6(rep.failure_wilson[1])],
                "bound": _sig6(rep.bound_failure), "vacuous": rep.vacuous, "pass": ok}
        return _report(config, body), 0 if ok else 1

    if check in ("vertex-swap", "pair-swap"):
        sp = SwapParams(*[int(params.get(k, 0))
                          for k in ("r_i", "r_j", "r_k", "f_ij", "f_ik", "f_jk")])
        convention = float(params.get("convention", 0.01))
        fn = mc_vertex_swap if check == "vertex-swap" else mc_pair_swap
        rep = fn(sp, trials=trials, seed=seed, convention=convention)
        body = {"check": check, "trials": trials, "seed": seed,
                "frequency": _sig6(rep.exceedance_frequency),
                "bound": _sig6(float(rep.threshold)),
                "threshold": format_rational(rep.threshold),
                "convention": convention,
                "worst_difference": rep.worst_difference,
                "mean_difference": _sig6(rep.mean_difference),
                "pass": rep.passes}
        return _report(config, body), 0 if rep.passes else 1

    raise ValidationError(f"unknown check {check!r}")


def _run_verify_tails(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    opt = config.options
    report = verify_tail_bounds(max_n=opt["max_n"])
    body = {
        "max_n": report.max_n,
        "points": report.points,
        "checks": report.checks,
        "violations": [
            {"params": list(v.params), "kind": v.kind, "delta": format_rational(v.delta)}
            for v in report.violations
        ],
        "pass": report.holds,
    }
    return _report(config, body), 0 if report.holds else 1


def _run_find(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    opt = config.options
    pattern = parse_pattern(opt["pattern"])
    instance = parse_instance(opt["instance"])
    counter = QueryCounter()
    embedding = find_subhypergraph(instance, pattern, counter)
    body = {
        "found": embedding is not None,
        "embedding": {str(k): v for k, v in sorted(embedding.items())} if embedding else None,
        "queries": {"total": counter.total, "distinct": counter.distinct},
    }
    return _report(config, body), 0 if embedding is not None else 1


def _run_assoc_check(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    opt = config.options
    op = parse_operator(opt["table"])
    verdict = is_associative(op)
    if verdict is True:
        return _report(config, {"n": op.n, "associative": True, "violation": None}), 0
    return _report(config, {"n": op.n, "associative": False,
                            "violation": list(verdict)}), 1


def _run_assoc_certificate(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    opt = config.options
    op = parse_operator(opt["table"])
    case = opt["case"]
    cert = find_certificate(op, case)
    if cert is None:
        return _report(config, {"n": op.n, "case": case, "found": False,
                                "certificate": None}), 1
    pattern = certificate_pattern(case)
    counter = QueryCounter()
    reduction = build_reduction(op, case)
    accepted = reduction.checker(cert.values, counter)
    body = {
        "n": op.n, "case": case, "found": True,
        "certificate": list(cert.values),
        "verified": verify_certificate(op, cert),
        "reduction_accepts": accepted,
        "reduction_queries": counter.total,
        "pattern_orientations": [list(pattern.orientation_of(t)) for t in pattern.triples],
    }
    return _report(config, body), 0


_COMMANDS = {
    "schedules": _run_schedules,
    "optimize": _run_optimize,
    "evaluate": _run_evaluate,
    "simulate": _run_simulate,
    "verify-tails": _run_verify_tails,
    "find": _run_find,
    "assoc-check": _run_assoc_check,
    "assoc-certificate": _run_assoc_certificate,
}


def run(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    """Dispatch one parsed invocation; returns (report, exit code)."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        raise ValidationError(f"unknown command {config.command!r}")
    return handler(config)


# ----------------------------------------------------------------------
# click wiring
# ----------------------------------------------------------------------


def _emit(report: Dict[str, Any], code: int, output: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    click.echo(text)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    sys.exit(code)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SystemExit:
            raise
        except click.UsageError:
            raise
        except (ParseError, ValidationError) as exc:
            click.echo(json.dumps({"error": str(exc),
                                   "kind": exc.__class__.__name__}), err=True)
            sys.exit(3)
        except HyperwalkError as exc:
            click.echo(json.dumps({"error": str(exc),
                                   "kind": exc.__class__.__name__}), err=True)
            sys.exit(3)
        except Exception as exc:
            click.echo(json.dumps({"error": f"{exc.__class__.__name__}: {exc}"}), err=True)
            sys.exit(4)
    return wrapper


_output_option = click.option("--output", type=click.Path(dir_okay=False), default=None,
                              help="Also write the JSON report to this path.")
_seed_option = click.option("--seed", type=int, default=None,
                            help=f"Master seed (default {DEFAULT_SEED}, or HYPERWALK_SEED).")
_jobs_option = click.option("--jobs", type=int, default=1, show_default=True,
                            help="Accepted for interface stability; runs sequentially.")


@click.group()
def main():
    """Workbench for nested-walk query exponents and their supporting lemmas."""


@main.command("schedules")
@click.option("--pattern", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--count-only", is_flag=True, help="Report only the total schedule count.")
@click.option("--mode", type=click.Choice(["exhaustive", "heuristic"]), default="exhaustive",
              show_default=True)
@click.option("--budget", type=int, default=1000, show_default=True)
@click.option("--limit", type=int, default=20, show_default=True,
              help="Maximum number of schedules to list.")
@_seed_option
@_output_option
@_guarded
def schedules_cmd(pattern, count_only, mode, budget, limit, seed, output):
    """Count or list complete loading schedules of a pattern."""
    config = RunConfig("schedules", {"pattern": pattern, "count_only": count_only,
                                     "mode": mode, "budget": budget, "limit": limit,
                                     "seed": seed})
    report, code = run(config)
    _emit(report, code, output)


@main.command("optimize")
@click.option("--pattern", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--exhaustive", is_flag=True, help="Visit every schedule (orbit-deduplicated).")
@click.option("--mode", type=click.Choice(["exhaustive", "heuristic"]), default="heuristic",
              show_default=True)
@click.option("--budget", type=int, default=1000, show_default=True,
              help="Random schedules sampled in heuristic mode.")
@click.option("--descent-rounds", type=int, default=200, show_default=True)
@click.option("--seed-schedule", multiple=True, type=click.Path(exists=True, dir_okay=False),
              help="Schedule file injected into the heuristic frontier (repeatable).")
@click.option("--product-indexing", type=click.Choice(list(PRODUCT_INDEXINGS)),
              default="inclusive", show_default=True)
@_seed_option
@_jobs_option
@_output_option
@_guarded
def optimize_cmd(pattern, exhaustive, mode, budget, descent_rounds, seed_schedule,
                 product_indexing, seed, jobs, output):
    """Minimize the walk exponent over loading schedules."""
    config = RunConfig("optimize", {"pattern": pattern, "exhaustive": exhaustive,
                                    "mode": mode, "budget": budget,
                                    "descent_rounds": descent_rounds,
                                    "seed_schedule": list(seed_schedule),
                                    "product_indexing": product_indexing, "seed": seed})
    report, code = run(config)
    _emit(report, code, output)


@main.command("evaluate")
@click.option("--pattern", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--schedule", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--params", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--product-indexing", type=click.Choice(list(PRODUCT_INDEXINGS)),
              default="inclusive", show_default=True)
@click.option("--relax-vertex/--no-relax-vertex", default=True, show_default=True,
              help="Treat the per-vertex budget as a non-strict constraint.")
@_output_option
@_guarded
def evaluate_cmd(pattern, schedule, params, product_indexing, relax_vertex, output):
    """Evaluate the exponent of one schedule under given parameters."""
    config = RunConfig("evaluate", {"pattern": pattern, "schedule": schedule,
                                    "params": params, "product_indexing": product_indexing,
                                    "relax_vertex": relax_vertex})
    report, code = run(config)
    _emit(report, code, output)


@main.command("simulate")
@click.option("--check", required=True,
              type=click.Choice(["lambda-claim", "lemma3", "regularity",
                                 "vertex-swap", "pair-swap"]))
@click.option("--n", type=int, default=None, help="Instance vertex count (where relevant).")
@click.option("--params", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON file with check-specific sizes.")
@click.option("--trials", type=int, default=1000, show_default=True)
@_seed_option
@_jobs_option
@_output_option
@_guarded
def simulate_cmd(check, n, params, trials, seed, jobs, output):
    """Run one Monte-Carlo or exhaustive structural check."""
    config = RunConfig("simulate", {"check": check, "n": n, "params": params,
                                    "trials": trials, "seed": seed})
    report, code = run(config)
    _emit(report, code, output)


@main.group("verify")
def verify_group():
    """Certified verification commands."""


@verify_group.command("tails")
@click.option("--max-n", type=int, default=60, show_default=True)
@_jobs_option
@_output_option
@_guarded
def verify_tails_cmd(max_n, jobs, output):
    """Check the tail bounds on the exhaustive parameter grid."""
    config = RunConfig("verify-tails", {"max_n": max_n})
    report, code = run(config)
    _emit(report, code, output)


@main.command("find")
@click.option("--pattern", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--instance", required=True, type=click.Path(exists=True, dir_okay=False))
@_output_option
@_guarded
def find_cmd(pattern, instance, output):
    """Search an instance for a pattern copy (exit 1 when absent)."""
    config = RunConfig("find", {"pattern": pattern, "instance": instance})
    report, code = run(config)
    _emit(report, code, output)


@main.group("assoc")
def assoc_group():
    """Ternary associativity commands."""


@assoc_group.command("check")
@click.option("--table", required=True, type=click.Path(exists=True, dir_okay=False))
@_output_option
@_guarded
def assoc_check_cmd(table, output):
    """Exhaustively test associativity (exit 1 on a violation)."""
    config = RunConfig("assoc-check", {"table": table})
    report, code = run(config)
    _emit(report, code, output)


@assoc_group.command("certificate")
@click.option("--table", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--case", type=click.Choice(["i", "ii"]), default="i", show_default=True)
@_output_option
@_guarded
def assoc_certificate_cmd(table, case, output):
    """Find and verify a violation certificate (exit 1 when none exists)."""
    config = RunConfig("assoc-certificate", {"table": table, "case": case})
    report, code = run(config)
    _emit(report, code, output)


if __name__ == "__main__":
    main()
