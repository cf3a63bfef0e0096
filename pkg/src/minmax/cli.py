"""Command-line front end: solve, oracle, gen, bench, check.

Exit codes: 0 ok, 1 property failure, 2 parse/flag error, 3 invalid
instance, 4 guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from minmax.bench import BENCH_PROBLEMS, run_bench, to_csv
from minmax.circuit import commutation_suite
from minmax.game import attractor_value_oracle, solve_game
from minmax.instances import (
    Instance,
    ParseError,
    ValidationError,
    format_instance,
    parse_instance,
    random_game,
    random_network,
)
from minmax.interdiction import (
    brute_force_global,
    brute_force_interdiction,
    global_solve,
    solve_interdiction,
)
from minmax.meta import ALGORITHMS, BELOW_ALL
from minmax.order import GuardExceeded
from minmax.recurrence import check_recurrence_lemmas

EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, EXIT_INVALID, EXIT_GUARD = range(5)
PROBLEMS = ("game", "interdict", "interdict-global")
_FILE_KIND = {"game": "game", "interdict": "network", "interdict-global": "network"}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(args) -> Instance:
    try:
        inst = parse_instance(args.file)
    except OSError as e:
        raise CliError(EXIT_USAGE, f"cannot read {args.file}: {e}") from None
    except ParseError as e:
        raise CliError(EXIT_USAGE, f"{args.file}: {e}") from None
    except ValidationError as e:
        raise CliError(EXIT_INVALID, f"{args.file}: invalid instance: {e}") from None
    if inst.kind != _FILE_KIND[args.problem]:
        raise CliError(EXIT_USAGE, f"--problem {args.problem} needs a {_FILE_KIND[args.problem]} file, got a {inst.kind} file")
    if args.problem == "interdict-global" and args.k is None:
        raise CliError(EXIT_USAGE, "--k is required for interdict-global")
    return inst


def _report(inst: Instance, problem: str, algorithm: str, outcome, **extra) -> dict:
    rep = {
        "problem_kind": problem,
        "algorithm": algorithm,
        "outcome": "disconnected" if outcome is BELOW_ALL else inst.literals[outcome.position],
        "answer_position": None if outcome is BELOW_ALL else outcome.position,
        "comparisons": 0,
        "iterations": 0,
        "group_counts": [],
        "elapsed_ms": 0.0,
    }
    rep.update(extra)
    return rep


def _solve(args) -> dict:
    inst = _load(args)
    store = inst.store()
    if args.problem == "interdict-global":
        t0 = time.perf_counter()
        out = global_solve(inst.structure, store, args.k)
        return _report(
            inst, args.problem, "binary-search", out,
            comparisons=store.count, elapsed_ms=round((time.perf_counter() - t0) * 1000, 3),
        )
    if args.problem == "game":
        sr, sol = solve_game(inst.structure, store, args.algorithm)
        extra = {"strategies": {
            "max": {str(v): a for v, a in sorted(sol.max_strategy.items())},
            "min": {str(v): a for v, a in sorted(sol.min_strategy.items())},
        }}
    else:
        sr, sol = solve_interdiction(inst.structure, store, args.algorithm)
        extra = {"removed_arcs": sorted(sol.removed)}
    return _report(
        inst, args.problem, args.algorithm, sr.outcome,
        comparisons=sr.comparisons, iterations=sr.iterations, group_counts=sr.group_counts,
        elapsed_ms=round(sr.elapsed * 1000, 3), **extra,
    )


def _oracle(args) -> dict:
    inst = _load(args)
    store = inst.store()
    t0 = time.perf_counter()
    if args.problem == "game":
        out = attractor_value_oracle(inst.structure, store)
    elif args.problem == "interdict":
        out = brute_force_interdiction(inst.structure, store, guard=args.guard)
    else:
        out = brute_force_global(inst.structure, store, args.k, guard=args.guard)
    return _report(inst, args.problem, "oracle", out, elapsed_ms=round((time.perf_counter() - t0) * 1000, 3))


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True))
        return
    for key, value in report.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value, sort_keys=True)
        print(f"{key}: {value}")


def cmd_solve(args) -> int:
    _emit(_solve(args), args.json)
    return EXIT_OK


def cmd_oracle(args) -> int:
    _emit(_oracle(args), args.json)
    return EXIT_OK


def cmd_gen(args) -> int:
    kind = args.kind or args.problem
    if kind is None:
        raise CliError(EXIT_USAGE, "gen needs a problem kind (game or network)")
    V, E = args.size
    rng = random.Random(args.seed)
    try:
        if kind == "game":
            inst = random_game(rng, V, E)
        else:
            inst = random_network(rng, V, E, args.budget_max, args.ensure_path)
    except ValueError as e:
        raise CliError(EXIT_USAGE, str(e)) from None
    sys.stdout.write(format_instance(inst))
    return EXIT_OK


def _csv_list(values: list[str], cast=str) -> list:
    out = []
    for v in values:
        out.extend(cast(x) for x in v.split(",") if x)
    return out


def cmd_bench(args) -> int:
    try:
        sizes = _csv_list(args.sizes, int)
        algorithms = _csv_list(args.algorithms)
        rows = run_bench(args.problem, sizes, algorithms, args.seed, args.trials, args.jobs)
    except ValueError as e:
        raise CliError(EXIT_USAGE, str(e)) from None
    sys.stdout.write(to_csv(rows))
    return EXIT_OK


def cmd_check(args) -> int:
    failures = []
    t0 = time.perf_counter()
    rec = check_recurrence_lemmas(args.max_i, bound_scale=1000.0 if args.corrupt else 1.0)
    for name, results in (("growth", rec.growth), ("tower", rec.tower), ("adaptive", rec.adaptive)):
        bad = [k for k, ok in results.items() if not ok]
        status = "PASS" if not bad else f"FAIL at {bad}"
        print(f"recurrence {name} lemma ({len(results)} cases): {status}")
        failures.extend(bad)
    print(f"recurrence checks took {time.perf_counter() - t0:.3f}s")
    bad = commutation_suite(args.seed, circuits=args.circuits)
    print(f"commutation suite ({args.circuits} circuits): {'PASS' if not bad else 'FAIL'}")
    for line in bad[:10]:
        print(f"  {line}")
    failures.extend(bad)
    return EXIT_PROPERTY if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minmax", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (("solve", cmd_solve, "run a solver"), ("oracle", cmd_oracle, "run the ground-truth oracle")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--problem", choices=PROBLEMS, required=True)
        sp.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="logstar")
        sp.add_argument("--file", required=True)
        sp.add_argument("--k", type=int, help="global removal budget (interdict-global)")
        sp.add_argument("--guard", type=int, default=10**6, help="oracle enumeration limit")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("gen", help="print a random instance")
    sp.add_argument("kind", nargs="?", choices=("game", "network"))
    sp.add_argument("--problem", choices=("game", "network"))
    sp.add_argument("--size", nargs=2, type=int, metavar=("V", "E"), required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget-max", type=int, default=1)
    sp.add_argument("--ensure-path", action="store_true")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="comparison counts as CSV")
    sp.add_argument("--problem", choices=BENCH_PROBLEMS, default="interdict")
    sp.add_argument("--sizes", nargs="+", default=["1024,4096,16384"])
    sp.add_argument("--algorithms", nargs="+", default=["logstar"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("check", help="recurrence lemmas and circuit characterization")
    sp.add_argument("--max-i", type=int, default=12)
    sp.add_argument("--circuits", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--corrupt", action="store_true", help="negative control: inflate a lemma bound")
    sp.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except GuardExceeded as e:
        print(f"error: guard exceeded: {e}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
