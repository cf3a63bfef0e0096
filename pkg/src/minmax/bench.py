"""Comparison-count benchmark over seeded random instances."""

from __future__ import annotations

import csv
import io
import random
from concurrent.futures import ProcessPoolExecutor

from minmax.game import game_problem
from minmax.instances import random_game, random_network
from minmax.interdiction import interdiction_problem
from minmax.meta import ALGORITHMS, BELOW_ALL, solve
from minmax.order import ComparableStore

CSV_FIELDS = ["n", "algorithm", "trial", "comparisons", "iterations", "elapsed_ms"]
BENCH_PROBLEMS = ("game", "interdict")


def bench_instance(problem: str, n: int, seed: int, trial: int):
    """Instance with ``n`` comparables (arcs), deterministic in its arguments."""
    rng = random.Random(f"{seed}:{problem}:{n}:{trial}")
    V = max(2, n // 4)
    if problem == "game":
        inst = random_game(rng, V, n)
        return game_problem(inst.structure, n), [float(x) for x in inst.literals]
    if problem == "interdict":
        inst = random_network(rng, V, n, budget_max=1, ensure_path=True)
        return interdiction_problem(inst.structure, n), [float(x) for x in inst.literals]
    raise ValueError(f"unknown bench problem {problem!r}")


def run_one(problem: str, n: int, algorithm: str, seed: int, trial: int) -> dict:
    prob, keys = bench_instance(problem, n, seed, trial)
    store = ComparableStore(keys)
    rep = solve(prob, store, algorithm)
    return {
        "n": n,
        "algorithm": algorithm,
        "trial": trial,
        "comparisons": rep.comparisons,
        "iterations": rep.iterations,
        "elapsed_ms": round(rep.elapsed * 1000, 3),
        "ord_comparisons": rep.ord_comparisons,
        "interval_sizes": rep.interval_sizes,
        "group_counts": rep.group_counts,
        "answer": None if rep.outcome is BELOW_ALL else rep.outcome.position,
    }


def run_bench(
    problem: str,
    sizes: list[int],
    algorithms: list[str],
    seed: int = 0,
    trials: int = 1,
    jobs: int = 1,
) -> list[dict]:
    if problem not in BENCH_PROBLEMS:
        raise ValueError(f"unknown bench problem {problem!r}")
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    tasks = [(problem, n, a, seed, t) for n in sizes for a in algorithms for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(run_one, *zip(*tasks)))
    return [run_one(*task) for task in tasks]


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
