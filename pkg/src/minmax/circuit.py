"""Min-max circuits and their order-theoretic characterizations.

A circuit is a DAG of k-ary MIN/MAX gates over ``input_count`` inputs.
References ``0..input_count-1`` name inputs and ``input_count + j`` names
gate ``j``.  Every function such a circuit computes returns one of its
inputs and commutes with every non-decreasing map; the helpers here test
both facts and build explicit circuits for the two graph problems.
"""

from __future__ import annotations

import itertools
import math
import random
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Any, Sequence

from minmax.game import MAX, MIN, MaxPayoffGame
from minmax.interdiction import DEFAULT_GUARD, InterdictionNetwork, _removal_options
from minmax.order import GuardExceeded, InputError


@dataclass
class MinMaxCircuit:
    input_count: int
    gates: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    output: int = 0

    def __post_init__(self):
        for j, (kind, ops) in enumerate(self.gates):
            if kind not in (MIN, MAX):
                raise InputError(f"gate {j}: unknown kind {kind!r}")
            if not ops:
                raise InputError(f"gate {j}: no operands")
            limit = self.input_count + j
            if any(not 0 <= r < limit for r in ops):
                raise InputError(f"gate {j}: operand out of range or not earlier")
        if not 0 <= self.output < self.input_count + len(self.gates):
            raise InputError(f"output reference {self.output} out of range")

    def add(self, kind: str, ops: Sequence[int]) -> int:
        """Append a gate (collapsing single-operand gates) and return its reference."""
        ops = tuple(dict.fromkeys(ops))
        if len(ops) == 1:
            return ops[0]
        self.gates.append((kind, ops))
        return self.input_count + len(self.gates) - 1


def evaluate(circuit: MinMaxCircuit, values: Sequence[Any]) -> Any:
    if len(values) != circuit.input_count:
        raise InputError(f"circuit takes {circuit.input_count} inputs, got {len(values)}")
    wires = list(values)
    for kind, ops in circuit.gates:
        vals = [wires[r] for r in ops]
        wires.append(min(vals) if kind == MIN else max(vals))
    return wires[circuit.output]


@dataclass
class MonotoneMap:
    """Non-decreasing map on the distinct values of one input assignment.

    The ``r``-th smallest distinct value maps to ``table[r]``.
    """

    table: list[Any]

    def __post_init__(self):
        if any(b < a for a, b in zip(self.table, self.table[1:])):
            raise InputError("monotone map table must be non-decreasing")

    def bind(self, values: Sequence[Any]):
        distinct = sorted(set(values))
        if len(distinct) > len(self.table):
            raise InputError(f"map covers {len(self.table)} ranks, values have {len(distinct)}")
        return lambda x: self.table[bisect_left(distinct, x)]


def check_commutation(circuit: MinMaxCircuit, values: Sequence[Any], mmap: MonotoneMap) -> bool:
    phi = mmap.bind(values)
    return evaluate(circuit, [phi(x) for x in values]) == phi(evaluate(circuit, values))


def random_monotone_map(seed: int, rank_count: int) -> MonotoneMap:
    if rank_count < 1:
        raise InputError("rank_count must be positive")
    rng = random.Random(seed)
    return MonotoneMap(sorted(rng.randrange(rank_count) for _ in range(rank_count)))


def random_circuit(rng: random.Random, input_count: int, gate_count: int, max_arity: int = 3) -> MinMaxCircuit:
    c = MinMaxCircuit(input_count)
    for j in range(gate_count):
        arity = rng.randint(1, max_arity)
        ops = tuple(rng.randrange(input_count + j) for _ in range(arity))
        c.gates.append((rng.choice((MIN, MAX)), ops))
    c.output = input_count + gate_count - 1 if gate_count else rng.randrange(input_count)
    return c


def _simple_paths(net: InterdictionNetwork) -> list[list[int]]:
    out = net.out_arcs()
    paths: list[list[int]] = []
    stack = [(net.source, [], {net.source})]
    while stack:
        u, path, seen = stack.pop()
        if u == net.sink:
            paths.append(path)
            continue
        for a in out[u]:
            v = net.arcs[a][1]
            if v not in seen:
                stack.append((v, path + [a], seen | {v}))
    return paths


def interdiction_to_circuit(
    net: InterdictionNetwork, n_caps: int, guard: int = DEFAULT_GUARD
) -> MinMaxCircuit:
    """MIN over feasible removals of MAX over surviving paths of MIN over capacities.

    Inputs are the ``n_caps`` capacity positions plus a trailing sentinel that
    must be set below every capacity; it is the value of a disconnected outcome.
    """
    paths = _simple_paths(net)
    out = net.out_arcs()
    options = [
        _removal_options(net, v, out[v], guard) if v != net.sink else [()]
        for v in range(net.num_vertices)
    ]
    combos = math.prod(len(o) for o in options)
    if combos * max(1, len(paths)) > guard:
        raise GuardExceeded(f"{combos} removal sets x {len(paths)} paths exceed guard {guard}")
    sentinel = n_caps
    c = MinMaxCircuit(n_caps + 1)
    path_refs = [c.add(MIN, [net.arcs[a][2] for a in p]) for p in paths]
    outcomes = []
    for combo in itertools.product(*options):
        gone = set(itertools.chain.from_iterable(combo))
        alive = [ref for p, ref in zip(paths, path_refs) if gone.isdisjoint(p)]
        outcomes.append(c.add(MAX, alive) if alive else sentinel)
    c.output = c.add(MIN, outcomes)
    return c


def _reachable(game: MaxPayoffGame) -> list[int]:
    out = game.out_arcs()
    seen = {game.start}
    stack = [game.start]
    while stack:
        u = stack.pop()
        for a in out[u]:
            v = game.arcs[a][1]
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return sorted(seen)


def game_to_circuit(game: MaxPayoffGame, n_weights: int, guard: int = DEFAULT_GUARD) -> MinMaxCircuit:
    """MAX over positional Max strategies of MIN over Min strategies of the play's heaviest arc."""
    out = game.out_arcs()
    nodes = _reachable(game)
    maxers = [v for v in nodes if game.owners[v] == MAX]
    miners = [v for v in nodes if game.owners[v] == MIN]
    total = math.prod(len(out[v]) for v in nodes)
    if total > guard:
        raise GuardExceeded(f"{total} strategy profiles exceed guard {guard}")
    c = MinMaxCircuit(n_weights)
    per_max = []
    for smax in itertools.product(*(out[v] for v in maxers)):
        choice = dict(zip(maxers, smax))
        per_min = []
        for smin in itertools.product(*(out[v] for v in miners)):
            choice.update(zip(miners, smin))
            # the play is a lasso; every arc on it is traversed
            seen: set[int] = set()
            weights = []
            v = game.start
            while v not in seen:
                seen.add(v)
                a = choice[v]
                weights.append(game.arcs[a][2])
                v = game.arcs[a][1]
            per_min.append(c.add(MAX, weights))
        per_max.append(c.add(MIN, per_min))
    c.output = c.add(MAX, per_max)
    return c


def commutation_suite(
    seed: int = 0, circuits: int = 1000, assignments: int = 10, maps: int = 5
) -> list[str]:
    """Random circuits against both characterizations; returns failure descriptions."""
    rng = random.Random(seed)
    failures = []
    for ci in range(circuits):
        n = rng.randint(1, 6)
        c = random_circuit(rng, n, rng.randint(0, 8))
        for _ in range(assignments):
            values = [rng.randint(0, 9) for _ in range(n)]
            if evaluate(c, values) not in values:
                failures.append(f"circuit {ci}: output is not an input on {values}")
            ranks = len(set(values))
            for _ in range(maps):
                if not check_commutation(c, values, random_monotone_map(rng.randrange(2**32), ranks)):
                    failures.append(f"circuit {ci}: does not commute on {values}")
    return failures
