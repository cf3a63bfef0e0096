"""Maximum payoff games.

Two players move a token along the arcs of a sink-free weighted digraph
forever; Min pays Max the largest arc weight the play ever traverses.
Arc weights are positions into a :class:`~minmax.order.ComparableStore`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from minmax.dsu import DisjointSet
from minmax.meta import (
    BELOW_ALL,
    Answer,
    CoarseInstance,
    OrderedProblem,
    Outcome,
    SolveReport,
    solve,
)
from minmax.order import ComparableStore, InputError

MIN = "min"
MAX = "max"


@dataclass
class MaxPayoffGame:
    owners: list[str]
    arcs: list[tuple[int, int, int]]  # (tail, head, weight position)
    start: int

    @property
    def num_nodes(self) -> int:
        return len(self.owners)

    def out_arcs(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.owners]
        for a, (u, _, _) in enumerate(self.arcs):
            out[u].append(a)
        return out

    def restrict(self, keep: set[int]) -> tuple["MaxPayoffGame", list[int]]:
        """Sub-game on the arcs in ``keep``; also returns new-to-old arc ids."""
        ids = [a for a in range(len(self.arcs)) if a in keep]
        return MaxPayoffGame(list(self.owners), [self.arcs[a] for a in ids], self.start), ids


@dataclass
class GameSolution:
    value: Outcome
    max_strategy: dict[int, int] = field(default_factory=dict)
    min_strategy: dict[int, int] = field(default_factory=dict)


def validate_game(game: MaxPayoffGame, n_weights: int | None = None) -> list[str]:
    """Diagnostics for ``game``; an empty list means it is valid."""
    problems = []
    V = game.num_nodes
    if V == 0:
        return ["game has no nodes"]
    for v, o in enumerate(game.owners):
        if o not in (MIN, MAX):
            problems.append(f"node {v}: owner {o!r} is not 'min' or 'max'")
    if not 0 <= game.start < V:
        problems.append(f"start node {game.start} out of range")
    outdeg = [0] * V
    for a, (u, v, w) in enumerate(game.arcs):
        if not 0 <= u < V or not 0 <= v < V:
            problems.append(f"arc {a}: endpoint out of range ({u} -> {v})")
            continue
        if w < 0 or (n_weights is not None and w >= n_weights):
            problems.append(f"arc {a}: weight position {w} out of range")
        outdeg[u] += 1
    problems.extend(f"node {v}: sink (no outgoing arc)" for v in range(V) if outdeg[v] == 0)
    return problems


def _require_valid(game: MaxPayoffGame, n_weights: int | None = None) -> None:
    problems = validate_game(game, n_weights)
    if problems:
        raise InputError("invalid game: " + "; ".join(problems))


def ordered_solve_game(game: MaxPayoffGame, coarse: CoarseInstance) -> Outcome:
    """Value of the game from its start node, reading only rank labels.

    Repeatedly takes a heaviest remaining arc ``e`` with tail ``v``.  A Min
    tail with other options drops ``e``; otherwise ``v`` is worth ``w(e)``,
    its incoming arcs are raised to ``w(e)``, its other out-arcs dropped, and
    ``e`` is contracted into its head.
    """
    _require_valid(game, len(coarse.rank_of))
    rank_of = coarse.rank_of
    V = game.num_nodes
    E = len(game.arcs)
    tail = [a[0] for a in game.arcs]
    head = [a[1] for a in game.arcs]
    is_min = [o == MIN for o in game.owners]
    out_arcs: list[list[int]] = [[] for _ in range(V)]
    in_arcs: list[list[int]] = [[] for _ in range(V)]
    cur = [0] * E
    buckets: list[list[int]] = [[] for _ in range(coarse.R)]
    for a, (u, v, w) in enumerate(game.arcs):
        out_arcs[u].append(a)
        in_arcs[v].append(a)
        r = cur[a] = rank_of[w]
        buckets[r].append(a)
    outdeg = [len(x) for x in out_arcs]
    alive = bytearray(b"\x01") * E
    dsu = DisjointSet(V)
    core = list(range(V))  # root -> the node whose arcs and owner the super-node carries
    s = game.start

    for r in range(coarse.R - 1, -1, -1):
        bucket = buckets[r]
        i = 0
        while i < len(bucket):
            a = bucket[i]
            i += 1
            if not alive[a] or cur[a] != r:
                continue
            # an alive arc always leaves a core node
            v = tail[a]
            if is_min[v] and outdeg[v] > 1:
                alive[a] = 0
                outdeg[v] -= 1
                continue
            rv = dsu.find(v)
            if dsu.find(s) == rv:
                return coarse.answer(r)
            for b in in_arcs[v]:
                if alive[b] and cur[b] < r:
                    cur[b] = r
                    bucket.append(b)
            in_arcs[v] = []
            for b in out_arcs[v]:
                if b != a:
                    alive[b] = 0
            out_arcs[v] = [a]
            outdeg[v] = 1
            h = core[dsu.find(head[a])]
            if h == v:
                # sole self-loop: v becomes absorbing at value r
                continue
            alive[a] = 0
            outdeg[v] = 0
            out_arcs[v] = []
            core[dsu.union(rv, h)] = h
    raise AssertionError("start node never received a value on a sink-free game")


def game_problem(game: MaxPayoffGame, n: int) -> OrderedProblem:
    _require_valid(game, n)
    return OrderedProblem(
        structure=game,
        n=n,
        ord_solve=lambda coarse: ordered_solve_game(game, coarse),
        work_bound=max(n, len(game.arcs)),
    )


def solve_game(
    game: MaxPayoffGame, store: ComparableStore, algorithm: str = "logstar"
) -> tuple[SolveReport, GameSolution]:
    report = solve(game_problem(game, len(store)), store, algorithm)
    mx, mn = extract_strategies(game, store, report.outcome.position)
    return report, GameSolution(report.outcome, mx, mn)


def _attract(
    game: MaxPayoffGame, target: set[int]
) -> tuple[set[int], dict[int, int]]:
    """Max-attractor to ``target`` arcs plus, per Max node, the arc it joined by."""
    V = game.num_nodes
    preds: list[list[int]] = [[] for _ in range(V)]
    missing = [0] * V
    joined: dict[int, int] = {}
    members: set[int] = set()
    queue: deque[int] = deque()
    for a, (u, v, _) in enumerate(game.arcs):
        if a in target:
            if game.owners[u] == MAX and u not in joined:
                joined[u] = a
        else:
            missing[u] += 1
            preds[v].append(a)
    for u in range(V):
        if u in joined or (game.owners[u] == MIN and missing[u] == 0):
            members.add(u)
            queue.append(u)
    while queue:
        x = queue.popleft()
        for a in preds[x]:
            u = game.arcs[a][0]
            if u in members:
                continue
            if game.owners[u] == MAX:
                joined[u] = a
            else:
                missing[u] -= 1
                if missing[u]:
                    continue
            members.add(u)
            queue.append(u)
    return members, {u: a for u, a in joined.items() if u in members}


def attractor(game: MaxPayoffGame, target_arcs: set[int]) -> set[int]:
    """Nodes from which Max can force the play through some arc of ``target_arcs``."""
    return _attract(game, set(target_arcs))[0]


def _weights_desc(game: MaxPayoffGame, store: ComparableStore) -> list[int]:
    return sorted({w for _, _, w in game.arcs}, key=store.tkey, reverse=True)


def _at_least(game: MaxPayoffGame, store: ComparableStore, t: int, strict: bool = False) -> set[int]:
    kt = store.tkey(t)
    if strict:
        return {a for a, (_, _, w) in enumerate(game.arcs) if store.tkey(w) > kt}
    return {a for a, (_, _, w) in enumerate(game.arcs) if store.tkey(w) >= kt}


def attractor_value_oracle(game: MaxPayoffGame, store: ComparableStore) -> Answer:
    """Largest weight ``t`` such that Max can force an arc of weight >= ``t``."""
    _require_valid(game, len(store))
    for t in _weights_desc(game, store):
        if game.start in attractor(game, _at_least(game, store, t)):
            return Answer(t)
    raise AssertionError("unreachable on a sink-free game")


def extract_strategies(
    game: MaxPayoffGame, store: ComparableStore, value_pos: int
) -> tuple[dict[int, int], dict[int, int]]:
    """Positional strategies securing ``value_pos`` for each player."""
    out = game.out_arcs()
    force, via = _attract(game, _at_least(game, store, value_pos))
    if game.start not in force:
        raise AssertionError("value is higher than Max can force")
    max_strategy = {}
    for v, o in enumerate(game.owners):
        if o == MAX:
            max_strategy[v] = via.get(v, out[v][0])

    above = _at_least(game, store, value_pos, strict=True)
    trap, _ = _attract(game, above)
    if game.start in trap:
        raise AssertionError("value is lower than Max can force")
    min_strategy = {}
    for v, o in enumerate(game.owners):
        if o != MIN:
            continue
        choice = out[v][0]
        if v not in trap:
            # some arc avoids both heavy arcs and the region where Max forces one
            choice = next(a for a in out[v] if a not in above and game.arcs[a][1] not in trap)
        min_strategy[v] = choice
    return max_strategy, min_strategy


def verify_strategies(game: MaxPayoffGame, store: ComparableStore, solution: GameSolution) -> bool:
    """Each strategy alone must keep the oracle value of the restricted game."""
    if solution.value is BELOW_ALL:
        return False
    for strategy, owner in ((solution.max_strategy, MAX), (solution.min_strategy, MIN)):
        owned = [v for v, o in enumerate(game.owners) if o == owner]
        if set(strategy) != set(owned):
            return False
        keep = set()
        for a, (u, _, _) in enumerate(game.arcs):
            if game.owners[u] != owner:
                keep.add(a)
        for v, a in strategy.items():
            if not 0 <= a < len(game.arcs) or game.arcs[a][0] != v:
                return False
            keep.add(a)
        sub, _ = game.restrict(keep)
        if attractor_value_oracle(sub, store) != solution.value:
            return False
    return True
