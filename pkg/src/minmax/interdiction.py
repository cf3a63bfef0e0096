"""Widest-path interdiction.

An interdictor removes arcs, limited per vertex by a budget (or globally by
a single count ``k``), to make the widest ``s``-``t`` path as narrow as
possible.  A path's width is its smallest arc capacity.  Capacities are
positions into a :class:`~minmax.order.ComparableStore`.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

from minmax.dsu import DisjointSet
from minmax.flow import arc_disjoint_paths
from minmax.meta import (
    BELOW_ALL,
    Answer,
    CoarseInstance,
    OrderedProblem,
    Outcome,
    SolveReport,
    solve,
)
from minmax.order import ComparableStore, GuardExceeded, InputError

DEFAULT_GUARD = 10**6

# feasibility of removing exactly this set of out-arcs at the given vertex
BudgetOracle = Callable[[int, tuple[int, ...]], bool]


@dataclass
class InterdictionNetwork:
    num_vertices: int
    arcs: list[tuple[int, int, int]]  # (tail, head, capacity position)
    source: int
    sink: int
    budgets: list[int] = field(default_factory=list)
    budget_oracle: BudgetOracle | None = None

    def __post_init__(self):
        if not self.budgets:
            self.budgets = [0] * self.num_vertices

    def feasible(self, v: int, removed: Sequence[int]) -> bool:
        if self.budget_oracle is not None:
            return self.budget_oracle(v, tuple(removed))
        return len(removed) <= self.budgets[v]

    def out_arcs(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for a, (u, _, _) in enumerate(self.arcs):
            out[u].append(a)
        return out


@dataclass
class InterdictionSolution:
    width: Outcome
    removed: list[int] = field(default_factory=list)
    witness_path: list[int] | None = None

    def removed_by_vertex(self, net: InterdictionNetwork) -> dict[int, list[int]]:
        grouped: dict[int, list[int]] = {}
        for a in self.removed:
            grouped.setdefault(net.arcs[a][0], []).append(a)
        return grouped


def validate_network(net: InterdictionNetwork, n_caps: int | None = None) -> list[str]:
    problems = []
    V = net.num_vertices
    if V < 2:
        problems.append("network needs at least two vertices")
    for name, x in (("source", net.source), ("sink", net.sink)):
        if not 0 <= x < V:
            problems.append(f"{name} {x} out of range")
    if net.source == net.sink:
        problems.append("source and sink coincide")
    if len(net.budgets) != V:
        problems.append(f"expected {V} budgets, got {len(net.budgets)}")
    problems.extend(f"vertex {v}: negative budget {k}" for v, k in enumerate(net.budgets) if k < 0)
    for a, (u, v, c) in enumerate(net.arcs):
        if not 0 <= u < V or not 0 <= v < V:
            problems.append(f"arc {a}: endpoint out of range ({u} -> {v})")
        if c < 0 or (n_caps is not None and c >= n_caps):
            problems.append(f"arc {a}: capacity position {c} out of range")
    return problems


def _require_valid(net: InterdictionNetwork, n_caps: int | None = None) -> None:
    problems = validate_network(net, n_caps)
    if problems:
        raise InputError("invalid network: " + "; ".join(problems))


def _greedy(
    net: InterdictionNetwork, arc_rank: list[int], R: int, trace: list[int] | None = None
) -> tuple[int | None, list[int]]:
    """Width rank of the source after optimal removals (None if cut off), and the removals.

    ``trace`` collects the rank of every extraction, in order.
    """
    V = net.num_vertices
    s, t = net.source, net.sink
    tail = [a[0] for a in net.arcs]
    in_arcs: list[list[int]] = [[] for _ in range(V)]
    for a, (_, v, _) in enumerate(net.arcs):
        in_arcs[v].append(a)
    oracle = net.budget_oracle
    budgets = net.budgets
    removed_at: list[list[int]] = [[] for _ in range(V)]
    removed: list[int] = []
    merged = DisjointSet(V)
    buckets: list[list[int]] = [[] for _ in range(R)]
    for a in in_arcs[t]:
        if tail[a] != t:
            buckets[arc_rank[a]].append(a)
    for r in range(R - 1, -1, -1):
        bucket = buckets[r]
        while bucket:
            a = bucket.pop()
            if trace is not None:
                trace.append(r)
            v = tail[a]
            if merged.same(v, t):
                continue
            mine = removed_at[v]
            if (len(mine) < budgets[v]) if oracle is None else oracle(v, (*mine, a)):
                mine.append(a)
                removed.append(a)
                continue
            if v == s:
                return r, removed
            merged.union(v, t)
            # v's out-arcs are dead once v joins t; arcs into v now reach t, capped at r
            for b in in_arcs[v]:
                u = tail[b]
                if not merged.same(u, t):
                    buckets[min(arc_rank[b], r)].append(b)
    return None, removed


def ordered_solve_interdiction(
    net: InterdictionNetwork, coarse: CoarseInstance, trace: list[int] | None = None
) -> Outcome:
    """Interdicted width of the source reading only rank labels.

    Arcs into the sink's super-node wait in one bucket per rank and are
    drained from the top.  The tail of an extracted arc removes it if its
    budget allows; otherwise the tail's width is fixed at that rank and the
    tail merges into the sink.
    """
    _require_valid(net, len(coarse.rank_of))
    arc_rank = [coarse.rank_of[c] for _, _, c in net.arcs]
    r, _ = _greedy(net, arc_rank, coarse.R, trace)
    return BELOW_ALL if r is None else coarse.answer(r)


def interdiction_problem(net: InterdictionNetwork, n: int) -> OrderedProblem:
    _require_valid(net, n)
    return OrderedProblem(
        structure=net,
        n=n,
        ord_solve=lambda coarse: ordered_solve_interdiction(net, coarse),
        work_bound=max(n, len(net.arcs)),
    )


def _residual_path(
    net: InterdictionNetwork, usable: Callable[[int], bool], removed: set[int]
) -> list[int] | None:
    """BFS for an s-t path over non-removed usable arcs; returns arc ids."""
    out = net.out_arcs()
    parent: dict[int, int | None] = {net.source: None}
    queue = deque([net.source])
    while queue:
        u = queue.popleft()
        if u == net.sink:
            path = []
            while parent[u] is not None:
                a = parent[u]
                path.append(a)
                u = net.arcs[a][0]
            return path[::-1]
        for a in out[u]:
            v = net.arcs[a][1]
            if a not in removed and v not in parent and usable(a):
                parent[v] = a
                queue.append(v)
    return None


def solve_interdiction(
    net: InterdictionNetwork, store: ComparableStore, algorithm: str = "logstar"
) -> tuple[SolveReport, InterdictionSolution]:
    """Meta-solve the width, then rerun the greedy once to recover removals and a witness.

    The rerun uses three ranks (below, at, above the answer), which is enough
    to reproduce an optimal removal set; it is a post-pass and charges no
    comparisons.
    """
    report = solve(interdiction_problem(net, len(store)), store, algorithm)
    if report.outcome is BELOW_ALL:
        _, removed = _greedy(net, [0] * len(net.arcs), 1)
        return report, InterdictionSolution(BELOW_ALL, removed, None)
    p = report.outcome.position
    kp = store.tkey(p)

    def rank3(c: int) -> int:
        if c == p:
            return 1
        return 0 if store.tkey(c) < kp else 2

    arc_rank = [rank3(c) for _, _, c in net.arcs]
    r, removed = _greedy(net, arc_rank, 3)
    assert r == 1, "post-pass disagrees with the meta-solver"
    path = _residual_path(net, lambda a: arc_rank[a] >= 1, set(removed))
    return report, InterdictionSolution(report.outcome, removed, path)


# -- baselines and oracles -----------------------------------------------------


def widest_path(
    net: InterdictionNetwork, store: ComparableStore, removed: Sequence[int] = ()
) -> Outcome:
    """Uninterdicted widest s-t path: binary search on a capacity threshold."""
    gone = set(removed)
    positions = sorted({net.arcs[a][2] for a in range(len(net.arcs)) if a not in gone}, key=store.tkey)

    def reachable(j: int) -> bool:
        kq = store.tkey(positions[j])
        return _residual_path(net, lambda a: store.tkey(net.arcs[a][2]) >= kq, gone) is not None

    if not positions or not reachable(0):
        return BELOW_ALL
    lo, hi = 0, len(positions) - 1  # reachable(lo) holds
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if reachable(mid):
            lo = mid
        else:
            hi = mid - 1
    return Answer(positions[lo])


def _bottleneck(net: InterdictionNetwork, cap_rank: list[int], gone: set[int]) -> int:
    """Max-min Dijkstra over integer capacity ranks; -1 when t is unreachable."""
    out = net.out_arcs()
    best = [-1] * net.num_vertices
    best[net.source] = math.inf
    heap = [(-math.inf, net.source)]
    while heap:
        negw, u = heapq.heappop(heap)
        w = -negw
        if w < best[u]:
            continue
        if u == net.sink:
            return w
        for a in out[u]:
            if a in gone:
                continue
            v = net.arcs[a][1]
            nw = min(w, cap_rank[a])
            if nw > best[v]:
                best[v] = nw
                heapq.heappush(heap, (-nw, v))
    return -1


def _arc_ranks(net: InterdictionNetwork, store: ComparableStore) -> tuple[list[int], list[int]]:
    positions = sorted({c for _, _, c in net.arcs}, key=store.tkey)
    index = {c: i for i, c in enumerate(positions)}
    return [index[c] for _, _, c in net.arcs], positions


def _removal_options(net: InterdictionNetwork, v: int, out: list[int], guard: int) -> list[tuple[int, ...]]:
    if net.budget_oracle is None:
        size = sum(math.comb(len(out), j) for j in range(min(net.budgets[v], len(out)) + 1))
        if size > guard:
            raise GuardExceeded(f"vertex {v} has {size} removal sets")
        return [c for j in range(min(net.budgets[v], len(out)) + 1) for c in itertools.combinations(out, j)]
    if 2 ** len(out) > guard:
        raise GuardExceeded(f"vertex {v} has 2^{len(out)} candidate removal sets")
    return [
        c for j in range(len(out) + 1) for c in itertools.combinations(out, j)
        if net.feasible(v, c)
    ]


def brute_force_interdiction(
    net: InterdictionNetwork, store: ComparableStore, guard: int = DEFAULT_GUARD
) -> Outcome:
    """Minimum residual width over every feasible combination of removals."""
    _require_valid(net, len(store))
    cap_rank, positions = _arc_ranks(net, store)
    out = net.out_arcs()
    # the sink's own out-arcs lie on no simple s-t path
    options = [
        _removal_options(net, v, out[v], guard) if v != net.sink else [()]
        for v in range(net.num_vertices)
    ]
    if math.prod(len(o) for o in options) > guard:
        raise GuardExceeded(f"{math.prod(len(o) for o in options)} removal combinations exceed guard {guard}")
    best = math.inf
    for combo in itertools.product(*options):
        w = _bottleneck(net, cap_rank, set(itertools.chain.from_iterable(combo)))
        if w < best:
            best = w
            if w < 0:
                break
    return BELOW_ALL if best < 0 else Answer(positions[best])


def arc_connectivity_at_most(net: InterdictionNetwork, arc_subset: Sequence[int], k: int) -> bool:
    """Whether at most ``k`` arc-disjoint s-t paths exist using only ``arc_subset``."""
    if k < 0:
        raise InputError("k must be non-negative")
    arcs = [(net.arcs[a][0], net.arcs[a][1]) for a in arc_subset]
    return arc_disjoint_paths(net.num_vertices, arcs, net.source, net.sink, limit=k + 1) <= k


def global_solve(net: InterdictionNetwork, store: ComparableStore, k: int) -> Outcome:
    """Widest-path interdiction with at most ``k`` removals anywhere.

    Binary search for the smallest capacity threshold ``q`` such that the
    arcs above ``q`` have arc connectivity at most ``k``.  Threshold 0 keeps
    every arc; if it already qualifies the interdictor can cut s from t.
    """
    _require_valid(net, len(store))
    if k < 0:
        raise InputError("k must be non-negative")
    positions = store.sort_positions(sorted({c for _, _, c in net.arcs}))
    index = {c: i for i, c in enumerate(positions)}
    cap_rank = [index[c] for _, _, c in net.arcs]
    E = len(net.arcs)

    def qualifies(q: int) -> bool:
        return arc_connectivity_at_most(net, [a for a in range(E) if cap_rank[a] >= q], k)

    lo, hi = 0, len(positions)  # qualifies(len(positions)) holds trivially
    while lo < hi:
        mid = (lo + hi) // 2
        if qualifies(mid):
            hi = mid
        else:
            lo = mid + 1
    return BELOW_ALL if lo == 0 else Answer(positions[lo - 1])


def brute_force_global(
    net: InterdictionNetwork, store: ComparableStore, k: int, guard: int = DEFAULT_GUARD
) -> Outcome:
    _require_valid(net, len(store))
    E = len(net.arcs)
    size = sum(math.comb(E, j) for j in range(min(k, E) + 1))
    if size > guard:
        raise GuardExceeded(f"{size} removal sets exceed guard {guard}")
    cap_rank, positions = _arc_ranks(net, store)
    best = math.inf
    for j in range(min(k, E) + 1):
        for combo in itertools.combinations(range(E), j):
            best = min(best, _bottleneck(net, cap_rank, set(combo)))
    return BELOW_ALL if best < 0 else Answer(positions[best])


def verify_interdiction(
    net: InterdictionNetwork, store: ComparableStore, solution: InterdictionSolution
) -> bool:
    """Feasible removals, matching residual width, and a valid witness path."""
    if len(set(solution.removed)) != len(solution.removed):
        return False
    if any(not 0 <= a < len(net.arcs) for a in solution.removed):
        return False
    for v, arcs in solution.removed_by_vertex(net).items():
        if not net.feasible(v, arcs):
            return False
    if widest_path(net, store, solution.removed) != solution.width:
        return False
    if solution.width is BELOW_ALL:
        return solution.witness_path is None
    path = solution.witness_path
    if not path:
        return False
    gone = set(solution.removed)
    at = net.source
    for a in path:
        if a in gone or not 0 <= a < len(net.arcs) or net.arcs[a][0] != at:
            return False
        at = net.arcs[a][1]
    if at != net.sink:
        return False
    narrowest = min((net.arcs[a][2] for a in path), key=store.tkey)
    return narrowest == solution.width.position
