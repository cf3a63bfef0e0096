"""Unit-capacity Dinic for counting arc-disjoint s-t paths."""

from __future__ import annotations

from collections import deque
from typing import Iterable


def arc_disjoint_paths(
    num_vertices: int,
    arcs: Iterable[tuple[int, int]],
    s: int,
    t: int,
    limit: int | None = None,
) -> int:
    """Maximum number of arc-disjoint ``s``-``t`` paths, capped at ``limit``.

    Each arc has capacity one.  Phases build a BFS level graph and push a
    blocking flow through it, stopping as soon as the flow reaches ``limit``.
    """
    head: list[int] = []
    cap: list[int] = []
    adj: list[list[int]] = [[] for _ in range(num_vertices)]
    for u, v in arcs:
        adj[u].append(len(head))
        head.append(v)
        cap.append(1)
        adj[v].append(len(head))
        head.append(u)
        cap.append(0)
    if limit is None:
        limit = len(adj[s])
    flow = 0
    if s == t:
        return limit
    while flow < limit:
        level = [-1] * num_vertices
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                if cap[e] and level[head[e]] < 0:
                    level[head[e]] = level[u] + 1
                    queue.append(head[e])
        if level[t] < 0:
            break
        it = [0] * num_vertices
        while flow < limit:
            # find one augmenting path in the level graph, retreating from dead ends
            path: list[int] = []
            u = s
            while u != t:
                edges = adj[u]
                while it[u] < len(edges):
                    e = edges[it[u]]
                    if cap[e] and level[head[e]] == level[u] + 1:
                        break
                    it[u] += 1
                if it[u] == len(edges):
                    if not path:
                        break
                    level[u] = -1
                    e = path.pop()
                    u = head[e ^ 1]
                    it[u] += 1
                    continue
                e = edges[it[u]]
                path.append(e)
                u = head[e]
            if u != t:
                break
            for e in path:
                cap[e] -= 1
                cap[e ^ 1] += 1
            flow += 1
    return flow
