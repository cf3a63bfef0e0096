"""Independent reference implementations used only by the tests.

Nothing here imports solver code: values come from plain enumeration over
paths, removal sets and positional strategies, with keys compared through
``(key, position)`` tuples.  Outcomes are a position or ``None`` for the
disconnected case.
"""

from __future__ import annotations

import itertools


def tk(keys, p):
    return (keys[p], p)


def sort_oracle(keys, subset=None):
    subset = range(len(keys)) if subset is None else subset
    return sorted(subset, key=lambda p: tk(keys, p))


def _simple_paths(num_vertices, arcs, s, t, alive):
    out = [[] for _ in range(num_vertices)]
    for a in alive:
        out[arcs[a][0]].append(a)
    stack = [(s, (), frozenset([s]))]
    while stack:
        u, path, seen = stack.pop()
        if u == t:
            yield path
            continue
        for a in out[u]:
            v = arcs[a][1]
            if v not in seen:
                stack.append((v, path + (a,), seen | {v}))


def widest(net, keys, removed=()):
    """Best path bottleneck as a capacity position, or None."""
    gone = set(removed)
    alive = [a for a in range(len(net.arcs)) if a not in gone]
    best = None
    for path in _simple_paths(net.num_vertices, net.arcs, net.source, net.sink, alive):
        if not path:
            continue
        bottleneck = min((net.arcs[a][2] for a in path), key=lambda p: tk(keys, p))
        if best is None or tk(keys, bottleneck) > tk(keys, best):
            best = bottleneck
    return best


def _below_or_key(keys, outcome):
    return (0,) if outcome is None else (1, *tk(keys, outcome))


def interdiction_value(net, keys):
    out = [[] for _ in range(net.num_vertices)]
    for a, (u, _, _) in enumerate(net.arcs):
        out[u].append(a)
    choices = []
    for v in range(net.num_vertices):
        opts = [
            combo
            for size in range(len(out[v]) + 1)
            for combo in itertools.combinations(out[v], size)
            if net.feasible(v, combo)
        ]
        choices.append(opts)
    best, best_key = None, None
    for combo in itertools.product(*choices):
        w = widest(net, keys, itertools.chain.from_iterable(combo))
        key = _below_or_key(keys, w)
        if best_key is None or key < best_key:
            best, best_key = w, key
    return best


def global_value(net, keys, k):
    best, best_key = None, None
    for size in range(min(k, len(net.arcs)) + 1):
        for combo in itertools.combinations(range(len(net.arcs)), size):
            w = widest(net, keys, combo)
            key = _below_or_key(keys, w)
            if best_key is None or key < best_key:
                best, best_key = w, key
    return best


def _play_value(game, keys, choice):
    seen, heaviest, v = set(), None, game.start
    while v not in seen:
        seen.add(v)
        a = choice[v]
        w = game.arcs[a][2]
        if heaviest is None or tk(keys, w) > tk(keys, heaviest):
            heaviest = w
        v = game.arcs[a][1]
    return heaviest


def game_value(game, keys):
    """Max over Max positional strategies of min over Min positional ones."""
    out = [[] for _ in game.owners]
    for a, (u, _, _) in enumerate(game.arcs):
        out[u].append(a)
    maxers = [v for v, o in enumerate(game.owners) if o == "max"]
    miners = [v for v, o in enumerate(game.owners) if o == "min"]
    best = None
    for smax in itertools.product(*(out[v] for v in maxers)):
        worst = None
        for smin in itertools.product(*(out[v] for v in miners)):
            choice = dict(zip(maxers, smax))
            choice.update(zip(miners, smin))
            val = _play_value(game, keys, choice)
            if worst is None or tk(keys, val) < tk(keys, worst):
                worst = val
        if best is None or tk(keys, worst) > tk(keys, best):
            best = worst
    return best
