"""Line-oriented instance files and seeded random instance generators.

Game file::

    game V E
    node ID min|max        (V lines, IDs 0..V-1)
    arc TAIL HEAD WEIGHT   (E lines)
    start ID

Network file::

    network V E
    budget ID K            (optional, default 0)
    arc TAIL HEAD CAPACITY (E lines)
    source ID
    sink ID

``#`` starts a comment.  Weights and capacities are decimal literals; the
i-th arc's value becomes comparable position i.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path

from minmax.game import MAX, MIN, MaxPayoffGame, validate_game
from minmax.interdiction import InterdictionNetwork, validate_network
from minmax.order import ComparableStore

_DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)")


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(ValueError):
    pass


@dataclass
class Instance:
    kind: str  # "game" or "network"
    structure: MaxPayoffGame | InterdictionNetwork
    literals: list[str]

    def keys(self) -> list[Decimal]:
        return [Decimal(x) for x in self.literals]

    def store(self) -> ComparableStore:
        return ComparableStore(self.keys())


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {tok!r}") from None


def _literal(tok: str, line: int) -> str:
    if not _DECIMAL.fullmatch(tok):
        raise ParseError(line, f"{tok!r} is not a decimal literal")
    return tok


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def parse_text(text: str) -> Instance:
    lines = list(_lines(text))
    if not lines:
        raise ParseError(1, "empty instance file")
    no, head = lines[0]
    if len(head) != 3 or head[0] not in ("game", "network"):
        raise ParseError(no, "expected header 'game V E' or 'network V E'")
    kind = head[0]
    V = _int(head[1], no, "V")
    E = _int(head[2], no, "E")
    if V < 0 or E < 0:
        raise ParseError(no, "sizes must be non-negative")
    owners: list[str | None] = [None] * V
    budgets = [0] * V
    arcs: list[tuple[int, int, int]] = []
    literals: list[str] = []
    singles: dict[str, int] = {}
    allowed = {"game": {"node", "arc", "start"}, "network": {"budget", "arc", "source", "sink"}}[kind]

    def node_id(tok: str, line: int) -> int:
        v = _int(tok, line, "node id")
        if not 0 <= v < V:
            raise ParseError(line, f"node {v} is not in 0..{V - 1}")
        return v

    for no, toks in lines[1:]:
        word = toks[0]
        if word not in allowed:
            raise ParseError(no, f"unexpected directive {word!r} in a {kind} file")
        if word == "arc":
            if len(toks) != 4:
                raise ParseError(no, "expected 'arc TAIL HEAD VALUE'")
            arcs.append((node_id(toks[1], no), node_id(toks[2], no), len(literals)))
            literals.append(_literal(toks[3], no))
        elif word == "node":
            if len(toks) != 3 or toks[2] not in (MIN, MAX):
                raise ParseError(no, "expected 'node ID min|max'")
            v = node_id(toks[1], no)
            if owners[v] is not None:
                raise ParseError(no, f"node {v} declared twice")
            owners[v] = toks[2]
        elif word == "budget":
            if len(toks) != 3:
                raise ParseError(no, "expected 'budget ID K'")
            budgets[node_id(toks[1], no)] = _int(toks[2], no, "budget")
        else:
            if len(toks) != 2:
                raise ParseError(no, f"expected '{word} ID'")
            if word in singles:
                raise ParseError(no, f"'{word}' given twice")
            singles[word] = node_id(toks[1], no)
    last = lines[-1][0]
    if len(arcs) != E:
        raise ParseError(last, f"header promises {E} arcs, found {len(arcs)}")
    for word in sorted(allowed - {"node", "arc", "budget"}):
        if word not in singles:
            raise ParseError(last, f"missing '{word}' line")
    if kind == "game":
        missing = [v for v, o in enumerate(owners) if o is None]
        if missing:
            raise ParseError(last, f"nodes without a 'node' line: {missing[:5]}")
        inst = Instance("game", MaxPayoffGame(owners, arcs, singles["start"]), literals)
        problems = validate_game(inst.structure, len(literals))
    else:
        net = InterdictionNetwork(V, arcs, singles["source"], singles["sink"], budgets)
        inst = Instance("network", net, literals)
        problems = validate_network(net, len(literals))
    if problems:
        raise ValidationError("; ".join(problems))
    return inst


def parse_instance(path: str | Path) -> Instance:
    return parse_text(Path(path).read_text())


def format_instance(inst: Instance) -> str:
    s = inst.structure
    lines = []
    if inst.kind == "game":
        lines.append(f"game {s.num_nodes} {len(s.arcs)}")
        lines.extend(f"node {v} {o}" for v, o in enumerate(s.owners))
        lines.extend(f"arc {u} {v} {inst.literals[w]}" for u, v, w in s.arcs)
        lines.append(f"start {s.start}")
    else:
        lines.append(f"network {s.num_vertices} {len(s.arcs)}")
        lines.extend(f"budget {v} {k}" for v, k in enumerate(s.budgets) if k)
        lines.extend(f"arc {u} {v} {inst.literals[c]}" for u, v, c in s.arcs)
        lines.append(f"source {s.source}")
        lines.append(f"sink {s.sink}")
    return "\n".join(lines) + "\n"


def _values(rng: random.Random, count: int) -> list[str]:
    # distinct by construction: three decimals drawn without replacement
    return [f"{x // 1000}.{x % 1000:03d}" for x in rng.sample(range(10**9), count)]


def random_game(rng: random.Random, V: int, E: int) -> Instance:
    """Sink-free game: every node gets one mandatory out-arc, the rest are random."""
    if V < 1 or E < V:
        raise ValueError(f"need 1 <= V <= E, got V={V}, E={E}")
    owners = [rng.choice((MIN, MAX)) for _ in range(V)]
    pairs = [(v, rng.randrange(V)) for v in range(V)]
    pairs += [(rng.randrange(V), rng.randrange(V)) for _ in range(E - V)]
    rng.shuffle(pairs)
    arcs = [(u, v, i) for i, (u, v) in enumerate(pairs)]
    return Instance("game", MaxPayoffGame(owners, arcs, 0), _values(rng, E))


def random_network(
    rng: random.Random, V: int, E: int, budget_max: int = 1, ensure_path: bool = False
) -> Instance:
    """Source 0, sink V-1, no self-loops; ``ensure_path`` plants an s-t path first."""
    if V < 2 or E < 1:
        raise ValueError(f"need V >= 2 and E >= 1, got V={V}, E={E}")
    s, t = 0, V - 1
    pairs: list[tuple[int, int]] = []
    if ensure_path:
        hops = rng.randint(0, min(V - 2, E - 1))
        walk = [s, *rng.sample(range(1, V - 1), hops), t]
        pairs += list(zip(walk, walk[1:]))
    while len(pairs) < E:
        u, v = rng.randrange(V), rng.randrange(V)
        if u != v:
            pairs.append((u, v))
    rng.shuffle(pairs)
    arcs = [(u, v, i) for i, (u, v) in enumerate(pairs)]
    budgets = [rng.randint(0, budget_max) for _ in range(V)]
    return Instance("network", InterdictionNetwork(V, arcs, s, t, budgets), _values(rng, E))
