from __future__ import annotations

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from minmax.game import MAX, MIN, MaxPayoffGame  # noqa: E402
from minmax.instances import random_game, random_network  # noqa: E402
from minmax.interdiction import InterdictionNetwork  # noqa: E402
from minmax.meta import BELOW_ALL  # noqa: E402


def pos(outcome):
    """Outcome as a position, or None for the disconnected sentinel."""
    return None if outcome is BELOW_ALL else outcome.position


def three_node_game():
    # s (Max) -> u (Min, w=3), s -> v (Min, w=7); u, v self-loops of weight 1 and 2
    keys = [3, 7, 1, 2]
    game = MaxPayoffGame([MAX, MIN, MIN], [(0, 1, 0), (0, 2, 1), (1, 1, 2), (2, 2, 3)], 0)
    return game, keys


def min_two_loops():
    return MaxPayoffGame([MIN], [(0, 0, 0), (0, 0, 1)], 0), [2, 5]


def diamond(budgets=None):
    # s=0, a=1, b=2, t=3; caps s->a 9, s->b 8, a->t 7, b->t 6
    keys = [9, 8, 7, 6]
    net = InterdictionNetwork(4, [(0, 1, 0), (0, 2, 1), (1, 3, 2), (2, 3, 3)], 0, 3, budgets or [0] * 4)
    return net, keys


def parallel(k_s):
    return InterdictionNetwork(2, [(0, 1, 0), (0, 1, 1)], 0, 1, [k_s, 0]), [4, 7]


def small_games(seed, count, max_v=8, max_e=20):
    rng = random.Random(seed)
    for _ in range(count):
        V = rng.randint(1, max_v)
        E = rng.randint(V, max(V, max_e))
        yield random_game(rng, V, E)


def small_networks(seed, count, max_v=6, max_e=12, budget_max=2):
    rng = random.Random(seed)
    for i in range(count):
        V = rng.randint(2, max_v)
        E = rng.randint(1, max_e)
        yield random_network(rng, V, E, rng.randint(0, budget_max), ensure_path=i % 2 == 0)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.line(number))
