import pytest

from conftest import min_two_loops, parallel, pos, small_games, small_networks, three_node_game
from minmax.circuit import (
    MinMaxCircuit,
    MonotoneMap,
    check_commutation,
    commutation_suite,
    evaluate,
    game_to_circuit,
    interdiction_to_circuit,
    random_monotone_map,
)
from minmax.game import MAX, MIN, MaxPayoffGame, attractor_value_oracle
from minmax.interdiction import InterdictionNetwork, solve_interdiction
from minmax.order import GuardExceeded, InputError


def min_max_x1x2_x3():
    c = MinMaxCircuit(3)
    c.output = c.add(MIN, [c.add(MAX, [0, 1]), 2])
    return c


def test_evaluate_examples():
    assert evaluate(min_max_x1x2_x3(), [3, 5, 2]) == 2
    assert evaluate(MinMaxCircuit(1), [7]) == 7
    c = MinMaxCircuit(3)
    c.output = c.add(MAX, [c.add(MIN, [0, 1]), c.add(MIN, [1, 2])])
    assert evaluate(c, [1, 9, 4]) == 4


def test_evaluate_arity_mismatch():
    with pytest.raises(InputError):
        evaluate(MinMaxCircuit(2), [1])


def test_circuit_rejects_forward_reference():
    with pytest.raises(InputError):
        MinMaxCircuit(2, [(MIN, (0, 2))], 2)


def test_commutation_examples():
    c = min_max_x1x2_x3()
    values = [3, 5, 2]
    assert check_commutation(c, values, MonotoneMap([0, 1, 2]))
    assert check_commutation(c, values, MonotoneMap([4, 4, 4]))
    # ranks of (2, 3, 5) map to (10, 10, 20)
    assert check_commutation(c, values, MonotoneMap([10, 10, 20]))


def test_monotone_map_rejects_decreasing_table():
    with pytest.raises(InputError):
        MonotoneMap([2, 1])


def test_random_monotone_map():
    assert len(random_monotone_map(3, 1).table) == 1
    t = random_monotone_map(42, 5).table
    assert t == sorted(t) and random_monotone_map(42, 5).table == t
    assert any(len(set(random_monotone_map(s, 5).table)) < 5 for s in range(20))


def test_interdiction_circuit_examples():
    net, keys = parallel(1)
    sentinel = [min(keys) - 1]
    assert evaluate(interdiction_to_circuit(net, 2), keys + sentinel) == 4
    single = InterdictionNetwork(2, [(0, 1, 0)], 0, 1, [0, 0])
    assert evaluate(interdiction_to_circuit(single, 1), [5, 0]) == 5
    single.budgets = [1, 0]
    assert evaluate(interdiction_to_circuit(single, 1), [5, 0]) == 0


def test_game_circuit_examples():
    loop = MaxPayoffGame([MIN], [(0, 0, 0)], 0)
    c = game_to_circuit(loop, 1)
    assert c.gates == [] and evaluate(c, [7]) == 7
    game, keys = min_two_loops()
    assert evaluate(game_to_circuit(game, 2), keys) == 2
    game, keys = three_node_game()
    assert evaluate(game_to_circuit(game, 4), keys) == 7


def test_circuit_guards():
    game = MaxPayoffGame([MAX] * 4, [(u, v, 4 * u + v) for u in range(4) for v in range(4)], 0)
    with pytest.raises(GuardExceeded):
        game_to_circuit(game, 16, guard=100)
    net = InterdictionNetwork(4, [(u, v, 4 * u + v) for u in range(4) for v in range(4) if u != v], 0, 3, [2] * 4)
    with pytest.raises(GuardExceeded):
        interdiction_to_circuit(net, 16, guard=10)


def test_circuits_agree_with_solvers():
    for inst in small_games(51, 150, max_v=5, max_e=9):
        keys = [float(x) for x in inst.literals]
        c = game_to_circuit(inst.structure, len(keys))
        assert evaluate(c, keys) == keys[attractor_value_oracle(inst.structure, inst.store()).position]
    for inst in small_networks(52, 150):
        keys = [float(x) for x in inst.literals]
        c = interdiction_to_circuit(inst.structure, len(keys))
        rep, _ = solve_interdiction(inst.structure, inst.store(), "logstar")
        got = evaluate(c, keys + [min(keys) - 1.0])
        p = pos(rep.outcome)
        assert got == (min(keys) - 1.0 if p is None else keys[p])


def test_commutation_suite_small():
    assert commutation_suite(seed=3, circuits=100) == []

