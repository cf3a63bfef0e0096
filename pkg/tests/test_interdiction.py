import copy
import random

import pytest

from conftest import diamond, parallel, pos, small_networks
from minmax.instances import random_network
from minmax.interdiction import (
    InterdictionNetwork,
    InterdictionSolution,
    arc_connectivity_at_most,
    brute_force_global,
    brute_force_interdiction,
    global_solve,
    ordered_solve_interdiction,
    solve_interdiction,
    validate_network,
    verify_interdiction,
    widest_path,
)
from minmax.meta import ALGORITHMS, BELOW_ALL, Answer
from minmax.order import ComparableStore, GuardExceeded, InputError
from oracles import global_value, interdiction_value, widest
from test_game import full_coarse


def path_net():
    return InterdictionNetwork(3, [(0, 1, 0), (1, 2, 1)], 0, 2, [0, 0, 0]), [4, 7]


def test_validate_examples():
    assert validate_network(InterdictionNetwork(2, [(0, 1, 0)], 0, 1)) == []
    assert any("coincide" in d for d in validate_network(InterdictionNetwork(2, [(0, 1, 0)], 1, 1)))
    assert any("negative" in d for d in validate_network(InterdictionNetwork(2, [(0, 1, 0)], 0, 1, [-1, 0])))


def test_ordered_examples():
    net, keys = path_net()
    assert ordered_solve_interdiction(net, full_coarse(keys)) == Answer(0)
    net, keys = parallel(1)
    assert ordered_solve_interdiction(net, full_coarse(keys)) == Answer(0)
    net, keys = parallel(2)
    assert ordered_solve_interdiction(net, full_coarse(keys)) is BELOW_ALL


def test_ordered_rejects_invalid_network():
    with pytest.raises(InputError):
        ordered_solve_interdiction(InterdictionNetwork(2, [(0, 1, 0)], 0, 0), full_coarse([1]))


def test_everything_removable_disconnects():
    for inst in small_networks(31, 100):
        net = copy.deepcopy(inst.structure)
        out = net.out_arcs()
        net.budgets = [len(o) for o in out]
        if not out[net.source]:
            continue
        for name in ALGORITHMS:
            rep, sol = solve_interdiction(net, inst.store(), name)
            assert rep.outcome is BELOW_ALL
            assert verify_interdiction(net, inst.store(), sol)


def test_widest_path_examples():
    net = InterdictionNetwork(2, [(0, 1, 0)], 0, 1)
    assert widest_path(net, ComparableStore([5])) == Answer(0)
    net, keys = path_net()
    assert widest_path(net, ComparableStore(keys)) == Answer(0)


def test_brute_force_examples():
    net, keys = parallel(1)
    assert brute_force_interdiction(net, ComparableStore(keys)) == Answer(0)
    net, keys = diamond()
    assert brute_force_interdiction(net, ComparableStore(keys)) == Answer(2)


def test_arc_connectivity_examples():
    net, _ = diamond()
    assert arc_connectivity_at_most(net, [], 0)
    assert not arc_connectivity_at_most(net, range(4), 1)
    assert arc_connectivity_at_most(net, range(4), 2)


def test_global_examples():
    net, keys = diamond()
    store = ComparableStore(keys)
    assert global_solve(net, store, 1) == Answer(3) == brute_force_global(net, store, 1)
    assert global_solve(net, store, 2) is BELOW_ALL is brute_force_global(net, store, 2)
    assert global_solve(net, store, 0) == widest_path(net, store) == brute_force_global(net, store, 0)


def test_global_rejects_negative_k():
    net, keys = diamond()
    with pytest.raises(InputError):
        global_solve(net, ComparableStore(keys), -1)


def test_guard():
    rng = random.Random(1)
    net = random_network(rng, 6, 30, budget_max=3).structure
    with pytest.raises(GuardExceeded):
        brute_force_interdiction(net, ComparableStore(list(range(30))), guard=10)
    with pytest.raises(GuardExceeded):
        brute_force_global(net, ComparableStore(list(range(30))), 3, guard=10)


def test_brute_force_matches_path_enumeration():
    for inst in small_networks(32, 300):
        keys = inst.keys()
        assert pos(brute_force_interdiction(inst.structure, inst.store())) == interdiction_value(inst.structure, keys)


def test_global_matches_enumeration():
    for inst in small_networks(33, 150, max_e=8):
        keys = inst.keys()
        for k in (0, 1, 2):
            assert pos(global_solve(inst.structure, inst.store(), k)) == global_value(inst.structure, keys, k)


def test_budget_zero_equals_widest_path():
    for inst in small_networks(34, 1000, budget_max=0):
        net, store = inst.structure, inst.store()
        rep, _ = solve_interdiction(net, store, "logstar")
        assert rep.outcome == widest_path(net, inst.store())
    for inst in small_networks(35, 100, budget_max=0):
        assert pos(widest_path(inst.structure, inst.store())) == widest(inst.structure, inst.keys())


def test_extraction_ranks_never_increase():
    rng = random.Random(36)
    for _ in range(200):
        inst = random_network(rng, rng.randint(2, 12), rng.randint(1, 40), 2, ensure_path=True)
        trace = []
        ordered_solve_interdiction(inst.structure, full_coarse(inst.keys()), trace)
        assert trace == sorted(trace, reverse=True)


def test_width_is_monotone_in_budgets():
    rng = random.Random(37)
    for inst in small_networks(38, 200):
        net, store = inst.structure, inst.store()
        before = brute_force_interdiction(net, store)
        bigger = copy.deepcopy(net)
        bigger.budgets[rng.randrange(net.num_vertices)] += 1
        after = brute_force_interdiction(bigger, store)
        if before is BELOW_ALL:
            assert after is BELOW_ALL
        elif after is not BELOW_ALL:
            assert store.tkey(after.position) <= store.tkey(before.position)
        for k in (0, 1):
            lo, hi = global_solve(net, store, k), global_solve(net, store, k + 1)
            assert hi is BELOW_ALL or (lo is not BELOW_ALL and store.tkey(hi.position) <= store.tkey(lo.position))


def test_custom_budget_oracle():
    # at most two removals per vertex, and arcs with an even id are protected
    def oracle(v, removed):
        return len(removed) <= 2 and all(a % 2 for a in removed)

    for inst in small_networks(39, 300):
        net = copy.deepcopy(inst.structure)
        net.budget_oracle = oracle
        keys = inst.keys()
        expected = interdiction_value(net, keys)
        assert pos(brute_force_interdiction(net, inst.store())) == expected
        for name in ALGORITHMS:
            rep, sol = solve_interdiction(net, inst.store(), name)
            assert pos(rep.outcome) == expected
            assert verify_interdiction(net, inst.store(), sol)


def test_solutions_verify():
    for inst in small_networks(40, 300):
        for name in ALGORITHMS:
            _, sol = solve_interdiction(inst.structure, inst.store(), name)
            assert verify_interdiction(inst.structure, inst.store(), sol)


def test_verify_rejects_bad_solutions():
    net, keys = parallel(1)
    store = ComparableStore(keys)
    assert verify_interdiction(net, store, InterdictionSolution(Answer(0), [1], [0]))
    # two removals at s exceed its budget of one
    assert not verify_interdiction(net, store, InterdictionSolution(BELOW_ALL, [0, 1], None))
    net2, _ = parallel(2)
    assert not verify_interdiction(net2, store, InterdictionSolution(Answer(0), [0, 1], [0]))
    assert not verify_interdiction(net, store, InterdictionSolution(Answer(1), [1], [1]))


def test_solver_does_not_mutate_input():
    inst = next(small_networks(41, 1))
    snapshot = copy.deepcopy(inst.structure)
    solve_interdiction(inst.structure, inst.store(), "logstar")
    global_solve(inst.structure, inst.store(), 1)
    assert inst.structure == snapshot
