import math
import random

import pytest

from stratdiff import (DiffusionInstance, InfluenceNetwork, dp_optimal,
                       greedy_sequence, majority_sequence, make_gk,
                       sequence_time, strategy_a_gk)
from helpers import full_instance, path_net


def test_greedy_prefers_fast_nodes():
    net = InfluenceNetwork(3, [(0, 1, 1, 1), (0, 2, 3, 1), (1, 2, 1, 1)])
    res = greedy_sequence(full_instance(net))
    # node 2 activates at 4/3, node 1 only at 2.0
    assert res.sequence == (0, 2, 1)
    assert abs(res.total_time - (4.0 / 3.0 + 1.0)) <= 1e-12


def test_majority_counts_active_neighbors():
    net = InfluenceNetwork(3, [(0, 1, 1, 1), (0, 2, 3, 1), (1, 2, 1, 1)])
    res = majority_sequence(full_instance(net))
    # both have one active neighbor at first, tie goes to the smaller id
    assert res.sequence == (0, 1, 2)
    assert res.total_time == 3.0


def test_greedy_on_path():
    res = greedy_sequence(full_instance(path_net(6)))
    assert res.sequence == (0, 1, 2, 3, 4, 5)
    assert res.total_time == 2.0 * 4 + 1.0


def test_greedy_on_g2():
    res = greedy_sequence(full_instance(make_gk(2).network))
    # after three hubs the remaining hub beats both bridges (3/4 vs 1/2)
    assert res.sequence == (0, 1, 2, 3, 5, 4)
    assert abs(res.total_time - 25.0 / 3.0) <= 1e-12
    back = sequence_time(make_gk(2), res.sequence)
    assert back.total_time == res.total_time


def test_majority_on_g2():
    res = majority_sequence(full_instance(make_gk(2).network))
    assert res.sequence == (0, 1, 2, 5, 3, 4)
    assert res.total_time == 8.0


def test_heuristics_respect_z():
    inst = DiffusionInstance(path_net(6), 0, 3)
    g = greedy_sequence(inst)
    m = majority_sequence(inst)
    assert len(g.sequence) == 3 and len(m.sequence) == 3
    assert g.total_time == 4.0


def test_heuristics_infeasible():
    # node 2 has zero incoming influence
    net = InfluenceNetwork(3, [(0, 1, 1, 1), (1, 2, 0, 1)])
    inst = DiffusionInstance(net, 0, 3)
    assert not greedy_sequence(inst).feasible
    assert not majority_sequence(inst).feasible


def test_heuristics_reject_invalid_instance():
    with pytest.raises(ValueError):
        greedy_sequence(DiffusionInstance(path_net(3), 5, 3))


def test_strategy_a_exact_total():
    for k in (1, 2, 3, 5):
        res = strategy_a_gk(k)
        assert res.total_time == float(3 * k * k - 2 * k)
        inst = make_gk(k)
        assert len(res.sequence) == inst.network.node_count
        back = sequence_time(inst, res.sequence)
        assert back.total_time == res.total_time


def test_strategy_a_accepts_matching_instance():
    res = strategy_a_gk(2, make_gk(2))
    assert res.total_time == 8.0


def test_strategy_a_rejects_other_instances():
    with pytest.raises(ValueError):
        strategy_a_gk(2, make_gk(3))
    with pytest.raises(ValueError):
        strategy_a_gk(2, full_instance(path_net(6)))


def test_bounds_against_strategy_a():
    for k in range(2, 6):
        inst = make_gk(k)
        h = sum(1.0 / i for i in range(1, k + 1))
        g = greedy_sequence(inst).total_time
        m = majority_sequence(inst).total_time
        a = strategy_a_gk(k).total_time
        assert g >= k * k * h - 1e-9
        assert m >= k * k * (h - 1.0) - 1e-9
        assert a == float(3 * k * k - 2 * k)
        assert g >= a and m >= a


def test_bounds_hold_under_random_tie_breaks():
    for k in (2, 4):
        inst = make_gk(k)
        h = sum(1.0 / i for i in range(1, k + 1))
        for s in range(10):
            rng = random.Random(s)
            g = greedy_sequence(inst, rng=rng).total_time
            m = majority_sequence(inst, rng=rng).total_time
            assert g >= k * k * h - 1e-9
            assert m >= k * k * (h - 1.0) - 1e-9


def test_ratio_grows_with_k():
    gr, mr = [], []
    for k in range(2, 6):
        inst = make_gk(k)
        a = strategy_a_gk(k).total_time
        gr.append(greedy_sequence(inst).total_time / a)
        mr.append(majority_sequence(inst).total_time / a)
    assert all(b >= a - 1e-12 for a, b in zip(gr, gr[1:]))
    assert all(b >= a - 1e-12 for a, b in zip(mr, mr[1:]))
    assert gr[-1] > gr[0]


def test_heuristics_never_beat_dp():
    for s in range(15):
        rng = random.Random(s)
        n = rng.randrange(3, 8)
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if v == u + 1 or rng.random() < 0.35:
                    edges.append((u, v, rng.choice([0.5, 1.0, 2.0]),
                                  rng.choice([0.5, 1.0, 2.0])))
        net = InfluenceNetwork(n, edges)
        inst = full_instance(net, seed=rng.randrange(n))
        opt = dp_optimal(inst).total_time
        assert greedy_sequence(inst).total_time >= opt - 1e-9
        assert majority_sequence(inst).total_time >= opt - 1e-9


def test_heuristics_deterministic():
    inst = make_gk(3)
    assert greedy_sequence(inst) == greedy_sequence(inst)
    assert majority_sequence(inst) == majority_sequence(inst)
    a = greedy_sequence(inst, rng=random.Random(7))
    b = greedy_sequence(inst, rng=random.Random(7))
    assert a == b
