import pytest

from stratdiff import (DiffusionInstance, InfluenceNetwork, simulate_sequence)
from helpers import full_instance, path_net, star_net


def test_certain_steps_have_zero_variance():
    net = star_net(5)
    inst = full_instance(net)
    seq = tuple(range(6))
    res = simulate_sequence(inst, seq, trials=500, rng_seed=1)
    # every leaf activates with probability 1, so every trial is exact
    assert res.mean == 5.0
    assert res.std_error == 0.0
    assert res.sample_min == 5.0 and res.sample_max == 5.0
    assert res.analytic_time == 5.0


def test_mean_tracks_analytic_time():
    inst = full_instance(path_net(4))
    seq = (0, 1, 2, 3)
    res = simulate_sequence(inst, seq, trials=20000, rng_seed=7)
    assert res.analytic_time == 5.0
    assert res.std_error > 0.0
    assert abs(res.mean - res.analytic_time) <= 4.0 * res.std_error
    assert res.sample_min >= 3.0
    assert res.trials == 20000


def test_partial_sequence_and_fractional_probability():
    net = InfluenceNetwork(3, [(0, 1, 1.0, 1.0), (1, 2, 1.0, 3.0)])
    inst = DiffusionInstance(net, 0, 2)
    res = simulate_sequence(inst, (0, 1), trials=30000, rng_seed=3)
    # p = 1/4, expected waiting time 4
    assert res.analytic_time == 4.0
    assert abs(res.mean - 4.0) <= 4.0 * res.std_error


def test_deterministic_in_seed():
    inst = full_instance(path_net(5))
    seq = tuple(range(5))
    a = simulate_sequence(inst, seq, trials=2000, rng_seed=11)
    b = simulate_sequence(inst, seq, trials=2000, rng_seed=11)
    assert a == b
    c = simulate_sequence(inst, seq, trials=2000, rng_seed=12)
    assert c.mean != a.mean


def test_single_trial():
    res = simulate_sequence(full_instance(path_net(3)), (0, 1, 2),
                            trials=1, rng_seed=0)
    assert res.std_error == 0.0
    assert res.sample_min == res.sample_max == res.mean


def test_rejects_bad_input():
    inst = full_instance(path_net(3))
    with pytest.raises(ValueError):
        simulate_sequence(inst, (0, 1, 2), trials=0)
    # node 2 unreachable: zero-probability step
    net = InfluenceNetwork(3, [(0, 1, 1.0, 1.0), (1, 2, 0.0, 1.0)])
    bad = DiffusionInstance(net, 0, 3)
    with pytest.raises(ValueError):
        simulate_sequence(bad, (0, 1, 2), trials=10)


def test_as_dict_round_trip():
    res = simulate_sequence(full_instance(path_net(3)), (0, 1, 2),
                            trials=50, rng_seed=2)
    d = res.as_dict()
    assert d["trials"] == 50
    assert d["mean"] == res.mean
    assert d["analytic_time"] == 3.0
    assert set(d) == {"mean", "std_error", "trials", "sample_min",
                      "sample_max", "analytic_time"}
