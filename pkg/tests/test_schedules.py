from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rendezvous import schedules as sch
from rendezvous.strings import encode_async


@pytest.mark.parametrize("n, L", [(2, 12), (4, 12), (16, 18), (256, 24), (65536, 26)])
def test_cycle_length(n, L):
    assert sch.schedule_cycle_length(n) == L


def test_cycle_length_formula():
    for n in range(2, 2000, 37):
        lg = max(1, (n - 1).bit_length())
        m = max(1, (lg - 1).bit_length())
        assert sch.schedule_cycle_length(n) == 2 * m + 4 * max(1, (2 * m - 1).bit_length()) + 6


def test_pair_schedule_period_and_channels():
    s = sch.pair_schedule({1, 2}, 4)
    assert s.period == sch.schedule_cycle_length(4)
    assert set(s.cycle) == {1, 2}
    bits = "".join("0" if c == 1 else "1" for c in s.cycle)
    assert bits == encode_async(sch.color_string(1, 2, 4))


def test_pair_period_uniform():
    n = 16
    assert {sch.pair_schedule(e, n).period for e in combinations(range(1, n + 1), 2)} == {18}


def test_singletons_are_constant():
    s = sch.pair_schedule({5}, 8)
    assert s.period == 1 and set(s.slots(0, 50)) == {5}
    assert sch.general_schedule({5}, 8).channel_at(123) == 5
    assert sch.randomized_baseline([3], seed=1).channel_at(9) == 3


def test_pair_rejects_big_sets():
    with pytest.raises(ValueError):
        sch.pair_schedule({1, 2, 3}, 4)
    with pytest.raises(ValueError):
        sch.pair_schedule({1, 9}, 8)
    with pytest.raises(ValueError):
        sch.pair_schedule(set(), 8)


@pytest.mark.parametrize("k, primes", [(2, (2, 3)), (4, (5, 7)), (10, (11, 13)), (3, (3, 5))])
def test_two_primes(k, primes):
    assert sch.two_primes_in(k) == primes


def test_two_primes_range():
    for k in range(2, 300):
        p, q = sch.two_primes_in(k)
        assert k <= p < q <= 3 * k
        assert all(p % d for d in range(2, p)) and all(q % d for d in range(2, q))


def test_general_epoch_zero_constant():
    s = sch.general_schedule({1, 2, 3}, 8)
    L = sch.schedule_cycle_length(8)
    assert set(s.slots(0, 2 * L)) == {1}


def test_general_period_and_epochs():
    cs = (2, 5, 7, 11)
    n = 16
    s = sch.general_schedule(cs, n)
    p, q = sch.two_primes_in(len(cs))
    L = sch.schedule_cycle_length(n)
    assert s.period == 2 * L * p * q
    for e in range(p * q):
        x, y = sch.epoch_pair(cs, e, p, q)
        block = s.slots(2 * L * e, 2 * L)
        expected = {x} if x == y else {x, y}
        assert set(block) == expected


def test_general_bound():
    assert sch.general_bound(3, 3, 16) == 18 * 9 * 18


def test_sweep_baseline():
    s = sch.sweep_baseline({2, 5}, 8)
    assert list(s.slots(0, 8)) == [0, 2, 0, 0, 5, 0, 0, 0]
    assert s.period == 8


def test_symmetric_wrap_constant():
    s = sch.symmetric_wrap(sch.Schedule.constant(5), [5])
    assert s.period == 1 and s.channel_at(77) == 5


def test_symmetric_wrap_layout():
    inner = sch.pair_schedule({3, 6}, 8)
    s = sch.symmetric_wrap(inner, {3, 6})
    assert s.period == 12 * inner.period
    for i in range(inner.period):
        block = s.slots(12 * i, 12)
        c1 = inner.channel_at(i)
        expected = np.where(sch.SYMMETRIC_PATTERN == 0, 3, c1)
        assert (block == expected).all()


def test_symmetric_wrap_rule_inner():
    inner = sch.randomized_baseline([1, 4, 9], seed=5)
    s = sch.symmetric_wrap(inner, [1, 4, 9])
    assert s.period is None
    t = np.arange(0, 240)
    got = s.slots(0, 240)
    assert (got[sch.SYMMETRIC_PATTERN[t % 12] == 0] == 1).all()
    assert (got[5::12] == inner.slots(0, 20)).all()


def test_randomized_baseline_deterministic():
    a = sch.randomized_baseline([1, 2, 3, 4], seed=11).slots(100, 500)
    b = sch.randomized_baseline([1, 2, 3, 4], seed=11).slots(100, 500)
    c = sch.randomized_baseline([1, 2, 3, 4], seed=12).slots(100, 500)
    assert (a == b).all() and not (a == c).all()
    assert set(a) == {1, 2, 3, 4}


def test_schedule_minimal_period():
    s = sch.Schedule((1, 2), cycle=[1, 2, 1, 2, 1, 2])
    assert s.period == 2
    with pytest.raises(ValueError):
        sch.Schedule((1,), cycle=[])
    with pytest.raises(ValueError):
        sch.Schedule((1,))


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(1, 32), min_size=1, max_size=6), st.integers(0, 10**6))
def test_general_schedule_in_set_and_periodic(channels, t):
    s = sch.general_schedule(channels, 32)
    assert s.channel_at(t) in channels
    assert s.channel_at(t) == s.channel_at(t + s.period)
