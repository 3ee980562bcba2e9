"""Channel-hopping schedule generators.

A :class:`Schedule` maps local slot index ``t >= 0`` to a channel. Periodic
schedules hold one full cycle as an int array; aperiodic ones (the
randomized baseline, beacon-driven hopping) hold a vectorized rule. Both
expose ``channel_at`` for scalars and ``slots`` for numpy windows.

``SILENT`` (0) is the only non-channel value a schedule may produce and is
used by the sweep baseline alone.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .coloring import color_edge, palette_size
from .strings import async_length, bin_encode, encode_async, log_sharp

SILENT = 0

SYMMETRIC_PATTERN = np.array([0, 1, 0, 0, 1, 1] * 2, dtype=np.int64)

Rule = Callable[[np.ndarray], np.ndarray]


def channel_set(channels: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate and normalize a channel set to a sorted tuple."""
    cs = tuple(sorted(set(int(c) for c in channels)))
    if not cs:
        raise ValueError("channel set is empty")
    if n < 1:
        raise ValueError(f"universe size must be positive, got {n}")
    if cs[0] < 1 or cs[-1] > n:
        raise ValueError(f"channels {cs} not within [1, {n}]")
    return cs


def _minimal_period(cycle: np.ndarray) -> int:
    size = len(cycle)
    for d in range(1, size + 1):
        if size % d == 0 and np.array_equal(cycle, np.roll(cycle, -d)):
            return d
    return size


class Schedule:
    """A hopping schedule over a fixed channel set."""

    def __init__(
        self,
        channels: Sequence[int],
        cycle: Optional[Sequence[int]] = None,
        rule: Optional[Rule] = None,
    ):
        if (cycle is None) == (rule is None):
            raise ValueError("give exactly one of cycle or rule")
        self.channels = tuple(channels)
        self._rule = rule
        if cycle is not None:
            full = np.asarray(cycle, dtype=np.int64)
            if full.ndim != 1 or len(full) == 0:
                raise ValueError("cycle must be a nonempty 1-d sequence")
            p = _minimal_period(full)
            self.cycle: Optional[np.ndarray] = full[:p].copy()
            self.cycle.setflags(write=False)
            self.period: Optional[int] = p
        else:
            self.cycle = None
            self.period = None

    @classmethod
    def constant(cls, channel: int) -> "Schedule":
        return cls((channel,), cycle=[channel])

    def slots(self, start: int, count: int) -> np.ndarray:
        if start < 0 or count < 0:
            raise ValueError("start and count must be nonnegative")
        t = np.arange(start, start + count, dtype=np.int64)
        if self.cycle is not None:
            return self.cycle[t % self.period]
        return np.asarray(self._rule(t), dtype=np.int64)

    def channel_at(self, t: int) -> int:
        return int(self.slots(t, 1)[0])

    def __repr__(self) -> str:
        return f"Schedule(channels={self.channels}, period={self.period})"


# -- pair schedules -----------------------------------------------------------


def color_width(n: int) -> int:
    """Bits per color string: every color index in the palette fits."""
    return max(1, log_sharp(palette_size(n)))


def schedule_cycle_length(n: int) -> int:
    """Period shared by every two-channel schedule over universe ``n``."""
    return async_length(color_width(n))


def color_string(a: int, b: int, n: int) -> str:
    return bin_encode(color_edge(a, b, n) - 1, palette_size(n))


@lru_cache(maxsize=None)
def _pair_bits(a: int, b: int, n: int) -> np.ndarray:
    bits = np.frombuffer(encode_async(color_string(a, b, n)).encode(), dtype=np.uint8) - ord("0")
    bits = bits.astype(np.int64)
    bits.setflags(write=False)
    return bits


def pair_cycle(a: int, b: int, n: int) -> np.ndarray:
    """One period of the two-channel schedule for ``{a, b}`` (``a < b``)."""
    bits = _pair_bits(a, b, n)
    return np.where(bits == 0, a, b)


def pair_schedule(channels: Iterable[int], n: int) -> Schedule:
    cs = channel_set(channels, n)
    if len(cs) > 2:
        raise ValueError(f"pair schedule needs at most 2 channels, got {len(cs)}")
    if len(cs) == 1:
        return Schedule.constant(cs[0])
    return Schedule(cs, cycle=pair_cycle(cs[0], cs[1], n))


# -- general schedules --------------------------------------------------------


def _primes_upto(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.flatnonzero(sieve)


def two_primes_in(k: int) -> tuple[int, int]:
    """The two smallest primes in ``[k, 3k]``."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    ps = _primes_upto(3 * k)
    ps = ps[ps >= k]
    assert len(ps) >= 2, f"fewer than two primes in [{k}, {3 * k}]"
    return int(ps[0]), int(ps[1])


def epoch_pair(cs: Sequence[int], e: int, p: int, q: int) -> tuple[int, int]:
    """Channels played in epoch ``e``; indices past the set fall back to index 0."""
    i, j = e % p, e % q
    if i >= len(cs):
        i = 0
    if j >= len(cs):
        j = 0
    return cs[i], cs[j]


def general_schedule(channels: Iterable[int], n: int) -> Schedule:
    """Epoch schedule: epoch ``e`` plays the pair schedule for ``(a[e % p], a[e % p'])`` twice."""
    cs = channel_set(channels, n)
    if len(cs) == 1:
        return Schedule.constant(cs[0])
    p, q = two_primes_in(len(cs))
    L = schedule_cycle_length(n)
    epochs = []
    for e in range(p * q):
        x, y = epoch_pair(cs, e, p, q)
        if x == y:
            epochs.append(np.full(2 * L, x, dtype=np.int64))
        else:
            epochs.append(np.tile(pair_cycle(min(x, y), max(x, y), n), 2))
    return Schedule(cs, cycle=np.concatenate(epochs))


def general_bound(size_a: int, size_b: int, n: int) -> int:
    """Worst-case elapsed slots guaranteed between two general schedules."""
    return 2 * (3 * size_a) * (3 * size_b) * schedule_cycle_length(n)


# -- symmetric wrapper and baselines ------------------------------------------


def symmetric_wrap(inner: Schedule, channels: Iterable[int]) -> Schedule:
    """Expand each inner slot into the 12-slot block ``c0 c1 c0 c0 c1 c1`` (twice).

    ``c0`` is the smallest channel of the set and ``c1`` the inner channel.
    """
    cs = tuple(sorted(set(channels)))
    c0 = cs[0]

    if inner.period is not None:
        base = np.repeat(inner.cycle, 12)
        pattern = np.tile(SYMMETRIC_PATTERN, inner.period)
        return Schedule(cs, cycle=np.where(pattern == 0, c0, base))

    def rule(t: np.ndarray) -> np.ndarray:
        base = inner.slots(0, int(t.max()) // 12 + 1)[t // 12] if len(t) else t
        return np.where(SYMMETRIC_PATTERN[t % 12] == 0, c0, base)

    return Schedule(cs, rule=rule)


def sweep_baseline(channels: Iterable[int], n: int) -> Schedule:
    """Slot ``t`` hops on channel ``t mod n + 1`` when it is in the set, else stays silent."""
    cs = channel_set(channels, n)
    cycle = np.arange(1, n + 1, dtype=np.int64)
    cycle[~np.isin(cycle, cs)] = SILENT
    return Schedule(cs, cycle=cycle)


def _mix64(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer on uint64 arrays."""
    x = np.asarray(x, dtype=np.uint64)
    with np.errstate(over="ignore"):
        x = x + np.uint64(0x9E3779B97F4A7C15)
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return x ^ (x >> np.uint64(31))


def randomized_baseline(channels: Iterable[int], seed: int, n: Optional[int] = None) -> Schedule:
    """Uniform random channel per slot, derived statelessly from ``(seed, t)``."""
    chans = list(channels)
    cs = np.array(channel_set(chans, n if n is not None else max(chans)), dtype=np.int64)
    if len(cs) == 1:
        return Schedule.constant(int(cs[0]))
    key = _mix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF))
    k = np.uint64(len(cs))

    def rule(t: np.ndarray) -> np.ndarray:
        h = _mix64(key ^ t.astype(np.uint64))
        return cs[(h % k).astype(np.int64)]

    return Schedule(tuple(int(c) for c in cs), rule=rule)
