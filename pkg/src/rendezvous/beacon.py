"""One-bit random beacon protocol.

Every slot carries one shared random bit. Slots are grouped into disjoint
blocks of ``d * max(1, log_sharp(n))`` bits; a block's bits seed a
permutation of the channels, and during that block each agent hops on the
channel of its set that ranks first. Two agents hopping in the same block
see the same permutation, so they meet exactly when the union's first
channel lies in the intersection.

The permutation family is a seeded hash ranking with the channel id as a
tiebreak, not an explicit min-wise independent construction; its min-wise
quality is checked statistically by the test suite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .schedules import Schedule, _mix64, channel_set
from .strings import log_sharp

DEFAULT_D = 2

_BIT_SALT = np.uint64(0xA0761D6478BD642F)
_RANK_SALT = np.uint64(0xE7037ED1A0B428DB)


def block_length(n: int, d: int = DEFAULT_D) -> int:
    if d < 1:
        raise ValueError("d must be >= 1")
    return d * max(1, log_sharp(n))


def beacon_bits(seed: int, t0: int, count: int) -> np.ndarray:
    """Beacon bits for slots ``t0 .. t0 + count - 1`` as a uint8 array."""
    if count < 0 or t0 < 0:
        raise ValueError("t0 and count must be nonnegative")
    key = _mix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) ^ _BIT_SALT)
    t = np.arange(t0, t0 + count, dtype=np.uint64)
    return (_mix64(key ^ t) >> np.uint64(63)).astype(np.uint8)


def block_seeds(seed: int, first_block: int, count: int, n: int, d: int = DEFAULT_D) -> np.ndarray:
    """Integer value of each block's beacon bits (most significant bit first)."""
    B = block_length(n, d)
    bits = beacon_bits(seed, first_block * B, count * B).reshape(count, B).astype(np.uint64)
    weights = np.uint64(1) << np.arange(B - 1, -1, -1, dtype=np.uint64)
    return (bits * weights).sum(axis=1, dtype=np.uint64)


def perm_rank(block_seed, a) -> np.ndarray:
    """Hash rank of channel ``a`` under the permutation keyed by ``block_seed``.

    Returns uint64 hash values; ties (vanishingly rare) are broken by the
    smaller channel, which every argmin helper here does by scanning channels
    in increasing order.
    """
    s = np.asarray(block_seed, dtype=np.uint64)
    a = np.asarray(a, dtype=np.uint64)
    return _mix64(_mix64(s ^ _RANK_SALT) + a)


def rank_key(block_seed: int, a: int) -> tuple[int, int]:
    """Total order key: hash rank, then channel id. Distinct channels never tie."""
    return int(perm_rank(block_seed, a)), a


def permutation(block_seed: int, n: int) -> list[int]:
    """Channels ``1..n`` listed in increasing rank order."""
    return sorted(range(1, n + 1), key=lambda a: rank_key(block_seed, a))


def argmin_channel(block_seeds_: np.ndarray, channels: Sequence[int]) -> np.ndarray:
    """First-ranked channel of ``channels`` for each block seed."""
    cs = np.asarray(sorted(channels), dtype=np.uint64)
    ranks = perm_rank(np.asarray(block_seeds_, dtype=np.uint64)[..., None], cs)
    return cs[np.argmin(ranks, axis=-1)].astype(np.int64)


def beacon_schedule(channels: Iterable[int], seed: int, n: int, d: int = DEFAULT_D) -> Schedule:
    """Hopping schedule indexed by absolute slot (the beacon is global, not per agent)."""
    cs = channel_set(channels, n)
    if len(cs) == 1:
        return Schedule.constant(cs[0])
    B = block_length(n, d)

    def rule(t: np.ndarray) -> np.ndarray:
        if len(t) == 0:
            return t
        lo, hi = int(t.min()) // B, int(t.max()) // B
        picks = argmin_channel(block_seeds(seed, lo, hi - lo + 1, n, d), cs)
        return picks[t // B - lo]

    return Schedule(cs, rule=rule)


@dataclass(frozen=True)
class BeaconOutcome:
    blocks: Optional[int]
    first_shared_block: int

    @property
    def met(self) -> bool:
        return self.blocks is not None


def first_shared_block(wake_offsets: tuple[int, int], n: int, d: int = DEFAULT_D) -> int:
    """Index of the first block both agents see from its first slot."""
    return math.ceil(max(wake_offsets) / block_length(n, d))


def block_successes(si, sj, seed: int, n: int, first_block: int, count: int, d: int = DEFAULT_D) -> np.ndarray:
    seeds = block_seeds(seed, first_block, count, n, d)
    return argmin_channel(seeds, si) == argmin_channel(seeds, sj)


def simulate_beacon(
    si: Iterable[int],
    sj: Iterable[int],
    seed: int,
    max_blocks: int,
    wake_offsets: tuple[int, int] = (0, 0),
    n: Optional[int] = None,
    d: int = DEFAULT_D,
) -> BeaconOutcome:
    """Count complete shared blocks until both agents pick the same channel.

    Partial blocks at wake-up are skipped. ``blocks`` is 1-based, or None when
    no success happens within ``max_blocks``.
    """
    si, sj = list(si), list(sj)
    if n is None:
        n = max(si + sj)
    si, sj = channel_set(si, n), channel_set(sj, n)
    if not set(si) & set(sj):
        raise ValueError("channel sets are disjoint; rendezvous is impossible")
    b0 = first_shared_block(wake_offsets, n, d)
    hits = np.flatnonzero(block_successes(si, sj, seed, n, b0, max_blocks, d))
    return BeaconOutcome(blocks=int(hits[0]) + 1 if len(hits) else None, first_shared_block=b0)


def failure_horizon(n: int, size_i: int, size_j: int) -> int:
    """Blocks after which failure probability is at most 1/n under the per-block bound."""
    return math.ceil(2 * math.log(n) * (size_i + size_j))
