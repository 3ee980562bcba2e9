"""Slotted rendezvous engine, shift sweeps, trial batches and small-instance oracles.

Time is absolute. Agent A wakes at ``t_a`` and at absolute slot ``t`` plays
``sigma_a(t - t_a)``; the pair meets at ``t`` when both play the same
(non-silent) channel. Elapsed time is measured from ``max(t_a, t_b)``.
"""
from __future__ import annotations

import math
import warnings
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Optional

import numpy as np

from . import schedules as sch
from .schedules import SILENT, Schedule
from .strings import log_sharp

FAMILIES = ("pair", "general", "symmetric", "sweep", "random")


@dataclass(frozen=True)
class RendezvousOutcome:
    met: bool
    slot: Optional[int] = None
    channel: Optional[int] = None
    elapsed: Optional[int] = None


def simulate_pair(sigma_a: Schedule, sigma_b: Schedule, t_a: int, t_b: int, horizon: int) -> RendezvousOutcome:
    """Earliest meeting slot in ``[max(t_a, t_b), max(t_a, t_b) + horizon]``."""
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    if t_a < 0 or t_b < 0:
        raise ValueError("wake times must be nonnegative")
    start = max(t_a, t_b)
    a = sigma_a.slots(start - t_a, horizon + 1)
    b = sigma_b.slots(start - t_b, horizon + 1)
    hit = np.flatnonzero((a == b) & (a != SILENT))
    if len(hit) == 0:
        return RendezvousOutcome(met=False)
    s = int(hit[0])
    return RendezvousOutcome(met=True, slot=start + s, channel=int(a[s]), elapsed=s)


@dataclass
class SweepReport:
    worst_elapsed: Optional[int] = None
    worst_offsets: Optional[tuple[int, int]] = None
    trials: int = 0
    misses: int = 0
    histogram: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)

    def record(self, outcome: RendezvousOutcome, offsets: tuple[int, int]) -> None:
        self.trials += 1
        if not outcome.met:
            self.misses += 1
            return
        self.histogram[outcome.elapsed] += 1
        if self.worst_elapsed is None or outcome.elapsed > self.worst_elapsed:
            self.worst_elapsed = outcome.elapsed
            self.worst_offsets = offsets

    def merge(self, other: "SweepReport") -> "SweepReport":
        out = SweepReport(
            trials=self.trials + other.trials,
            misses=self.misses + other.misses,
            histogram=self.histogram + other.histogram,
            violations=self.violations + other.violations,
        )
        # Ties keep the left operand so merging in trial order is deterministic.
        for r in (self, other):
            if r.worst_elapsed is not None and (out.worst_elapsed is None or r.worst_elapsed > out.worst_elapsed):
                out.worst_elapsed, out.worst_offsets = r.worst_elapsed, r.worst_offsets
        return out

    def to_dict(self) -> dict:
        return {
            "worst_elapsed": self.worst_elapsed,
            "worst_offsets": list(self.worst_offsets) if self.worst_offsets else None,
            "trials": self.trials,
            "misses": self.misses,
            "histogram": {str(k): self.histogram[k] for k in sorted(self.histogram)},
            "violations": self.violations,
        }


def sweep_shifts(sigma_a: Schedule, sigma_b: Schedule, shift_bound: int, horizon: int) -> SweepReport:
    """Run every wake pair ``(0, d)`` and ``(d, 0)`` for ``0 <= d < shift_bound``."""
    if sigma_a.period is not None and sigma_b.period is not None:
        full = math.lcm(sigma_a.period, sigma_b.period)
        if shift_bound < full:
            warnings.warn(
                f"shift_bound {shift_bound} < lcm of periods {full}; sweep is not exhaustive",
                stacklevel=2,
            )
    report = SweepReport()
    for d in range(shift_bound):
        for offsets in ((0, d), (d, 0)):
            report.record(simulate_pair(sigma_a, sigma_b, *offsets, horizon), offsets)
    return report


# -- trial batches ------------------------------------------------------------


@dataclass(frozen=True)
class TrialConfig:
    family: str
    n: int
    pairs: int
    seed: int
    min_size: int = 1
    max_size: int = 8
    horizon_factor: int = 4
    workers: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if self.pairs < 0:
            raise ValueError("pairs must be nonnegative")
        if not 1 <= self.min_size <= self.max_size <= self.n:
            raise ValueError(f"need 1 <= min_size <= max_size <= n, got {self.min_size}, {self.max_size}, {self.n}")
        if self.family == "pair" and self.max_size > 2:
            raise ValueError("pair family supports sets of size at most 2")
        if self.horizon_factor < 1 or self.workers < 1:
            raise ValueError("horizon_factor and workers must be positive")


@lru_cache(maxsize=4096)
def family_schedule(family: str, channels: tuple[int, ...], n: int, seed: int = 0) -> Schedule:
    if family == "pair":
        return sch.pair_schedule(channels, n)
    if family == "general":
        return sch.general_schedule(channels, n)
    if family == "symmetric":
        return sch.symmetric_wrap(sch.general_schedule(channels, n), channels)
    if family == "sweep":
        return sch.sweep_baseline(channels, n)
    if family == "random":
        return sch.randomized_baseline(channels, seed, n)
    raise ValueError(f"unknown family {family!r}")


def family_bound(family: str, size_a: int, size_b: int, n: int) -> Optional[int]:
    """Guaranteed worst elapsed time for the family, or None when there is none."""
    if family == "pair":
        return sch.schedule_cycle_length(n)
    if family == "general":
        return sch.general_bound(size_a, size_b, n)
    if family == "symmetric":
        return 12 * sch.general_bound(size_a, size_b, n) + 12
    if family == "sweep":
        return n
    return None


def sample_overlapping_pair(rng: np.random.Generator, n: int, min_size: int, max_size: int):
    ka, kb = (int(v) for v in rng.integers(min_size, max_size + 1, size=2))
    a = rng.choice(np.arange(1, n + 1), size=ka, replace=False)
    common = int(rng.choice(a))
    others = np.setdiff1d(np.arange(1, n + 1), [common])
    b = np.concatenate([[common], rng.choice(others, size=kb - 1, replace=False)])
    return tuple(sorted(int(x) for x in a)), tuple(sorted(int(x) for x in b))


def _run_trial(config: TrialConfig, index: int) -> SweepReport:
    rng = np.random.default_rng([config.seed, index])
    a, b = sample_overlapping_pair(rng, config.n, config.min_size, config.max_size)
    if config.family == "random":
        sa = family_schedule("random", a, config.n, int(rng.integers(2**62)))
        sb = family_schedule("random", b, config.n, int(rng.integers(2**62)))
    else:
        sa = family_schedule(config.family, a, config.n)
        sb = family_schedule(config.family, b, config.n)
    bound = family_bound(config.family, len(a), len(b), config.n)
    if config.family == "sweep":
        t_a = t_b = 0
    elif config.family == "random":
        t_a, t_b = (int(v) for v in rng.integers(0, 1000, size=2))
    else:
        t_a = int(rng.integers(sa.period))
        t_b = int(rng.integers(sb.period))
    if bound is None:
        horizon = config.horizon_factor * len(a) * len(b) * max(1, log_sharp(config.n))
    else:
        horizon = config.horizon_factor * bound
    outcome = simulate_pair(sa, sb, t_a, t_b, horizon)
    report = SweepReport()
    report.record(outcome, (t_a, t_b))
    if bound is not None and (not outcome.met or outcome.elapsed > bound):
        report.violations.append(
            {"a": list(a), "b": list(b), "t_a": t_a, "t_b": t_b, "elapsed": outcome.elapsed, "bound": bound}
        )
    return report


def _run_chunk(config: TrialConfig, indices: range) -> SweepReport:
    report = SweepReport()
    for i in indices:
        report = report.merge(_run_trial(config, i))
    return report


def run_trial_batch(config: TrialConfig) -> SweepReport:
    """Sample ``config.pairs`` overlapping pairs with random wake times and aggregate.

    Trial ``i`` draws from ``default_rng([seed, i])``, so the report does not
    depend on ``workers``.
    """
    if config.workers == 1 or config.pairs < 2:
        return _run_chunk(config, range(config.pairs))
    step = math.ceil(config.pairs / config.workers)
    chunks = [range(s, min(s + step, config.pairs)) for s in range(0, config.pairs, step)]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        parts = list(pool.map(_run_chunk, [config] * len(chunks), chunks))
    report = SweepReport()
    for part in parts:
        report = report.merge(part)
    return report


# -- exhaustive oracles -------------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    n: int
    k: int
    cap: int
    optimal_t: Optional[int]
    witness: dict

    @property
    def cap_exceeded(self) -> bool:
        return self.optimal_t is None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "cap": self.cap,
            "optimal_t": self.optimal_t,
            "witness": {",".join(map(str, s)): list(w) for s, w in self.witness.items()},
        }


MAX_ORACLE_SETS = 10
MAX_ORACLE_CANDIDATES = 4096


def _subsets(n: int, k: int) -> list[tuple[int, ...]]:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    sets = list(combinations(range(1, n + 1), k))
    if len(sets) > MAX_ORACLE_SETS:
        raise ValueError(f"{len(sets)} subsets is too many for exhaustive search")
    return sets


def _solve_csp(sets, domains, compatible):
    """Backtracking with forward checking. ``compatible(i, u, j, v)`` for overlapping sets i < j."""
    m = len(sets)
    neighbours = [[j for j in range(m) if j != i and set(sets[i]) & set(sets[j])] for i in range(m)]
    assignment: list[Optional[int]] = [None] * m

    def search(i, live):
        if i == m:
            return True
        for u in live[i]:
            assignment[i] = u
            pruned = list(live)
            ok = True
            for j in neighbours[i]:
                if j > i:
                    pruned[j] = [v for v in live[j] if compatible(i, u, j, v)]
                    if not pruned[j]:
                        ok = False
                        break
            if ok and search(i + 1, pruned):
                return True
        assignment[i] = None
        return False

    if search(0, [list(d) for d in domains]):
        return list(assignment)
    return None


def brute_force_optimal_sync(n: int, k: int, t_cap: int) -> OracleResult:
    """Smallest schedule length T <= t_cap letting every overlapping pair of k-sets meet synchronously."""
    if t_cap < 1:
        raise ValueError("t_cap must be >= 1")
    sets = _subsets(n, k)
    for T in range(1, t_cap + 1):
        if k ** T > MAX_ORACLE_CANDIDATES:
            raise ValueError(f"{k ** T} candidate strings per set is too many")
        cands = [list(product(s, repeat=T)) for s in sets]
        masks = [
            [{c: sum(1 << t for t, x in enumerate(w) if x == c) for c in s} for w in cs]
            for s, cs in zip(sets, cands)
        ]

        def compatible(i, u, j, v, masks=masks):
            return any(masks[i][u][c] & masks[j][v][c] for c in set(sets[i]) & set(sets[j]))

        found = _solve_csp(sets, [range(len(c)) for c in cands], compatible)
        if found is not None:
            witness = {s: cands[i][u] for i, (s, u) in enumerate(zip(sets, found))}
            return OracleResult(n, k, t_cap, T, witness)
    return OracleResult(n, k, t_cap, None, {})


def _primitive_words(alphabet: tuple[int, ...], max_len: int) -> list[tuple[int, ...]]:
    """Words that are not a power of a shorter word; a power behaves like its root."""
    out = []
    for length in range(1, max_len + 1):
        for w in product(alphabet, repeat=length):
            if all(w != w[d:] + w[:d] for d in range(1, length) if length % d == 0):
                out.append(w)
    return out


def _async_slots_needed(u: tuple[int, ...], v: tuple[int, ...]) -> float:
    """Worst slots-to-meet over wake orders, for cyclic words u and v; inf if some offset never meets."""
    horizon = math.lcm(len(u), len(v))
    worst = 0
    starts = [(i, 0) for i in range(len(u))] + [(0, j) for j in range(1, len(v))]
    for i, j in starts:
        for s in range(horizon):
            if u[(i + s) % len(u)] == v[(j + s) % len(v)]:
                worst = max(worst, s + 1)
                break
        else:
            return math.inf
    return worst


def brute_force_optimal_async_cyclic(n: int, k: int, period_cap: int) -> OracleResult:
    """Minimal worst-case async slots-to-meet over cyclic schedules of period <= period_cap.

    An agent starts its word at index 0 on waking, so when two periods
    differ the rotation of each word matters and every rotation is a
    separate candidate.
    """
    if period_cap < 1:
        raise ValueError("period_cap must be >= 1")
    sets = _subsets(n, k)
    cands = [_primitive_words(s, period_cap) for s in sets]
    if max(len(c) for c in cands) > MAX_ORACLE_CANDIDATES:
        raise ValueError("too many candidate cycles per set")
    self_cost = [[_async_slots_needed(w, w) for w in cs] for cs in cands]
    cost = {}
    for i, j in combinations(range(len(sets)), 2):
        if set(sets[i]) & set(sets[j]):
            cost[i, j] = np.array([[_async_slots_needed(u, v) for v in cands[j]] for u in cands[i]])
    values = sorted({x for row in self_cost for x in row if x < math.inf}
                    | {float(x) for c in cost.values() for x in np.unique(c) if x < math.inf})
    for V in values:
        domains = [[u for u, c in enumerate(self_cost[i]) if c <= V] for i in range(len(sets))]
        if any(not d for d in domains):
            continue

        def compatible(i, u, j, v, V=V):
            return cost[i, j][u, v] <= V

        found = _solve_csp(sets, domains, compatible)
        if found is not None:
            witness = {s: cands[i][u] for i, (s, u) in enumerate(zip(sets, found))}
            return OracleResult(n, k, period_cap, int(V), witness)
    return OracleResult(n, k, period_cap, None, {})
