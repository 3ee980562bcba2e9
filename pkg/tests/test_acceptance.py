"""End-to-end acceptance checks. Each test records one PASS/FAIL line."""
import math
import subprocess
import sys
import time
from itertools import combinations, product

import networkx as nx
import numpy as np

from rendezvous import beacon as bc
from rendezvous import coloring, oneround, strings
from rendezvous import schedules as sch
from rendezvous import simulator as sim


# -- 1: two-channel schedules -------------------------------------------------

# Which bit pair (A's bit, B's bit) puts both agents on the shared channel.
# Bit 0 plays the smaller channel of a set and bit 1 the larger.
TOPOLOGIES = {
    "shared-min": {(0, 0)},
    "shared-max": {(1, 1)},
    "a-max-is-b-min": {(1, 0)},
    "a-min-is-b-max": {(0, 1)},
    "equal": {(0, 0), (1, 1)},
}


def codewords(n):
    palette = coloring.palette_size(n)
    return {c: strings.encode_async(strings.bin_encode(c - 1, palette)) for c in range(1, palette + 1)}


def topology_violations(n):
    """Exhaustive over color pairs, topologies and relative rotations; returns (violations, cases)."""
    words = codewords(n)
    L = sch.schedule_cycle_length(n)
    bad = cases = 0
    for (ca, wa), (cb, wb) in product(words.items(), repeat=2):
        assert len(wa) == len(wb) == L
        for name, targets in TOPOLOGIES.items():
            if name == "equal" and ca != cb:
                continue
            if name in ("a-max-is-b-min", "a-min-is-b-max") and ca == cb:
                # Consecutive edges of a path never share a color.
                continue
            for r in range(L):
                cases += 1
                seen = zip(map(int, wa), map(int, strings.rotate(wb, r)))
                first = next((t for t, p in enumerate(seen) if p in targets), None)
                if first is None or first >= L:
                    bad += 1
    return bad, cases


def path_colors_differ(n, samples, rng):
    for _ in range(samples):
        a, b, c = sorted(int(x) for x in rng.choice(np.arange(1, n + 1), size=3, replace=False))
        if coloring.color_edge(a, b, n) == coloring.color_edge(b, c, n):
            return False
    return True


def concrete_sweep(n):
    """Every overlapping pair of 2-sets of [n] and every wake-offset pair in [0, L)^2."""
    L = sch.schedule_cycle_length(n)
    sets = list(combinations(range(1, n + 1), 2))
    bad = 0
    for a, b in product(sets, repeat=2):
        if not set(a) & set(b):
            continue
        sa, sb = sch.pair_schedule(a, n), sch.pair_schedule(b, n)
        for d in range(L):
            for ta, tb in ((0, d), (d, 0)):
                out = sim.simulate_pair(sa, sb, ta, tb, L)
                bad += not out.met or out.elapsed >= L
    return bad


def test_criterion_1_pair_schedules(acceptance_line):
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    expected_L = {4: 12, 16: 18, 256: 24, 65536: 26}
    details = []
    ok = True
    for n, L in expected_L.items():
        lg = max(1, strings.log_sharp(n))
        m = max(1, strings.log_sharp(lg))
        formula = 2 * m + 4 * max(1, strings.log_sharp(2 * m)) + 6
        bad, cases = topology_violations(n)
        # The concrete schedules must use exactly these codewords.
        words = codewords(n)
        for _ in range(200):
            a, b = sorted(int(x) for x in rng.choice(np.arange(1, n + 1), size=2, replace=False))
            bits = "".join("0" if c == a else "1" for c in sch.pair_cycle(a, b, n))
            ok &= bits == words[coloring.color_edge(a, b, n)]
        ok &= path_colors_differ(n, 2000, rng) and bad == 0
        ok &= sch.schedule_cycle_length(n) == formula == L
        details.append(f"n={n} L={L} cases={cases} violations={bad}")
    concrete = {n: concrete_sweep(n) for n in (4, 16)}
    ok &= all(v == 0 for v in concrete.values())
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    acceptance_line(1, ok, "; ".join(details) + f"; full sweeps n=4,16 violations={sum(concrete.values())}; "
                    f"{elapsed:.1f}s")
    assert ok


# -- 2: general schedules -----------------------------------------------------


def test_criterion_2_general_schedules(acceptance_line):
    start = time.perf_counter()
    total = violations = misses = worst = 0
    for n in (8, 16, 32, 64):
        cfg = sim.TrialConfig("general", n, 250, seed=2000 + n, min_size=1, max_size=8)
        rep = sim.run_trial_batch(cfg)
        total += rep.trials
        violations += len(rep.violations)
        misses += rep.misses
        worst = max(worst, rep.worst_elapsed)
    elapsed = time.perf_counter() - start
    ok = total == 1000 and violations == 0 and misses == 0 and elapsed < 300
    acceptance_line(2, ok, f"pairs={total} violations={violations} misses={misses} worst elapsed={worst} "
                    f"{elapsed:.1f}s")
    assert ok


# -- 3: symmetric wrap ----------------------------------------------------------


def test_criterion_3_symmetric(acceptance_line):
    rng = np.random.default_rng(3)
    worst = 0
    bad = 0
    for _ in range(100):
        n = int(rng.integers(2, 65))
        k = int(rng.integers(1, min(8, n) + 1))
        A = tuple(sorted(int(x) for x in rng.choice(np.arange(1, n + 1), size=k, replace=False)))
        s = sim.family_schedule("symmetric", A, n)
        offsets = list(range(12)) + [int(x) for x in rng.integers(0, s.period, size=20)]
        for d in offsets:
            for ta, tb in ((0, d), (d, 0)):
                out = sim.simulate_pair(s, s, ta, tb, 11)
                if not out.met:
                    bad += 1
                else:
                    worst = max(worst, out.elapsed + 1)
    ok = bad == 0 and worst <= 12
    acceptance_line(3, ok, f"sets=100 violations={bad} worst slots-to-meet={worst} (bound 12)")
    assert ok


# -- 4: Ramsey coloring -------------------------------------------------------


def test_criterion_4_ramsey(acceptance_line):
    start = time.perf_counter()
    failing = [n for n in range(2, 513) if not coloring.verify_ramsey(n)]
    ok = not failing
    acceptance_line(4, ok, f"2 <= n <= 512 failing={failing[:5]} {time.perf_counter() - start:.1f}s")
    assert ok


# -- 5: codeword properties ---------------------------------------------------


def all_words(m):
    return ["".join(w) for w in product("01", repeat=m)]


def test_criterion_5_encodings(acceptance_line):
    shape = diamonds = trips = 0
    for m in range(1, 7):
        code = {x: strings.encode_async(x) for x in all_words(m)}
        for w in code.values():
            shape += not (strings.is_balanced(w) and strings.is_strictly_catalan(w)
                          and strings.maximality_count(w) == 2)
        for x, y in product(code, repeat=2):
            if x == y:
                diamonds += not strings.black_diamond0(code[x], code[y])
            else:
                diamonds += not strings.black_diamond1(code[x], code[y])
    for m in range(1, 9):
        for x in all_words(m):
            trips += strings.decode_async(strings.encode_async(x)) != x
    ok = shape == diamonds == trips == 0
    acceptance_line(5, ok, f"shape failures={shape} diamond failures={diamonds} round-trip failures={trips}")
    assert ok


# -- 6: oracle anchors ----------------------------------------------------------


def test_criterion_6_oracles(acceptance_line):
    sync_32 = sim.brute_force_optimal_sync(3, 2, 4).optimal_t
    async_42 = sim.brute_force_optimal_async_cyclic(4, 2, 6).optimal_t
    sync_opt = {(n, k): sim.brute_force_optimal_sync(n, k, 6).optimal_t for n, k in ((2, 2), (3, 2), (4, 2), (4, 3))}
    async_runs = [(2, 2, 6), (3, 2, 4), (3, 2, 6), (4, 2, 4), (4, 2, 6), (4, 3, 4)]
    order_ok = True
    pairs = []
    for n, k, cap in async_runs:
        a = sim.brute_force_optimal_async_cyclic(n, k, cap).optimal_t
        a_val = math.inf if a is None else a
        order_ok &= a_val >= sync_opt[n, k]
        pairs.append(f"({n},{k},{cap}):{a}>={sync_opt[n, k]}")
    ok = sync_32 == 3 and async_42 is not None and async_42 >= 4 and order_ok
    acceptance_line(6, ok, f"R_s(3,2)={sync_32} R_a(4,2;6)={async_42} async>=sync " + " ".join(pairs))
    assert ok


# -- 7: beacon ------------------------------------------------------------------


def test_criterion_7_beacon(acceptance_line):
    start = time.perf_counter()
    n, size, seeds = 64, 4, 1000
    horizon = math.ceil(2 * math.log(n) * (2 * size))
    B = bc.block_length(n)
    rng = np.random.default_rng(7)
    successes = observations = failures = 0
    for _ in range(seeds):
        pool = rng.choice(np.arange(1, n + 1), size=2 * size - 1, replace=False)
        si, sj = pool[:size].tolist(), pool[size - 1:].tolist()
        assert len(set(si) & set(sj)) == 1
        seed = int(rng.integers(2**63))
        wake = tuple(int(w) for w in rng.integers(0, 10 * B, size=2))
        b0 = bc.first_shared_block(wake, n)
        hits = bc.block_successes(si, sj, seed, n, b0, horizon)
        successes += int(hits.sum())
        observations += len(hits)
        failures += not hits.any()
    p_min = 1 / (2 * 2 * size)
    rate = successes / observations
    rate_ok = rate >= p_min - 3 * math.sqrt(p_min * (1 - p_min) / observations)
    fail_rate = failures / seeds
    fail_ok = fail_rate <= 1 / n + 3 * math.sqrt((1 / n) * (1 - 1 / n) / seeds)
    elapsed = time.perf_counter() - start
    ok = rate_ok and fail_ok and elapsed < 60
    acceptance_line(7, ok, f"per-block rate={rate:.4f} (floor {p_min:.4f}) failure rate at {horizon} blocks="
                    f"{fail_rate:.4f} (cap {1 / n:.4f}+3sigma) {elapsed:.1f}s")
    assert ok


# -- 8: one-round orientation -----------------------------------------------------


def test_criterion_8_one_round(acceptance_line):
    start = time.perf_counter()
    graphs = [g for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= 5 and nx.is_connected(g)]
    worst = 1.0
    runs = 0
    for g in graphs:
        og = oneround.make_graph(g.edges())
        opt, _ = oneround.brute_force_optimal_orientation(og)
        for seed in range(20):
            got = oneround.count_in_pairs(oneround.orient_one_round(og, seed))
            runs += 1
            if opt:
                worst = min(worst, got / opt)
    k4 = oneround.make_graph(nx.complete_graph(4).edges())
    mean = np.mean([oneround.count_in_pairs(oneround.random_orient(k4, s)) for s in range(10_000)])
    ratio = mean / oneround.count_incident_pairs(k4)
    elapsed = time.perf_counter() - start
    ok = worst >= 0.439 and abs(ratio - 0.25) <= 0.01 and elapsed < 300
    acceptance_line(8, ok, f"graphs={len(graphs)} runs={runs} worst ratio={worst:.3f} (floor 0.439); "
                    f"K4 random mean ratio={ratio:.4f}; {elapsed:.1f}s")
    assert ok


# -- 9: determinism -----------------------------------------------------------------

DETERMINISM_COMMANDS = [
    ["gen-schedule", "--set", "1,4,7", "--n", "16", "--symmetric", "--horizon", "200"],
    ["simulate", "--family", "general", "--n", "32", "--pairs", "50", "--seed", "7"],
    ["simulate", "--family", "random", "--n", "16", "--pairs", "50", "--seed", "7"],
    ["simulate", "--family", "symmetric", "--n", "16", "--pairs", "20", "--seed", "7", "--workers", "2"],
    ["sweep", "--a", "1,5", "--b", "5,9", "--n", "16", "--family", "pair"],
    ["beacon", "--n", "64", "--si", "1,3,5,7", "--sj", "7,8,9,10", "--seeds", "200", "--seed", "7"],
    ["orient", "--edges", "1-2,2-3,3-4,1-4,1-3", "--seed", "7"],
    ["oracle", "--n", "3", "--k", "2", "--cap", "4", "--mode", "both"],
    ["color", "--n", "512", "--a", "17", "--b", "300", "--json"],
    ["selftest", "--ramsey-max", "64"],
]


def test_criterion_9_determinism(acceptance_line):
    mismatched = []
    for argv in DETERMINISM_COMMANDS:
        outs = [subprocess.run([sys.executable, "-m", "rendezvous", *argv], capture_output=True, check=True).stdout
                for _ in range(2)]
        if outs[0] != outs[1] or not outs[0]:
            mismatched.append(argv[0])
    ok = not mismatched
    acceptance_line(9, ok, f"commands={len(DETERMINISM_COMMANDS)} mismatched={mismatched}")
    assert ok
