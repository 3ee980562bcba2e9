"""How fast do two-channel schedules meet as the universe grows?

Every overlapping pair of 2-sets gets a cyclic schedule of the same period,
so the worst case over wake offsets is just a sweep over one period.
"""
from collections import Counter
from itertools import combinations

import numpy as np

from rendezvous import schedules as sch
from rendezvous.simulator import simulate_pair

rng = np.random.default_rng(0)
for n in (4, 16, 256, 4096, 65536):
    L = sch.schedule_cycle_length(n)
    hist = Counter()
    for _ in range(60):
        shared = int(rng.integers(1, n + 1))
        others = rng.choice(np.setdiff1d(np.arange(1, n + 1), [shared]), size=2, replace=False)
        a, b = sch.pair_schedule({shared, int(others[0])}, n), sch.pair_schedule({shared, int(others[1])}, n)
        for d in range(L):
            hist[simulate_pair(a, b, 0, d, L).elapsed + 1] += 1
    worst = max(hist)
    mean = sum(k * v for k, v in hist.items()) / sum(hist.values())
    print(f"n={n:>6}  period L={L:>3}  worst slots={worst:>3}  mean slots={mean:5.2f}")

# Small universes can be swept completely.
n = 8
sets = list(combinations(range(1, n + 1), 2))
worst = 0
for x, y in combinations(sets, 2):
    if set(x) & set(y):
        sa, sb = sch.pair_schedule(x, n), sch.pair_schedule(y, n)
        for d in range(sa.period):
            worst = max(worst, simulate_pair(sa, sb, 0, d, sa.period).elapsed + 1,
                        simulate_pair(sa, sb, d, 0, sa.period).elapsed + 1)
print(f"n=8 exhaustive: worst slots-to-meet {worst} of period {sch.schedule_cycle_length(n)}")
