"""Blocks until rendezvous with a shared one-bit beacon, against a geometric model."""
import math

import numpy as np

from rendezvous import beacon as bc

n = 64
rng = np.random.default_rng(11)
for size in (2, 4, 8):
    blocks = []
    for _ in range(2000):
        pool = rng.choice(np.arange(1, n + 1), size=2 * size - 1, replace=False).tolist()
        si, sj = pool[:size], pool[size - 1:]
        out = bc.simulate_beacon(si, sj, int(rng.integers(2**63)), 2000, n=n)
        blocks.append(out.blocks)
    p = 1 / (2 * size - 1)
    print(f"|S|={size}: mean blocks {np.mean(blocks):6.2f} (geometric 1/p = {1 / p:5.2f}), "
          f"99th pct {np.quantile(blocks, 0.99):5.1f}, "
          f"horizon 2 ln n (|Si|+|Sj|) = {math.ceil(2 * math.log(n) * 2 * size)} blocks "
          f"of {bc.block_length(n)} slots")
