"""Deterministic epoch schedules against the random-hopping and sweep baselines."""
from rendezvous import schedules as sch
from rendezvous.simulator import TrialConfig, run_trial_batch

n = 64
for family in ("general", "symmetric", "random", "sweep"):
    rep = run_trial_batch(TrialConfig(family, n, pairs=200, seed=5, max_size=6))
    hist = rep.histogram
    mean = sum(k * v for k, v in hist.items()) / max(1, sum(hist.values()))
    print(f"{family:<10} trials={rep.trials} misses={rep.misses:<3} worst={rep.worst_elapsed!s:<6} "
          f"mean={mean:8.1f}  violations={len(rep.violations)}")

print()
print("guaranteed worst case for |A| = |B| = 6:", sch.general_bound(6, 6, n), "slots")
print("the sweep baseline only meets when both agents wake together")
