# The random binary hierarchy: approximate counts and near-uniform samples
# of "disks hitting q" using only reporting queries with early abort.

import math
from collections import Counter

import numpy as np

from diskdense import SampleTree, generate

# 4096 disks sharing a common point: every query among them hits all of them,
# so the true count is known and the sampler can be audited.
inst = generate("clique", 4096, r=1.0, seed=7)
tree = SampleTree(inst.disks, c=2.0, seed=42)
rng = np.random.default_rng(3)
q = inst.disks[0]

eps = 0.25
res = tree.query(q, eps, rng)
print(f"one query: estimate={res.estimate} (true 4096), level j={res.j}, "
      f"exact={res.exact}, sampled disk={res.sample}")

draws = 2000
good = 0
for _ in range(draws):
    est, _ = tree.approx_count(q, eps, rng)
    good += 0.75 * 4096 < est < 1.25 * 4096
print(f"{good}/{draws} estimates inside (1 +/- {eps}) * 4096")

# Near-uniform neighbor sampling, audited by total-variation distance.
small = generate("clique", 64, r=1.0, seed=9)
t2 = SampleTree(small.disks, c=2.0, seed=10)
counts = Counter(t2.sample_excluding(small.disks[0], 0, eps, rng)
                 for _ in range(10_000))
tv = 0.5 * sum(abs(counts.get(i, 0) / 10_000 - 1 / 63) for i in range(1, 64))
print(f"\nneighbor sampling on 64-clique: TV distance from uniform = {tv:.4f} "
      f"(bound {eps + 3 * math.sqrt(math.log(64) / 10_000):.4f})")
