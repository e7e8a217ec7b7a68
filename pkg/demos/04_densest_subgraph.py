# Densest subsets of disk intersection graphs, four ways: brute force,
# exact min-cut, greedy peeling on the explicit graph, and the two
# approximation pipelines that never materialize all edges.

import time

from diskdense import (ExplicitGraph, all_pairs, brute_densest, charikar_peel,
                       densest_disks_1eps, densest_disks_2eps, exact_densest,
                       five_disk_instance, generate)

inst = five_disk_instance()
g = ExplicitGraph.from_pairs(inst.n, all_pairs(inst))

print("five-disk demo instance")
print("  brute: ", brute_densest(g).subset, brute_densest(g).density)
print("  exact: ", exact_densest(g).subset, exact_densest(g).density)
print("  peel:  ", charikar_peel(g).subset, charikar_peel(g).density)

# A larger instance: compare the implicit-graph pipelines against the exact
# optimum computed from the explicit edge set.
inst = generate("uniform", 400, side=14.0, rmin=0.5, rmax=1.2, seed=5)
g = ExplicitGraph.from_pairs(inst.n, all_pairs(inst))
exact = exact_densest(g, canonical=False)
print(f"\nuniform n=400: m={g.m}, optimal density={exact.density} "
      f"({float(exact.density):.3f})")

t0 = time.time()
r2 = densest_disks_2eps(inst, 0.5, seed=1)
print(f"  (2+0.5) approx: density {float(r2.density):.3f}, "
      f"|S|={len(r2.subset)}, ratio {float(r2.density / exact.density):.3f}, "
      f"{time.time() - t0:.2f}s")

t0 = time.time()
r1 = densest_disks_1eps(inst, 0.5, seed=1)
print(f"  (1+0.5) approx: density {float(r1.density):.3f}, "
      f"path={r1.info['path']}, ratio {float(r1.density / exact.density):.3f}, "
      f"{time.time() - t0:.2f}s")
