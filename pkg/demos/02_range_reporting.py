# Grid-backed range reporting: all disks hitting a query disk, exact output,
# and early abort once a hit budget is exceeded.

import numpy as np

from diskdense import Disk, ReportIndex, generate, intersects

inst = generate("uniform", 2000, side=40.0, rmin=0.3, rmax=3.0, seed=1)
idx = ReportIndex(inst.disks)

q = Disk(10_000, 20.0, 20.0, 2.5)
out = idx.report(q)
print("hits:", out.count_seen)

# The hit list is exactly the predicate filter, closed-disk semantics included.
oracle = sorted(d.id for d in inst.disks if intersects(d, q))
print("matches brute-force filter:", list(out.ids) == oracle)

# With a limit the query aborts as soon as strictly more hits have been seen;
# at the limit boundary there is no abort.
print("\nlimit == true count  ->", idx.report(q, limit=out.count_seen).overflowed)
print("limit == count - 1   ->", idx.report(q, limit=out.count_seen - 1).overflowed)

over = idx.report(q, limit=5)
print("overflow with limit 5: seen", over.count_seen, "(ids withheld:", over.ids, ")")

# Member degrees (self excluded) come from the same machinery.
d0 = inst.disks[0]
print("\ndegree of disk 0:", idx.degree(d0))
print("oracle degree:    ",
      sum(1 for d in inst.disks if d.id != 0 and intersects(d, d0)))
