# Disks, the closed-disk intersection predicate, instance files, and
# enumerating every intersecting pair without missing containments.

import numpy as np

from diskdense import (Disk, all_pairs, all_pairs_naive, five_disk_instance,
                       generate, intersects, read_instance, write_instance)

# Closed disks: tangency counts, containment counts.
a = Disk(0, 0.0, 0.0, 1.0)
b = Disk(1, 2.0, 0.0, 1.0)       # tangent to a
c = Disk(2, 0.5, 0.0, 3.0)       # fully contains a
print("tangent:", intersects(a, b))
print("containment:", intersects(a, c))
print("separated:", intersects(a, Disk(3, 2.001, 0.0, 1.0)))

# A small named instance: five disks, six intersecting pairs, and a densest
# core of four disks at density 5/4.
inst = five_disk_instance()
print("\ninstance:", inst.name, "n =", inst.n)
for u, v in all_pairs(inst):
    print(f"  edge {u} - {v}")

# Instance files round-trip exactly (one id,cx,cy,r line per disk).
write_instance(inst, "/tmp/demo_instance.csv")
again = read_instance("/tmp/demo_instance.csv")
print("round trip equal:", again == inst)

# The sweep over x-extents matches the quadratic oracle on random instances.
rng = np.random.default_rng(0)
for trial in range(3):
    n = int(rng.integers(50, 800))
    inst = generate("uniform", n, side=20.0, rmin=0.3, rmax=2.0, seed=trial)
    fast = all_pairs(inst)
    slow = all_pairs_naive(inst)
    print(f"n={n:4d}: {len(fast):5d} pairs, sweep == naive: {fast.as_set() == slow.as_set()}")
