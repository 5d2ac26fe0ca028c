"""Random Heegaard gluings and the independent cross-checks.

Random gluings are words in symplectic transvections composed with the
standard swap.  For every rational homology sphere in the batch we compare
the Smith-normal-form computation with a brute-force cokernel enumeration.
"""

import collections
import time

import numpy as np

from torsionlink import homology, is_rational_homology_sphere, linking_form, random_gluing
from torsionlink.crosscheck import check_all

orders = []
groups = collections.Counter()
t0 = time.perf_counter()
for seed in range(120):
    g = random_gluing(1 + seed % 3, 10, seed)
    pres = homology(g)
    if not is_rational_homology_sphere(g):
        groups[f"free rank {pres.free_rank}"] += 1
        continue
    f = linking_form(g)
    status = check_all(g, f, pres)
    assert "fail" not in status.values(), status
    orders.append(f.group.order)
    groups[str(f.group)] += 1
print(f"{len(orders)} QHS gluings checked in {time.perf_counter() - t0:.2f}s")

orders = np.array(orders)
print("median |H_1|:", np.median(orders), " max:", orders.max())
for name, n in groups.most_common(8):
    print(f"{n:4d}  {name}")

# the gram of one non-cyclic example
for s in range(1000):
    g = random_gluing(2, 12, s)
    if is_rational_homology_sphere(g) and homology(g).group.rank > 1:
        break
f = linking_form(g)
print(g.matrix)
print(f.group)
for row in f.gram:
    print("  ".join(str(x) for x in row))
