"""
The set of all distance tuples
==============================

Every flat pants gives a point ``(l1, l2, l3, a1, a2, a3)`` in R^6. The set
B of such points is a convex cone cut out by triangle inequalities; its
walls are where one of them becomes an equality.
"""

import numpy as np

from flatpants import contract, membership, segment_in_B
from flatpants.teich import wall_intersection_point

for x in [(1, 1, 1, 2, 2, 2), (2, 1, 1, 1, 1, 1), (2, 1, 1, 2, 1, 1)]:
    m = membership(x)
    print(x, m.status, m.stratum.as_dict())

# %%
# Walls of the two kinds meet, except when they share an index.
for i in (1, 2, 3):
    print([membership(wall_intersection_point(i, j)).status for j in (1, 2, 3)])

# %%
# Convexity: the segment between two members stays inside.
print(segment_in_B((1, 1, 1, 2, 2, 2), (4, 4, 4, 3, 4, 5), n=1000))

# %%
# Contracting to the base point (1, 1, 1, 2, 2, 2) along straight lines.
x = np.array([2, 1, 1.5, 0.5, 2, 2.2])
for t in np.linspace(0, 1, 5):
    y = contract(x, t)
    print(f"t={t:.2f}", np.round(y, 3), membership(y).status)
