"""
Checking distances on a sampled graph
=====================================

The development is sampled at spacing ``h``, samples in the same face are
joined by straight segments, and glued copies are merged. Shortest paths
in the graph overestimate surface distances by a small factor that shrinks
with ``h``. We compare them with the declared radii and with ``a_i``.
"""

from flatpants import LengthRadiusParams, build, build_graph, measure, structure_distance
from flatpants.metric import distance_between_boundaries

p = LengthRadiusParams.from_values((4, 4, 4, 3, 2, 1))
for h in (None, 0.025):
    rep = measure(p, h)
    print(f"h={rep.h:.4f}  r measured {tuple(round(x, 4) for x in rep.measured_r)}"
          f"  a measured {tuple(round(x, 4) for x in rep.measured_a)}")
    print("  worst relative error:", max(rep.r_errors + rep.a_errors))

# %%
# Shortest boundary-to-boundary paths go through the cone point, so
# d(c1, c2) comes out close to r1 + r2 = 5.
g = build_graph(build(p))
print("d(c1, c2) =", distance_between_boundaries(g, 1, 2))

# %%
# Comparing two structures: corresponding samples are matched face by
# face and the largest change in pairwise distance is reported.
base = LengthRadiusParams.from_values((1, 1, 1, 1, 1, 1))
for delta in (0.1, 0.01, 0.001):
    q = LengthRadiusParams.from_values((1, 1, 1, 1, 1, 1 + delta))
    print(f"delta={delta:<6} structure distance {structure_distance(base, q):.5f}")
