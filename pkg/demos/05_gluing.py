"""
Gluing pants into closed surfaces
=================================

Pants glued along boundary curves of equal length give a closed flat
surface whose cone points are those of the pants. Gauss-Bonnet ties the
sum of curvatures to the genus; the residual printed here should vanish.
"""

import math

from flatpants import (
    GluingSpec,
    LengthRadiusParams,
    SurfaceSpec,
    decomposition_feasible,
    double,
    gauss_bonnet_bounded,
    gauss_bonnet_closed,
    glue,
)

unit = LengthRadiusParams.from_values((1, 1, 1, 1, 1, 1))

# Two pants glued curve to curve: genus 2, two cone points of angle 4 pi.
two = glue(GluingSpec([unit, unit], [((0, k), (1, k)) for k in (1, 2, 3)]))
print(two.surface.genus, [t / math.pi for t in two.cone_angles], two.residual)

# %%
# Four pants where every pair shares one curve: genus 3.
pairs = [((0, 1), (1, 1)), ((0, 2), (2, 1)), ((0, 3), (3, 1)),
         ((1, 2), (2, 2)), ((1, 3), (3, 2)), ((2, 3), (3, 3))]
four = glue(GluingSpec([unit] * 4, pairs))
print(four.surface.genus, four.residual)

# %%
# A pants without cone points would violate Gauss-Bonnet by 2 pi.
print("no cone points:", gauss_bonnet_bounded(SurfaceSpec(0, 3)) / math.pi, "pi")

# %%
# Doubling a pants along its boundary also gives genus 2.
s = double(LengthRadiusParams.from_values((1, 1, 1, 0, 1, 1)))
print(s.genus, [t / math.pi for t in s.interior_cones], gauss_bonnet_closed(s))

# %%
# A genus-g surface with one cone point cannot be cut into flat pants once
# g >= 3: there are 2g - 2 pants and the single cone point reaches two.
for g in range(2, 6):
    v = decomposition_feasible(g, 1)
    print(g, v.verdict.value, "-", v.reason)
