"""
Cutting a pants open: triangle plus three rectangles
====================================================

Cut the surface along the shortest segments from the cone point to each
boundary curve. What is left lies flat in the plane as a triangle, whose
corners are the three copies of the cone point, with a rectangle of width
``l_i`` and height ``r_i`` standing on each side.
"""

import math
import tempfile
from pathlib import Path

from flatpants import LengthRadiusParams, build, cone_angle, emit_svg

p = LengthRadiusParams.from_values((3, 4, 5, 2, 1, 1))
d = build(p)
print("triangle corners:\n", d.triangle)
print("triangle angles / pi:", d.triangle_angles() / math.pi)

# %%
# Every copy of the cone point contributes: the triangle corners sum to pi
# and each rectangle adds two right angles, so the total is 4 pi.
c = cone_angle(d)
print(f"cone angle = {c.total_angle / math.pi:.12f} pi, curvature = {c.curvature / math.pi:.3f} pi")

# %%
# With r1 = 0 the first rectangle collapses, the cone point sits on c1 and
# the angle drops to 3 pi. The curvature stays -2 pi either way.
c = cone_angle(build(LengthRadiusParams.from_values((1, 1, 1, 0, 1, 1))))
print(c.location, c.boundary_index, c.total_angle / math.pi, c.curvature / math.pi)

# %%
# A flat triangle still builds; the angle at s1 is pi.
flat = build(LengthRadiusParams.from_values((2, 1, 1, 1, 1, 1)))
print("angle at s1 / pi:", flat.triangle_angles()[0] / math.pi)

# %%
# SVG output. Identified edge pairs share a colour.
out = Path(tempfile.gettempdir()) / "pants_development.svg"
out.write_text(emit_svg(d))
print("wrote", out)
