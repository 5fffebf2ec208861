"""
Two parameter systems for a flat pair of pants
==============================================

A flat pair of pants with one cone point is fixed by six numbers. In the
``lr`` system they are the boundary lengths ``l`` and the distances ``r``
from the cone point to each boundary curve. In the ``la`` system the radii
are replaced by the boundary-to-boundary distances ``a``.
"""

import numpy as np

from flatpants import (
    DistanceParams,
    LengthRadiusParams,
    classify,
    la_to_lr,
    lr_to_la,
    validate_la,
    validate_lr,
)

# A symmetric pants: unit boundaries, unit radii.
p = LengthRadiusParams.from_values((1, 1, 1, 1, 1, 1))
print("valid:", bool(validate_lr(p)))
print("as distances:", lr_to_la(p).values)

# %%
# Going back: each a_i is the sum of the two radii not indexed by i, so
# the radii come out of a 3x3 linear system.
q = DistanceParams.from_values((4, 4, 4, 3, 4, 5))
print("radii from a=(3,4,5):", la_to_lr(q).r)

# %%
# Validation reports every violated condition, not just the first.
bad = LengthRadiusParams.from_values((3, 1, 0, 1, 1, 1))
for v in validate_lr(bad).violations:
    print(f"  {v.code:>14}: {v.message}")

# %%
# A flat triangle (l1 = l2 + l3) is allowed only when the radius on that
# side stays positive; a pants with r_i = 0 has its cone point on c_i.
print(validate_lr(LengthRadiusParams.from_values((2, 1, 1, 0, 1, 1))).codes)
print(classify(LengthRadiusParams.from_values((1, 1, 1, 0, 1, 1))))

# %%
# The la system states condition 5 directly: on a flat triangle the
# matching a_i must stay strictly below the sum of the other two.
print(validate_la(DistanceParams.from_values((2, 1, 1, 4, 2, 2))).codes)

# %%
# Degenerate pants: two collapsed rectangles.
print(classify(LengthRadiusParams.from_values((1, 1, 1, 0, 0, 1))).describe())

# %%
# Round trip over many random tuples, using the array functions.
from flatpants.params import la_to_lr_array, lr_to_la_array

rng = np.random.default_rng(0)
l = rng.uniform(1, 2, (100_000, 3))
lr = np.hstack([l, rng.uniform(0.1, 3, (100_000, 3))])
ok = lr[:, 0] < lr[:, 1] + lr[:, 2]
ok &= lr[:, 1] < lr[:, 0] + lr[:, 2]
ok &= lr[:, 2] < lr[:, 0] + lr[:, 1]
back = la_to_lr_array(lr_to_la_array(lr[ok]))
print("max relative round-trip error:", np.max(np.abs(back - lr[ok]) / lr[ok]))
