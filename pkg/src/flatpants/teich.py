"""The parameter set B of distance tuples ``(l1, l2, l3, a1, a2, a3)``.

B is the image of the Teichmüller space of flat pants with one cone point.
It is an unbounded convex cone in R^6 cut out by two families of triangle
inequalities. Its boundary walls are where one of them becomes an equality:
``l_i = l_{i+1} + l_{i+2}`` (an *l-wall*) or ``a_j = a_{j+1} + a_{j+2}``
(an *a-wall*). A point may lie on at most one wall of each kind, and never
on an l-wall and an a-wall with the same index.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import (
    REL_EPS,
    ConstraintError,
    DistanceParams,
    check_finite,
    la_violation_table,
    tolerance,
    triangle_walls,
    validate_la,
)

BASEPOINT = (1.0, 1.0, 1.0, 2.0, 2.0, 2.0)

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class Stratum:
    l_walls: frozenset = frozenset()
    a_walls: frozenset = frozenset()

    def as_dict(self):
        return {"l_walls": sorted(self.l_walls), "a_walls": sorted(self.a_walls)}


@dataclass(frozen=True)
class Membership:
    status: str
    stratum: Stratum
    violations: tuple = ()

    @property
    def is_member(self):
        return self.status != OUTSIDE


def _as_point(x):
    if isinstance(x, DistanceParams):
        x = x.values
    arr = check_finite(x).astype(float).ravel()
    if arr.shape != (6,):
        raise ValueError(f"expected a 6-tuple, got shape {arr.shape}")
    return arr


def strata(points, rel_eps=REL_EPS):
    """Wall incidence for an ``(N, 6)`` array: two boolean ``(N, 3)`` arrays."""
    x = np.atleast_2d(np.asarray(points, dtype=float))
    eps = tolerance(x, rel_eps)
    return triangle_walls(x[:, :3], eps), triangle_walls(x[:, 3:], eps)


def member_mask(points, rel_eps=REL_EPS):
    """Boolean ``(N,)``: which rows lie in B (interior or boundary)."""
    return ~la_violation_table(points, rel_eps).any(axis=1)


def stratum(x, rel_eps: float = REL_EPS) -> Stratum:
    lw, aw = strata(_as_point(x)[None, :], rel_eps)
    return Stratum(
        frozenset(int(i) + 1 for i in np.flatnonzero(lw[0])),
        frozenset(int(i) + 1 for i in np.flatnonzero(aw[0])),
    )


def membership(x, rel_eps: float = REL_EPS) -> Membership:
    """Classify ``x`` as interior to B, on its boundary, or outside.

    Points within the equality tolerance of a wall count as boundary.
    """
    point = _as_point(x)
    verdict = validate_la(DistanceParams.from_values(point), rel_eps)
    st = stratum(point, rel_eps)
    if not verdict:
        return Membership(OUTSIDE, st, verdict.violations)
    if st.l_walls or st.a_walls:
        return Membership(BOUNDARY, st)
    return Membership(INTERIOR, st)


def _require_member(x, name, rel_eps):
    point = _as_point(x)
    if not member_mask(point[None, :], rel_eps)[0]:
        raise ConstraintError(membership(point, rel_eps).violations, prefix=f"{name} is not in B")
    return point


def segment_points(x, y, n):
    """``n`` evenly spaced points on the segment from ``x`` to ``y``, endpoints included."""
    t = np.linspace(0.0, 1.0, n)[:, None] if n > 1 else np.zeros((1, 1))
    return (1 - t) * np.asarray(x, dtype=float) + t * np.asarray(y, dtype=float)


def segment_in_B(x, y, n: int = 100, rel_eps: float = REL_EPS) -> bool:
    """Check that ``n`` samples of the segment ``[x, y]`` all lie in B.

    Both endpoints must be members. B is convex, so a ``False`` here
    means the membership test itself is wrong.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    px = _require_member(x, "x", rel_eps)
    py = _require_member(y, "y", rel_eps)
    return bool(member_mask(segment_points(px, py, n), rel_eps).all())


def contract(x, t: float, base=BASEPOINT, rel_eps: float = REL_EPS) -> np.ndarray:
    """Straight-line homotopy ``(1 - t) x + t base`` contracting B to ``base``."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t!r}")
    px = _require_member(x, "x", rel_eps)
    pb = _require_member(base, "base", rel_eps)
    if t == 0.0:
        return px
    if t == 1.0:
        return pb
    return (1 - t) * px + t * pb


def wall_intersection_point(i: int, j: int) -> np.ndarray:
    """A point on the l-wall ``i`` and the a-wall ``j`` (1-based labels).

    Built from radii: the a-wall ``j`` is where ``r_j = 0``. For ``i == j``
    the result violates the strictness requirement and lies outside B.
    """
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError("wall labels are 1, 2 or 3")
    l = np.ones(3)
    l[i - 1] = 2.0
    r = np.ones(3)
    r[j - 1] = 0.0
    a = np.roll(r, -1) + np.roll(r, -2)
    return np.concatenate([l, a])
