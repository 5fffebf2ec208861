"""Parameter systems for flat pairs of pants with one cone point.

Two coordinate systems describe the same space of structures:

* ``LengthRadiusParams`` -- boundary lengths ``l`` and the distances ``r``
  from the cone point to each boundary curve.
* ``DistanceParams`` -- boundary lengths ``l`` and the pairwise distances
  ``a`` between boundary curves, with ``a[i]`` the distance between the two
  curves other than ``c[i]``.

They are related by ``a[i+2] = r[i] + r[i+1]`` (indices mod 3).

Boundary labels are 1-based (``c1, c2, c3``) in every report and message;
arrays are indexed from 0.

All constraint checks exist in vectorised form (``lr_violation_table``,
``la_violation_table``) so that the scalar validators and the batch code
paths share one definition.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

REL_EPS = 1e-9


class NonFiniteError(ValueError):
    """Raised when a parameter is NaN or infinite."""


class ConstraintError(ValueError):
    """Raised when an operation receives parameters that violate constraints."""

    def __init__(self, violations, prefix="invalid parameters"):
        self.violations = tuple(violations)
        detail = "; ".join(v.message for v in self.violations)
        super().__init__(f"{prefix}: {detail}" if detail else prefix)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class Verdict:
    valid: bool
    violations: tuple = ()

    def __bool__(self):
        return self.valid

    @property
    def codes(self):
        return [v.code for v in self.violations]


def _triple(values, name):
    t = tuple(float(x) for x in values)
    if len(t) != 3:
        raise ValueError(f"{name} must have exactly 3 entries, got {len(t)}")
    return t


@dataclass(frozen=True)
class LengthRadiusParams:
    """Boundary lengths ``l`` and cone-point-to-boundary distances ``r``."""

    l: tuple
    r: tuple

    def __post_init__(self):
        object.__setattr__(self, "l", _triple(self.l, "l"))
        object.__setattr__(self, "r", _triple(self.r, "r"))

    @classmethod
    def from_values(cls, values):
        v = list(values)
        if len(v) != 6:
            raise ValueError(f"expected 6 values (l1,l2,l3,r1,r2,r3), got {len(v)}")
        return cls(v[:3], v[3:])

    @property
    def values(self):
        return self.l + self.r

    def as_array(self):
        return np.array(self.values)


@dataclass(frozen=True)
class DistanceParams:
    """Boundary lengths ``l`` and boundary-to-boundary distances ``a``."""

    l: tuple
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "l", _triple(self.l, "l"))
        object.__setattr__(self, "a", _triple(self.a, "a"))

    @classmethod
    def from_values(cls, values):
        v = list(values)
        if len(v) != 6:
            raise ValueError(f"expected 6 values (l1,l2,l3,a1,a2,a3), got {len(v)}")
        return cls(v[:3], v[3:])

    @property
    def values(self):
        return self.l + self.a

    def as_array(self):
        return np.array(self.values)


def tolerance(values, rel_eps=REL_EPS):
    """Absolute equality tolerance ``rel_eps * max(1, max|x|)``.

    Works row-wise on an ``(N, k)`` array, returning shape ``(N,)``.
    """
    x = np.abs(np.asarray(values, dtype=float))
    return rel_eps * np.maximum(1.0, x.max(axis=-1))


def check_finite(values):
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"parameters must be finite, got {tuple(arr.ravel())}")
    return arr


_NEXT, _AFTER = [1, 2, 0], [2, 0, 1]


def _rolled(x):
    """Return ``(x[i], x[i+1], x[i+2])`` columns, cyclically."""
    return x, x[..., _NEXT], x[..., _AFTER]


def triangle_walls(x, eps):
    """Boolean ``(N, 3)``: ``x[i] == x[i+1] + x[i+2]`` within ``eps``."""
    xi, xj, xk = _rolled(x)
    return np.abs(xi - (xj + xk)) <= eps[..., None]


# Column layout of the violation tables. Codes use 1-based labels.
LR_CODES = (
    [f"l{i}-positive" for i in (1, 2, 3)]
    + [f"l{i}-triangle" for i in (1, 2, 3)]
    + [f"r{i}-nonnegative" for i in (1, 2, 3)]
    + [f"r{i}+r{i % 3 + 1}-positive" for i in (1, 2, 3)]
    + [f"degenerate-triangle-requires-r{i}-positive" for i in (1, 2, 3)]
)
LA_CODES = (
    [f"l{i}-positive" for i in (1, 2, 3)]
    + [f"l{i}-triangle" for i in (1, 2, 3)]
    + [f"a{i}-positive" for i in (1, 2, 3)]
    + [f"a{i}-triangle" for i in (1, 2, 3)]
    + ["condition-5"] * 3
)
_SIGN_COLUMNS = slice(6, 9)


def lr_violation_table(values, rel_eps=REL_EPS):
    """Constraint violations for an ``(N, 6)`` array of ``(l, r)`` rows.

    Returns a boolean ``(N, 15)`` array whose columns follow ``LR_CODES``.
    """
    x = np.atleast_2d(np.asarray(values, dtype=float))
    l, r = x[:, :3], x[:, 3:]
    eps = tolerance(x, rel_eps)
    e = eps[:, None]
    li, lj, lk = _rolled(l)
    wall = triangle_walls(l, eps)
    r_zero = np.abs(r) <= e
    return np.hstack([
        l <= e,
        li > lj + lk + e,
        r < 0,
        r_zero & r_zero[:, _NEXT],
        wall & (r <= e),
    ])


def la_violation_table(values, rel_eps=REL_EPS):
    """Constraint violations for an ``(N, 6)`` array of ``(l, a)`` rows.

    Returns a boolean ``(N, 15)`` array whose columns follow ``LA_CODES``.
    """
    x = np.atleast_2d(np.asarray(values, dtype=float))
    l, a = x[:, :3], x[:, 3:]
    eps = tolerance(x, rel_eps)
    e = eps[:, None]
    li, lj, lk = _rolled(l)
    ai, aj, ak = _rolled(a)
    l_wall = triangle_walls(l, eps)
    a_wall = triangle_walls(a, eps)
    return np.hstack([
        l <= e,
        li > lj + lk + e,
        a <= e,
        ai > aj + ak + e,
        l_wall & (a_wall | (ai > aj + ak)),
    ])


def _lr_message(col, p):
    i = col % 3
    j, k = (i + 1) % 3, (i + 2) % 3
    l, r = p[:3], p[3:]
    n = i + 1
    group = col // 3
    if group == 0:
        return f"l{n} = {l[i]!r} must be positive"
    if group == 1:
        return f"l{n} = {l[i]!r} exceeds l{j + 1} + l{k + 1} = {l[j] + l[k]!r}"
    if group == 2:
        return f"r{n} = {r[i]!r} is negative"
    if group == 3:
        return f"r{n} and r{j + 1} are both zero (cone point on two boundary curves)"
    return f"l{n} = l{j + 1} + l{k + 1} (degenerate triangle) requires r{n} > 0"


def _la_message(col, p):
    i = col % 3
    j, k = (i + 1) % 3, (i + 2) % 3
    l, a = p[:3], p[3:]
    n = i + 1
    group = col // 3
    if group == 0:
        return f"l{n} = {l[i]!r} must be positive"
    if group == 1:
        return f"l{n} = {l[i]!r} exceeds l{j + 1} + l{k + 1} = {l[j] + l[k]!r}"
    if group == 2:
        return f"a{n} = {a[i]!r} must be positive"
    if group == 3:
        return f"a{n} = {a[i]!r} exceeds a{j + 1} + a{k + 1} = {a[j] + a[k]!r}"
    return f"l{n} = l{j + 1} + l{k + 1} requires a{n} < a{j + 1} + a{k + 1} strictly"


def _verdict(row, codes, message, values, sign_first=False):
    cols = np.flatnonzero(row)
    if sign_first and np.any(row[_SIGN_COLUMNS]):
        # negative radii are rejected before the geometric constraints
        cols = [c for c in cols if _SIGN_COLUMNS.start <= c < _SIGN_COLUMNS.stop]
    values = [float(v) for v in values]
    violations = tuple(Violation(codes[c], message(c, values)) for c in cols)
    return Verdict(not violations, violations)


def validate_lr(p: LengthRadiusParams, rel_eps: float = REL_EPS) -> Verdict:
    """Check ``p`` against every length/radius constraint.

    All violated constraints are reported, not only the first.
    Raises ``NonFiniteError`` for NaN or infinite entries.
    """
    values = check_finite(p.values)
    row = lr_violation_table(values, rel_eps)[0]
    return _verdict(row, LR_CODES, _lr_message, values, sign_first=True)


def validate_la(p: DistanceParams, rel_eps: float = REL_EPS) -> Verdict:
    """Check ``p`` against every distance-parameter constraint."""
    values = check_finite(p.values)
    row = la_violation_table(values, rel_eps)[0]
    return _verdict(row, LA_CODES, _la_message, values)


def r_to_a(r):
    """``a[i+2] = r[i] + r[i+1]``, i.e. ``a[i] = r[i+1] + r[i+2]``; works on ``(..., 3)``."""
    r = np.asarray(r, dtype=float)
    return r[..., _NEXT] + r[..., _AFTER]


def a_to_r(a):
    """Inverse of :func:`r_to_a`: ``r[i] = (a[i+1] + a[i+2] - a[i]) / 2``."""
    a = np.asarray(a, dtype=float)
    return (a[..., _NEXT] + a[..., _AFTER] - a) / 2


def lr_to_la_array(values):
    """Batch conversion of ``(N, 6)`` ``(l, r)`` rows to ``(l, a)`` rows.

    Rows are converted without validation; use ``lr_violation_table`` to
    screen them.
    """
    x = np.atleast_2d(np.asarray(values, dtype=float))
    return np.hstack([x[:, :3], r_to_a(x[:, 3:])])


def la_to_lr_array(values, rel_eps=REL_EPS):
    """Batch conversion of ``(l, a)`` rows to ``(l, r)`` rows.

    Radii within the equality tolerance of zero are snapped to exactly 0.
    """
    x = np.atleast_2d(np.asarray(values, dtype=float))
    r = a_to_r(x[:, 3:])
    eps = tolerance(x, rel_eps)
    r[np.abs(r) <= eps[:, None]] = 0.0
    return np.hstack([x[:, :3], r])


def lr_to_la(p: LengthRadiusParams, rel_eps: float = REL_EPS) -> DistanceParams:
    verdict = validate_lr(p, rel_eps)
    if not verdict:
        raise ConstraintError(verdict.violations)
    return DistanceParams.from_values(lr_to_la_array(p.values)[0])


def la_to_lr(p: DistanceParams, rel_eps: float = REL_EPS) -> LengthRadiusParams:
    verdict = validate_la(p, rel_eps)
    if not verdict:
        raise ConstraintError(verdict.violations)
    return LengthRadiusParams.from_values(la_to_lr_array(p.values, rel_eps)[0])


@dataclass(frozen=True)
class DegeneracyReport:
    """Which pieces of the triangle-plus-rectangles decomposition collapse.

    ``singularity_location`` is ``"interior"``, ``"boundary"`` (with
    ``boundary_index`` set) or ``"degenerate"`` when the cone point would sit
    on two or more boundary curves at once.
    """

    triangle_degenerate: bool
    triangle_index: Optional[int]
    degenerate_rectangles: frozenset = field(default_factory=frozenset)
    pants_degenerate: bool = False
    singularity_location: str = "interior"
    boundary_index: Optional[int] = None

    def describe(self):
        if not self.pants_degenerate:
            return "non-degenerate"
        n = len(self.degenerate_rectangles)
        words = {2: "two", 3: "three"}[n]
        if self.triangle_degenerate and n == 2:
            return f"degenerate pair of pants: triangle and {words} rectangles degenerate"
        return f"degenerate pair of pants: {words} rectangles degenerate"


def classify(p: LengthRadiusParams, rel_eps: float = REL_EPS) -> DegeneracyReport:
    """Report degenerate triangle/rectangles for any finite ``p``.

    Validity is not required; the report explains why invalid inputs fail.
    """
    values = check_finite(p.values)
    eps = tolerance(values[None, :], rel_eps)
    walls = np.flatnonzero(triangle_walls(values[None, :3], eps)[0])
    tri_index = int(walls[0]) + 1 if walls.size else None
    zero = frozenset(int(i) + 1 for i in np.flatnonzero(np.abs(values[3:]) <= eps[0]))

    pants_degenerate = len(zero) >= 2
    if tri_index is not None:
        others = {tri_index % 3 + 1, (tri_index + 1) % 3 + 1}
        pants_degenerate = pants_degenerate or others <= zero

    if len(zero) == 1:
        location, index = "boundary", next(iter(zero))
    elif zero:
        location, index = "degenerate", None
    else:
        location, index = "interior", None
    return DegeneracyReport(
        triangle_degenerate=tri_index is not None,
        triangle_index=tri_index,
        degenerate_rectangles=zero,
        pants_degenerate=pants_degenerate,
        singularity_location=location,
        boundary_index=index,
    )
