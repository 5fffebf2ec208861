"""Planar development of a flat pair of pants: a triangle plus three rectangles.

Cutting the surface along the shortest segments ``d1, d2, d3`` from the cone
point to the boundary curves gives a polygon made of

* a triangle ``T = (s1, s2, s3)`` whose vertices are the three copies of the
  cone point, the side opposite ``s[i]`` having length ``l[i]``;
* rectangles ``R[i]`` of width ``l[i]`` and height ``r[i]`` standing on that
  side, whose two vertical sides are the copies of ``d[i]`` and whose far
  side is the boundary curve ``c[i]``.

Gluing the vertical sides of each rectangle recovers the surface. A
rectangle with ``r[i] == 0`` is collapsed: ``c[i]`` is then the triangle side
itself and the cone point sits on that boundary curve.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import (
    REL_EPS,
    ConstraintError,
    LengthRadiusParams,
    Violation,
    classify,
    validate_lr,
)

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class Rectangle:
    index: int  # 1-based label of the boundary curve
    corners: np.ndarray  # (4, 2): s_j, s_k, top over s_k, top over s_j
    width: float
    height: float
    collapsed: bool

    @property
    def base(self):
        return self.corners[0], self.corners[1]

    @property
    def top(self):
        return self.corners[3], self.corners[2]

    @property
    def direction(self):
        a, b = self.base
        return (b - a) / np.hypot(*(b - a))

    @property
    def normal(self):
        e = self.direction
        return np.array([e[1], -e[0]])


@dataclass(frozen=True)
class Identification:
    """Two copies of a cut segment, glued by the translation along the base."""

    index: int
    first: np.ndarray  # (2, 2) oriented from the cone point to c_i
    second: np.ndarray
    collapsed: bool

    @property
    def length(self):
        return float(np.hypot(*(self.first[1] - self.first[0])))


@dataclass(frozen=True)
class Development:
    params: LengthRadiusParams
    triangle: np.ndarray  # (3, 2): s1, s2, s3, counter-clockwise
    rectangles: tuple
    identifications: tuple

    @property
    def faces(self):
        """Closed vertex loops of the non-collapsed faces, triangle first."""
        loops = [self.triangle]
        loops += [R.corners for R in self.rectangles if not R.collapsed]
        return loops

    def boundary_trace(self, i):
        """Segment of the development that is the boundary curve ``c_i``."""
        R = self.rectangles[i - 1]
        return np.array(R.top)

    def side_length(self, i):
        j, k = i % 3, (i + 1) % 3
        return float(np.hypot(*(self.triangle[k] - self.triangle[j])))

    def triangle_angles(self):
        """Interior angles at ``s1, s2, s3`` measured from the coordinates."""
        angles = []
        for i in range(3):
            u = self.triangle[(i + 1) % 3] - self.triangle[i]
            v = self.triangle[(i + 2) % 3] - self.triangle[i]
            angles.append(_angle_between(u, v))
        return np.array(angles)


@dataclass(frozen=True)
class ConePoint:
    location: str  # "interior" or "boundary"
    total_angle: float
    curvature: float
    boundary_index: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.total_angle) and self.total_angle > 0):
            raise ValueError(f"total angle must be positive and finite, got {self.total_angle}")


def _angle_between(u, v):
    cross = u[0] * v[1] - u[1] * v[0]
    return math.atan2(abs(cross), float(np.dot(u, v)))


def law_of_cosines_angle(opposite, b, c):
    """Angle between sides ``b`` and ``c`` of a triangle, opposite side ``opposite``.

    The cosine is clamped to ``[-1, 1]`` so collinear (degenerate)
    triangles give exactly 0 or pi.
    """
    cos = (b * b + c * c - opposite * opposite) / (2 * b * c)
    return math.acos(min(1.0, max(-1.0, cos)))


def _place_triangle(l):
    l1, l2, l3 = l
    x = (l1 * l1 + l3 * l3 - l2 * l2) / (2 * l1)
    y = math.sqrt(max(0.0, l3 * l3 - x * x))
    return np.array([[x, y], [0.0, 0.0], [l1, 0.0]])


def build(p: LengthRadiusParams, rel_eps: float = REL_EPS) -> Development:
    """Construct the development of the pants with parameters ``p``.

    ``s2`` is placed at the origin, ``s3`` at ``(l1, 0)`` and ``s1`` in the
    upper half-plane; each rectangle extends outward, perpendicular to its
    side of the triangle.
    """
    verdict = validate_lr(p, rel_eps)
    report = classify(p, rel_eps)
    if report.pants_degenerate:
        raise ConstraintError(verdict.violations, prefix=report.describe())
    if not verdict:
        raise ConstraintError(verdict.violations)

    tri = _place_triangle(p.l)
    rects, idents = [], []
    for i in range(3):
        a, b = tri[(i + 1) % 3], tri[(i + 2) % 3]
        collapsed = (i + 1) in report.degenerate_rectangles
        height = 0.0 if collapsed else p.r[i]
        e = (b - a) / p.l[i]
        n = np.array([e[1], -e[0]])
        corners = np.array([a, b, b + height * n, a + height * n])
        corners.setflags(write=False)
        rects.append(Rectangle(i + 1, corners, p.l[i], height, collapsed))
        idents.append(Identification(
            i + 1,
            np.array([a, a + height * n]),
            np.array([b, b + height * n]),
            collapsed,
        ))
    tri.setflags(write=False)
    return Development(p, tri, tuple(rects), tuple(idents))


def cone_angle(d: Development) -> ConePoint:
    """Total angle at the cone point, summed over its copies in the development.

    The triangle contributes its three corner angles and every
    non-collapsed rectangle contributes the two corners on its base.
    """
    total = float(np.sum(d.triangle_angles()))
    for R in d.rectangles:
        if R.collapsed:
            continue
        a, b = R.base
        total += _angle_between(b - a, R.corners[3] - a)
        total += _angle_between(a - b, R.corners[2] - b)

    collapsed = [R.index for R in d.rectangles if R.collapsed]
    if collapsed:
        return ConePoint("boundary", total, math.pi - total, collapsed[0])
    return ConePoint("interior", total, TWO_PI - total)


# --- SVG rendering -------------------------------------------------------

_IDENT_COLORS = ("#d62728", "#1f77b4", "#2ca02c")
_FACE_FILL = "#f2f2f2"


def _fmt(x):
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def emit_svg(d: Development) -> str:
    """Render the development as an SVG 1.1 document.

    Screen y points down, so the development is mirrored vertically. The
    output depends only on ``d``; identical inputs give identical bytes.
    """
    pts = [d.triangle] + [R.corners for R in d.rectangles]
    allpts = np.vstack(pts)
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = hi - lo
    pad = 0.05 * max(span.max(), 1e-12)
    x0, y0 = lo[0] - pad, -(hi[1] + pad)
    w, h = span[0] + 2 * pad, span[1] + 2 * pad
    stroke = _fmt(0.004 * max(w, h))
    dot = _fmt(0.012 * max(w, h))
    font = _fmt(0.045 * max(w, h))

    def xy(p):
        return _fmt(p[0]), _fmt(-p[1])

    def path(loop):
        cmds = [f"M {' '.join(xy(loop[0]))}"]
        cmds += [f"L {' '.join(xy(q))}" for q in loop[1:]]
        return " ".join(cmds) + " Z"

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">',
        f'<g fill="{_FACE_FILL}" stroke="#000000" stroke-width="{stroke}">',
    ]
    out.append(f'<path class="face" id="T" d="{path(d.triangle)}"/>')
    for R in d.rectangles:
        if not R.collapsed:
            out.append(f'<path class="face" id="R{R.index}" d="{path(R.corners)}"/>')
    out.append("</g>")

    out.append(f'<g stroke-width="{_fmt(3 * float(stroke))}">')
    for ident in d.identifications:
        if ident.collapsed:
            continue
        color = _IDENT_COLORS[ident.index - 1]
        for k, seg in enumerate((ident.first, ident.second)):
            (ax, ay), (bx, by) = xy(seg[0]), xy(seg[1])
            out.append(
                f'<line class="ident" data-pair="d{ident.index}" id="d{ident.index}{"ab"[k]}" '
                f'x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{color}"/>'
            )
    out.append("</g>")

    out.append(f'<g font-family="sans-serif" font-size="{font}" text-anchor="middle">')
    for R in d.rectangles:
        a, b = R.top
        mid = (a + b) / 2 + R.normal * 0.06 * max(w, h)
        x, y = xy(mid)
        out.append(f'<text class="boundary" x="{x}" y="{y}">c{R.index}</text>')
    out.append("</g>")

    out.append('<g fill="#000000">')
    for i, s in enumerate(d.triangle, start=1):
        x, y = xy(s)
        out.append(f'<circle class="singularity" id="s{i}" cx="{x}" cy="{y}" r="{dot}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
