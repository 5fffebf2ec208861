"""Gauss-Bonnet bookkeeping and gluing pants into closed flat surfaces."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .development import build, cone_angle
from .params import REL_EPS, LengthRadiusParams, classify

TWO_PI = 2 * math.pi
LENGTH_RTOL = 1e-12


@dataclass(frozen=True)
class SurfaceSpec:
    """Genus, boundary count and cone angles of a flat surface."""

    genus: int
    boundary_count: int = 0
    interior_cones: tuple = ()
    boundary_cones: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "interior_cones", tuple(float(t) for t in self.interior_cones))
        object.__setattr__(self, "boundary_cones", tuple(float(t) for t in self.boundary_cones))
        if self.genus < 0 or self.boundary_count < 0:
            raise ValueError("genus and boundary count must be non-negative")
        for t in self.interior_cones + self.boundary_cones:
            if not (math.isfinite(t) and t > 0):
                raise ValueError(f"cone angles must be positive and finite, got {t}")
        if any(math.isclose(t, TWO_PI) for t in self.interior_cones):
            raise ValueError("an interior cone angle of 2*pi is not a singularity")
        if any(math.isclose(t, math.pi) for t in self.boundary_cones):
            raise ValueError("a boundary cone angle of pi is not a singularity")
        if self.boundary_count == 0 and self.boundary_cones:
            raise ValueError("closed surfaces cannot carry boundary cone points")

    @property
    def euler_characteristic(self):
        return 2 - 2 * self.genus - self.boundary_count

    def total_curvature(self):
        return (sum(TWO_PI - t for t in self.interior_cones)
                + sum(math.pi - t for t in self.boundary_cones))


def gauss_bonnet_closed(s: SurfaceSpec) -> float:
    """``sum(2 pi - theta) - (4 - 4 g) pi`` for a closed surface."""
    if s.boundary_count != 0:
        raise ValueError("surface has boundary; use gauss_bonnet_bounded")
    return s.total_curvature() - (4 - 4 * s.genus) * math.pi


def gauss_bonnet_bounded(s: SurfaceSpec) -> float:
    """Residual of the Gauss-Bonnet identity including boundary cone points.

    For genus 0 the right-hand side is ``(4 - 2 b) pi``; in general it is
    ``2 pi chi`` with ``chi = 2 - 2 g - b``. The two agree on genus 0.
    """
    if s.genus == 0:
        return s.total_curvature() - (4 - 2 * s.boundary_count) * math.pi
    return s.total_curvature() - TWO_PI * s.euler_characteristic


def double_surface(s: SurfaceSpec) -> SurfaceSpec:
    """Glue ``s`` to its mirror image along the boundary.

    Interior cone points appear twice; each boundary cone point is glued to
    its own copy, giving one interior cone of twice the angle.
    """
    if s.boundary_count == 0:
        raise ValueError("doubling needs a surface with boundary")
    return SurfaceSpec(
        genus=2 * s.genus + s.boundary_count - 1,
        boundary_count=0,
        interior_cones=s.interior_cones * 2 + tuple(2 * t for t in s.boundary_cones),
    )


def pants_surface(p: LengthRadiusParams, rel_eps: float = REL_EPS) -> SurfaceSpec:
    """Surface data of a flat pair of pants, cone angle measured on its development."""
    cone = cone_angle(build(p, rel_eps))
    if cone.location == "interior":
        return SurfaceSpec(0, 3, (cone.total_angle,))
    return SurfaceSpec(0, 3, (), (cone.total_angle,))


def double(p: LengthRadiusParams, rel_eps: float = REL_EPS) -> SurfaceSpec:
    """Closed genus-2 surface obtained by doubling the pants ``p``."""
    return double_surface(pants_surface(p, rel_eps))


@dataclass(frozen=True)
class GluingSpec:
    """Pants plus pairings ``((pants, boundary), (pants, boundary))``.

    Pants indices are 0-based positions in ``pants``; boundary labels are
    1, 2, 3.
    """

    pants: tuple
    pairings: tuple

    def __post_init__(self):
        object.__setattr__(self, "pants", tuple(self.pants))
        object.__setattr__(
            self,
            "pairings",
            tuple((tuple(map(int, a)), tuple(map(int, b))) for a, b in self.pairings),
        )


@dataclass(frozen=True)
class GluedSurface:
    surface: SurfaceSpec
    residual: float
    cone_angles: tuple = field(default_factory=tuple)


class GluingError(ValueError):
    pass


def _slot(ref, n_pants):
    k, b = ref
    if not 0 <= k < n_pants or b not in (1, 2, 3):
        raise GluingError(f"no boundary slot {ref}: pants index must be in [0, {n_pants}) and boundary in 1..3")
    return 3 * k + (b - 1)


def glue(g: GluingSpec, rel_eps: float = REL_EPS) -> GluedSurface:
    """Assemble the closed surface described by ``g`` and audit its cone angles.

    Each pants must be valid with its cone point in the interior, paired
    curves must have equal lengths, and every boundary curve must be used
    exactly once. Twists along the gluing curves are not tracked; they do
    not affect genus or cone angles.
    """
    n = len(g.pants)
    if n == 0:
        raise GluingError("no pants to glue")
    for k, p in enumerate(g.pants):
        rep = classify(p, rel_eps)
        if rep.singularity_location != "interior":
            raise GluingError(f"pants {k}: cone point must be interior, got {rep.singularity_location}")

    used = {}
    for pair in g.pairings:
        a, b = (_slot(ref, n) for ref in pair)
        if a == b:
            raise GluingError(f"pairing {pair} glues a boundary curve to itself")
        for s in (a, b):
            if s in used:
                raise GluingError(f"boundary {pair[0] if s == a else pair[1]} used twice "
                                  f"(also in {used[s]})")
            used[s] = pair
        (ka, ba), (kb, bb) = pair
        la, lb = g.pants[ka].l[ba - 1], g.pants[kb].l[bb - 1]
        if not math.isclose(la, lb, rel_tol=LENGTH_RTOL, abs_tol=0.0):
            raise GluingError(f"pairing {pair}: length mismatch {la!r} != {lb!r}")
    missing = sorted(set(range(3 * n)) - set(used))
    if missing:
        slots = [(s // 3, s % 3 + 1) for s in missing]
        raise GluingError(f"incomplete matching, unpaired boundaries {slots}")

    edges = np.array([[ka, kb] for (ka, _), (kb, _) in g.pairings])
    graph = coo_matrix((np.ones(len(edges)), (edges[:, 0], edges[:, 1])), shape=(n, n))
    n_comp, _ = connected_components(graph, directed=False)
    if n_comp != 1:
        raise GluingError(f"gluing is disconnected ({n_comp} components)")

    genus = len(g.pairings) - n + 1
    angles = tuple(pants_surface(p, rel_eps).interior_cones[0] for p in g.pants)
    surface = SurfaceSpec(genus, 0, angles)
    return GluedSurface(surface, gauss_bonnet_closed(surface), angles)


class Feasibility(enum.Enum):
    INFEASIBLE = "INFEASIBLE"
    NOT_RULED_OUT = "NOT_RULED_OUT"


@dataclass(frozen=True)
class FeasibilityVerdict:
    verdict: Feasibility
    reason: str
    pants_needed: int
    pants_servable: int


def decomposition_feasible(genus: int, n_singularities: int) -> FeasibilityVerdict:
    """Counting obstruction to cutting a closed flat surface into flat pants.

    A decomposition along disjoint simple closed geodesics has ``2g - 2``
    pants. Flat pants without a cone point do not exist, so each one needs a
    cone point on its closure, and a cone point lying on a cutting curve
    touches at most two pants. Only the obstruction is proved; passing the
    count says nothing about existence.
    """
    if genus < 2:
        raise ValueError(f"genus {genus} surfaces have no pants decomposition")
    if n_singularities < 1:
        raise ValueError("a closed flat surface of genus >= 2 has at least one cone point")
    needed, servable = 2 * genus - 2, 2 * n_singularities
    if needed > servable:
        return FeasibilityVerdict(
            Feasibility.INFEASIBLE,
            f"a decomposition has {needed} pants, each needing a cone point on its closure, "
            f"but {n_singularities} cone point(s) can touch at most {servable} pants"
            + (f"; all {needed} pants would have to share the one cone point"
               if n_singularities == 1 else ""),
            needed,
            servable,
        )
    return FeasibilityVerdict(
        Feasibility.NOT_RULED_OUT,
        f"{needed} pants needed, {n_singularities} cone point(s) can touch up to {servable}",
        needed,
        servable,
    )
