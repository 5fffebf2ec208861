"""Graph approximation of the intrinsic metric of a flat pair of pants.

The surface is sampled face by face and every pair of samples lying in a
common convex face within ``2.5 h`` of each other is joined by an edge whose
weight is the length of the straight segment between them. Every edge is a
genuine path on the surface, so graph distances bound the true distances
from above and converge to them as ``h`` shrinks.

Sampling
--------
The triangle carries a barycentric lattice with ``N`` subdivisions per side.
Each rectangle is treated as the cylinder it becomes after gluing its two
vertical sides: coordinates ``(u, v)`` with ``u`` periodic of period
``l_i``. Its base row is the triangle side, its top row is ``c_i``, and the
interior rows are staggered by half a column so that the cut segments are
not privileged: shortest paths to the boundary have to be discovered by the
graph, not read off the construction.

Because every sample position is defined in face-normalised coordinates,
two developments sampled with the same counts have samples in one-to-one
correspondence through the face-wise affine map. ``structure_distance``
relies on this.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra
from scipy.spatial import cKDTree

from .development import Development, build
from .params import REL_EPS, ConstraintError, LengthRadiusParams, classify

NEIGHBOR_RADIUS = 2.5
DEFAULT_DIVISOR = 20
MESH_TOLERANCE = 0.05


def default_spacing(p: LengthRadiusParams) -> float:
    """``min(l1, l2, l3, positive r_i) / 20``."""
    dims = list(p.l) + [r for r in p.r if r > 0]
    return min(dims) / DEFAULT_DIVISOR


@dataclass(frozen=True)
class _Sampling:
    xy: np.ndarray  # (M, 2) development coordinates
    face: np.ndarray  # (M,) 0 = triangle, i = rectangle R_i
    face_members: tuple  # per face: (raw ids, local coords, period or None)
    singular: tuple  # raw ids of s1, s2, s3
    boundary: tuple  # per c_i: raw ids on the curve
    glued: tuple  # raw id pairs identified by the gluing


def _sample(dev: Development, n_side: int, n_rows) -> _Sampling:
    tri = dev.triangle
    xy, face = [], []

    def add(points, f):
        start = sum(len(x) for x in xy)
        xy.append(np.asarray(points, dtype=float).reshape(-1, 2))
        face.append(np.full(len(xy[-1]), f))
        return np.arange(start, start + len(xy[-1]))

    # barycentric lattice on T; (a, b, c) weights of s1, s2, s3
    N = n_side
    bary = np.array([(a, b, N - a - b) for a in range(N + 1) for b in range(N + 1 - a)])
    tri_ids = add(bary @ tri / N, 0)
    lookup = {tuple(w): int(k) for w, k in zip(bary, tri_ids)}
    singular = (lookup[(N, 0, 0)], lookup[(0, N, 0)], lookup[(0, 0, N)])

    members = [(tri_ids, bary @ tri / N, None)]
    boundary, glued = [], []
    for R in dev.rectangles:
        i = R.index - 1
        # side opposite s_i runs from s_{i+1} to s_{i+2}
        side = []
        for c in range(N + 1):
            w = [0, 0, 0]
            w[(i + 1) % 3] = N - c
            w[(i + 2) % 3] = c
            side.append(lookup[tuple(w)])
        side = np.array(side)
        if R.collapsed:
            boundary.append(side)
            glued.append((side[0], side[-1]))
            members.append((side[:0], np.empty((0, 2)), None))
            continue

        a = R.corners[0]
        e, n = R.direction, R.normal
        du = R.width / N
        m = n_rows[i]
        dv = R.height / m
        uv = [np.column_stack([np.arange(N + 1) * du, np.zeros(N + 1)])]
        ids = [side]
        if m > 1:
            uu, vv = np.meshgrid((np.arange(N) + 0.5) * du, np.arange(1, m) * dv)
            inner = np.column_stack([uu.ravel(), vv.ravel()])
            ids.append(add(a + inner[:, :1] * e + inner[:, 1:] * n, R.index))
            uv.append(inner)
        top_uv = np.column_stack([np.arange(N + 1) * du, np.full(N + 1, R.height)])
        top = add(a + top_uv[:, :1] * e + top_uv[:, 1:] * n, R.index)
        ids.append(top)
        uv.append(top_uv)
        boundary.append(top)
        glued.append((top[0], top[-1]))
        members.append((np.concatenate(ids), np.vstack(uv), R.width))

    return _Sampling(
        xy=np.vstack(xy),
        face=np.concatenate(face),
        face_members=tuple(members),
        singular=singular,
        boundary=tuple(boundary),
        glued=tuple(glued),
    )


def _face_pairs(coords, period, radius):
    """Local index pairs within ``radius``; ``period`` wraps the u coordinate."""
    if len(coords) < 2:
        return np.empty((0, 2), dtype=int)
    if period is None:
        return cKDTree(coords).query_pairs(radius, output_type="ndarray")
    c = coords.copy()
    c[:, 0] = np.mod(c[:, 0], period)
    c[c[:, 0] >= period, 0] = 0.0
    box = [period, c[:, 1].max() + 2 * radius + 1.0]
    return cKDTree(c, boxsize=box).query_pairs(radius, output_type="ndarray")


def _face_lengths(coords, period, pairs):
    d = coords[pairs[:, 0]] - coords[pairs[:, 1]]
    if period is not None:
        du = np.abs(d[:, 0]) % period
        d[:, 0] = np.minimum(du, period - du)
    return np.hypot(d[:, 0], d[:, 1])


def _local_pairs(s: _Sampling, radius):
    return [_face_pairs(coords, period, radius) for _, coords, period in s.face_members]


def _edges(s: _Sampling, local_pairs):
    """Raw-id pairs and straight-segment lengths, face by face."""
    raw, lengths = [], []
    for (ids, coords, period), pairs in zip(s.face_members, local_pairs):
        if len(pairs) == 0:
            continue
        raw.append(ids[pairs])
        lengths.append(_face_lengths(coords, period, pairs))
    return np.vstack(raw), np.concatenate(lengths)


@dataclass(frozen=True)
class MetricGraph:
    """Sampled surface: raw samples, their merged graph nodes and weighted edges."""

    development: Development
    h: float
    xy: np.ndarray
    face: np.ndarray
    node_of: np.ndarray  # raw sample -> graph node
    adjacency: csr_matrix
    singular_node: int
    boundary_nodes: tuple  # per c_i, sorted graph node ids

    @property
    def n_nodes(self):
        return self.adjacency.shape[0]

    @property
    def n_samples(self):
        return len(self.xy)

    def distances_from(self, nodes, min_only=False):
        return dijkstra(self.adjacency, directed=False, indices=nodes, min_only=min_only)


def _assemble(dev, h, sampling, local_pairs, rel_eps=REL_EPS) -> MetricGraph:
    pairs, lengths = _edges(sampling, local_pairs)
    scale = max(max(dev.params.l), max(dev.params.r), 1.0)
    coincide = lengths <= rel_eps * scale

    # merge glued samples and samples that coincide on the surface
    m = len(sampling.xy)
    glued = np.array(sampling.glued, dtype=int).reshape(-1, 2)
    merge = np.vstack([glued, pairs[coincide]])
    merge_graph = csr_matrix((np.ones(len(merge)), (merge[:, 0], merge[:, 1])), shape=(m, m))
    _, node_of = connected_components(merge_graph, directed=False)

    u, v = node_of[pairs[~coincide, 0]], node_of[pairs[~coincide, 1]]
    w = lengths[~coincide]
    keep = u != v
    u, v, w = u[keep], v[keep], w[keep]
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    order = np.lexsort((w, hi, lo))
    lo, hi, w = lo[order], hi[order], w[order]
    first = np.ones(len(lo), dtype=bool)
    first[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
    lo, hi, w = lo[first], hi[first], w[first]
    n = int(node_of.max()) + 1
    adj = csr_matrix((np.concatenate([w, w]), (np.concatenate([lo, hi]), np.concatenate([hi, lo]))),
                     shape=(n, n))

    singular = {int(node_of[k]) for k in sampling.singular}
    if len(singular) != 1:
        raise RuntimeError("cone point copies failed to merge into one node")
    return MetricGraph(
        development=dev,
        h=h,
        xy=sampling.xy,
        face=sampling.face,
        node_of=node_of,
        adjacency=adj,
        singular_node=singular.pop(),
        boundary_nodes=tuple(np.unique(node_of[b]) for b in sampling.boundary),
    )


def _counts(devs, h):
    n_side = max(math.ceil(max(d.params.l) / h - 1e-9) for d in devs)
    rows = [max(max(math.ceil(d.rectangles[i].height / h - 1e-9), 1) for d in devs)
            for i in range(3)]
    return max(n_side, 1), rows


def _check_spacing(dev, h):
    if not (isinstance(h, (int, float)) and math.isfinite(h) and h > 0):
        raise ValueError(f"spacing h must be a positive finite number, got {h!r}")
    smallest = min(list(dev.params.l) + [R.height for R in dev.rectangles if not R.collapsed])
    if h > smallest:
        raise ValueError(f"spacing h={h} exceeds the smallest face dimension {smallest}")


def build_graph(d: Development, h: float | None = None) -> MetricGraph:
    """Sample ``d`` at spacing at most ``h`` and join nearby samples.

    ``h`` defaults to :func:`default_spacing`; values above the smallest
    face dimension are refused.
    """
    if h is None:
        h = default_spacing(d.params)
    _check_spacing(d, h)
    n_side, rows = _counts([d], h)
    sampling = _sample(d, n_side, rows)
    pairs = _local_pairs(sampling, NEIGHBOR_RADIUS * h * (1 + 1e-9))
    g = _assemble(d, h, sampling, pairs)
    n_comp, _ = connected_components(g.adjacency, directed=False)
    if n_comp != 1:
        raise RuntimeError(f"sampled graph has {n_comp} components")
    return g


def _boundary_label(i):
    if i not in (1, 2, 3):
        raise ValueError(f"boundary index must be 1, 2 or 3, got {i!r}")
    return i - 1


def distance_to_boundary(g: MetricGraph, i: int) -> float:
    """Graph distance from the cone point to the boundary curve ``c_i``."""
    k = _boundary_label(i)
    dist = g.distances_from(g.singular_node)
    value = float(dist[g.boundary_nodes[k]].min())
    if not math.isfinite(value):
        raise RuntimeError(f"boundary c{i} unreachable from the cone point")
    return value


def distance_between_boundaries(g: MetricGraph, j: int, k: int) -> float:
    """Graph distance between the boundary curves ``c_j`` and ``c_k``."""
    jj, kk = _boundary_label(j), _boundary_label(k)
    if jj == kk:
        raise ValueError("distance between boundaries needs two distinct indices")
    dist = g.distances_from(g.boundary_nodes[jj], min_only=True)
    value = float(dist[g.boundary_nodes[kk]].min())
    if not math.isfinite(value):
        raise RuntimeError(f"c{k} unreachable from c{j}")
    return value


@dataclass(frozen=True)
class MeasureReport:
    declared_r: tuple
    measured_r: tuple
    declared_a: tuple
    measured_a: tuple
    h: float

    @staticmethod
    def _rel(m, d):
        return abs(m - d) / d if d > 0 else abs(m)

    @property
    def r_errors(self):
        return tuple(self._rel(m, d) for m, d in zip(self.measured_r, self.declared_r))

    @property
    def a_errors(self):
        return tuple(self._rel(m, d) for m, d in zip(self.measured_a, self.declared_a))

    def within(self, tol=MESH_TOLERANCE):
        return max(self.r_errors + self.a_errors) <= tol


def measure_graph(g: MetricGraph) -> MeasureReport:
    """Measure all six distances on ``g`` and pair them with the declared values."""
    from_s = g.distances_from(g.singular_node)
    r_meas = tuple(float(from_s[nodes].min()) for nodes in g.boundary_nodes)
    a_meas = tuple(
        distance_between_boundaries(g, (i + 1) % 3 + 1, (i + 2) % 3 + 1) for i in range(3)
    )
    declared_r = tuple(R.height for R in g.development.rectangles)
    declared_a = tuple(declared_r[(i + 1) % 3] + declared_r[(i + 2) % 3] for i in range(3))
    return MeasureReport(declared_r, r_meas, declared_a, a_meas, g.h)


def measure(p: LengthRadiusParams, h: float | None = None) -> MeasureReport:
    return measure_graph(build_graph(build(p), h))


def _combinatorial_type(p, rel_eps):
    rep = classify(p, rel_eps)
    return rep.singularity_location, rep.boundary_index


def structure_distance(
    p: LengthRadiusParams,
    q: LengthRadiusParams,
    n_pairs: int = 200,
    seed: int = 0,
    h: float | None = None,
    rel_eps: float = REL_EPS,
) -> float:
    """Monte-Carlo estimate of ``sup |d_p(x, y) - d_q(x, y)|``.

    Both structures are sampled with identical lattice counts, so sample
    ``k`` of ``p`` corresponds to sample ``k`` of ``q`` under the face-wise
    affine map between developments. ``n_pairs`` sample pairs are drawn with
    ``numpy.random.default_rng(seed)``. The same edge set (the union of both
    neighbourhood graphs) is used for both structures.
    """
    tp, tq = _combinatorial_type(p, rel_eps), _combinatorial_type(q, rel_eps)
    if tp != tq:
        raise ConstraintError(
            [],
            prefix=f"structures have different combinatorial types {tp} and {tq}",
        )
    if n_pairs < 1:
        raise ValueError("n_pairs must be positive")
    dp, dq = build(p, rel_eps), build(q, rel_eps)
    if h is None:
        h = min(default_spacing(p), default_spacing(q))
    _check_spacing(dp, h)
    _check_spacing(dq, h)
    n_side, rows = _counts([dp, dq], h)
    sp, sq = _sample(dp, n_side, rows), _sample(dq, n_side, rows)
    radius = NEIGHBOR_RADIUS * h * (1 + 1e-9)
    pairs = [
        np.unique(np.vstack([a, b]), axis=0)
        for a, b in zip(_local_pairs(sp, radius), _local_pairs(sq, radius))
    ]
    gp = _assemble(dp, h, sp, pairs, rel_eps)
    gq = _assemble(dq, h, sq, pairs, rel_eps)

    rng = np.random.default_rng(seed)
    x = rng.integers(0, len(sp.xy), size=n_pairs)
    y = rng.integers(0, len(sp.xy), size=n_pairs)
    sources, inverse = np.unique(x, return_inverse=True)

    def pair_distances(g):
        table = g.distances_from(g.node_of[sources])
        return table[inverse, g.node_of[y]]

    diff = np.abs(pair_distances(gp) - pair_distances(gq))
    return float(diff.max())
