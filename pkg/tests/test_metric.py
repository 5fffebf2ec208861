import math

import numpy as np
import pytest
from scipy.sparse.csgraph import connected_components

from flatpants.development import build
from flatpants.metric import (
    MESH_TOLERANCE,
    build_graph,
    default_spacing,
    distance_between_boundaries,
    distance_to_boundary,
    measure,
    structure_distance,
)
from flatpants.params import ConstraintError, LengthRadiusParams

from samplers import random_lr

LR = LengthRadiusParams.from_values


@pytest.fixture(scope="module")
def symmetric_graph():
    return build_graph(build(LR((1, 1, 1, 1, 1, 1))))


class TestBuildGraph:
    def test_node_count_and_connectivity(self):
        g = build_graph(build(LR((1, 1, 1, 1, 1, 1))), 0.05)
        area = math.sqrt(3) / 4 + 3
        lo = area / 0.05 ** 2
        assert lo <= g.n_nodes <= 4 * lo
        assert connected_components(g.adjacency, directed=False)[0] == 1

    def test_collapsed_face_still_connected(self):
        g = build_graph(build(LR((1, 1, 1, 0, 1, 1))))
        assert connected_components(g.adjacency, directed=False)[0] == 1

    @pytest.mark.parametrize("h", [0.0, -0.1, math.nan, 5.0])
    def test_bad_spacing(self, h):
        with pytest.raises(ValueError):
            build_graph(build(LR((1, 1, 1, 1, 1, 1))), h)

    def test_default_spacing(self):
        assert default_spacing(LR((1, 2, 2, 0, 3, 0.5))) == pytest.approx(0.5 / 20)

    def test_deterministic(self):
        p = LR((4, 4, 4, 3, 2, 1))
        a, b = build_graph(build(p)), build_graph(build(p))
        np.testing.assert_array_equal(a.xy, b.xy)
        assert (a.adjacency != b.adjacency).nnz == 0


class TestDistances:
    def test_symmetric(self, symmetric_graph):
        d = [distance_to_boundary(symmetric_graph, i) for i in (1, 2, 3)]
        assert max(d) - min(d) <= 0.01 * min(d)
        for x in d:
            assert x == pytest.approx(1, rel=MESH_TOLERANCE)
        assert distance_between_boundaries(symmetric_graph, 2, 3) == pytest.approx(2, rel=MESH_TOLERANCE)

    def test_unequal_radii(self):
        g = build_graph(build(LR((1, 1, 1, 1, 2, 3))))
        for i, r in enumerate((1, 2, 3), start=1):
            assert distance_to_boundary(g, i) == pytest.approx(r, rel=MESH_TOLERANCE)

    def test_a3(self):
        g = build_graph(build(LR((4, 4, 4, 3, 2, 1))))
        assert distance_between_boundaries(g, 1, 2) == pytest.approx(5, rel=MESH_TOLERANCE)

    def test_zero_radius_is_exact(self):
        g = build_graph(build(LR((1, 1, 1, 0, 1, 1))))
        assert distance_to_boundary(g, 1) == 0.0

    def test_same_boundary_refused(self, symmetric_graph):
        with pytest.raises(ValueError):
            distance_between_boundaries(symmetric_graph, 2, 2)

    @pytest.mark.parametrize("i", [0, 4])
    def test_bad_label(self, symmetric_graph, i):
        with pytest.raises(ValueError):
            distance_to_boundary(symmetric_graph, i)

    def test_never_shorter_than_declared(self):
        # straight segments inside faces are geodesic, so graph paths only overshoot
        rep = measure(LR((3, 4, 5, 2, 1, 1.5)))
        assert np.all(np.array(rep.measured_r) >= np.array(rep.declared_r) * (1 - 1e-12))
        assert np.all(np.array(rep.measured_a) >= np.array(rep.declared_a) * (1 - 1e-12))


def test_oracle_agreement_and_refinement():
    rng = np.random.default_rng(11)
    for row in random_lr(rng, 4, r_low=0.5, r_high=2.0, low=0.8, high=2.0):
        p = LR(row)
        coarse = measure(p)
        assert coarse.within(MESH_TOLERANCE)
        fine = measure(p, coarse.h / 2)
        assert max(fine.r_errors) < max(coarse.r_errors)


def test_boundary_paths_pass_the_cone_point():
    # d(c_j, c_k) should equal d(s, c_j) + d(s, c_k) up to mesh error
    rng = np.random.default_rng(12)
    for row in random_lr(rng, 5, r_low=0.5, r_high=2.0, low=0.8, high=2.0):
        rep = measure(LR(row))
        for i in range(3):
            j, k = (i + 1) % 3, (i + 2) % 3
            via_s = rep.measured_r[j] + rep.measured_r[k]
            assert rep.measured_a[i] == pytest.approx(via_s, rel=MESH_TOLERANCE)
            assert rep.measured_a[i] <= via_s * (1 + 1e-12)


def test_triangle_inequality(symmetric_graph):
    g = symmetric_graph
    rng = np.random.default_rng(13)
    x, y, z = (rng.integers(0, g.n_nodes, size=200) for _ in range(3))
    dx, dy = g.distances_from(x), g.distances_from(y)
    idx = np.arange(200)
    assert np.all(dx[idx, z] <= (dx[idx, y] + dy[idx, z]) * (1 + 1e-12))


class TestStructureDistance:
    p = LR((1, 1, 1, 1, 1, 1))

    def test_identity(self):
        assert structure_distance(self.p, self.p, seed=1) == 0.0

    def test_small_perturbation(self):
        q = LR((1, 1, 1, 1, 1, 1.1))
        d = structure_distance(self.p, q)
        assert 0 < d <= 0.2 + MESH_TOLERANCE

    def test_symmetric(self):
        q = LR((1.1, 1, 1, 1, 1.2, 1))
        assert structure_distance(self.p, q, seed=3) == structure_distance(q, self.p, seed=3)

    def test_type_mismatch(self):
        with pytest.raises(ConstraintError, match="combinatorial types"):
            structure_distance(self.p, LR((1, 1, 1, 0, 1, 1)))

    def test_distinct_parameters_separate(self):
        for q in (LR((1.2, 1, 1, 1, 1, 1)), LR((1, 1, 1, 1, 1.2, 1))):
            assert structure_distance(self.p, q) > 0.02
