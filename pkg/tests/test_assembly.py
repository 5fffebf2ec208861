import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatpants.assembly import (
    Feasibility,
    GluingError,
    GluingSpec,
    SurfaceSpec,
    decomposition_feasible,
    double,
    double_surface,
    gauss_bonnet_bounded,
    gauss_bonnet_closed,
    glue,
    pants_surface,
)
from flatpants.params import ConstraintError, LengthRadiusParams

from samplers import random_lr

PI = math.pi
LR = LengthRadiusParams.from_values
UNIT = LR((1, 1, 1, 1, 1, 1))


def cyclic_gluing(n_pants):
    """Pants 0..V-1 in a ring: boundary 1 of k to boundary 2 of k+1, boundary 3 of k to boundary 3 of k+1 for even k."""
    pairs = [((k, 1), ((k + 1) % n_pants, 2)) for k in range(n_pants)]
    pairs += [((k, 3), (k + 1, 3)) for k in range(0, n_pants, 2)]
    return pairs


class TestGaussBonnet:
    def test_genus_two(self):
        assert gauss_bonnet_closed(SurfaceSpec(2, 0, (4 * PI, 4 * PI))) == pytest.approx(0, abs=1e-12)

    def test_torus(self):
        assert gauss_bonnet_closed(SurfaceSpec(1)) == 0

    def test_inconsistent_sphere(self):
        assert gauss_bonnet_closed(SurfaceSpec(0, 0, (PI,) * 8)) == pytest.approx(4 * PI, abs=1e-12)

    def test_closed_refuses_boundary(self):
        with pytest.raises(ValueError):
            gauss_bonnet_closed(SurfaceSpec(0, 3, (4 * PI,)))

    def test_pants(self):
        assert gauss_bonnet_bounded(SurfaceSpec(0, 3, (4 * PI,))) == pytest.approx(0, abs=1e-12)

    def test_no_flat_pants_without_cones(self):
        assert gauss_bonnet_bounded(SurfaceSpec(0, 3)) == 2 * PI

    def test_disc_with_boundary_cone(self):
        r = gauss_bonnet_bounded(SurfaceSpec(0, 1, (), (PI / 2,)))
        assert r == pytest.approx(PI / 2 - 2 * PI, abs=1e-12)

    @pytest.mark.parametrize("spec", [
        dict(genus=0, interior_cones=(2 * PI,)),
        dict(genus=0, boundary_count=1, boundary_cones=(PI,)),
        dict(genus=0, boundary_cones=(3 * PI,)),
        dict(genus=-1),
        dict(genus=0, interior_cones=(-1.0,)),
    ])
    def test_spec_invariants(self, spec):
        with pytest.raises(ValueError):
            SurfaceSpec(**spec)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 5), st.integers(0, 5), st.lists(st.floats(0.1, 20), max_size=4))
    def test_chi_forms_agree(self, g, b, cones):
        cones = [t for t in cones if not math.isclose(t, 2 * PI)]
        s = SurfaceSpec(g, b, tuple(cones))
        chi_form = s.total_curvature() - 2 * PI * s.euler_characteristic
        assert gauss_bonnet_bounded(s) == pytest.approx(chi_form, abs=1e-9)
        if b == 0:
            assert gauss_bonnet_closed(s) == pytest.approx(chi_form, abs=1e-9)

    @settings(max_examples=200, deadline=None)
    @given(
        st.integers(0, 4),
        st.integers(1, 5),
        st.lists(st.floats(0.1, 20), max_size=3),
        st.lists(st.floats(0.1, 20), max_size=3),
    )
    def test_doubling_halves_residual(self, g, b, inner, bdry):
        inner = [t for t in inner if not math.isclose(t, 2 * PI)]
        bdry = [t for t in bdry if not math.isclose(t, PI)]
        s = SurfaceSpec(g, b, tuple(inner), tuple(bdry))
        assert gauss_bonnet_bounded(s) == pytest.approx(gauss_bonnet_closed(double_surface(s)) / 2, abs=1e-9)


class TestDouble:
    def test_interior(self):
        s = double(UNIT)
        assert s.genus == 2
        np.testing.assert_allclose(s.interior_cones, [4 * PI, 4 * PI], atol=1e-12)
        assert gauss_bonnet_closed(s) == pytest.approx(0, abs=1e-12)

    def test_boundary_cone(self):
        s = double(LR((1, 1, 1, 0, 1, 1)))
        assert s.genus == 2
        np.testing.assert_allclose(s.interior_cones, [6 * PI], atol=1e-12)
        assert gauss_bonnet_closed(s) == pytest.approx(0, abs=1e-12)

    def test_degenerate_refused(self):
        with pytest.raises(ConstraintError):
            double(LR((1, 1, 1, 0, 0, 1)))

    def test_random(self):
        rng = np.random.default_rng(31)
        for row in np.vstack([random_lr(rng, 40), random_lr(rng, 40, zero_radius=True)]):
            s = double(LR(row))
            assert s.genus == 2
            assert abs(gauss_bonnet_closed(s)) < 1e-9


class TestGlue:
    def test_two_pants(self):
        g = glue(GluingSpec([UNIT, UNIT], [((0, 1), (1, 1)), ((0, 2), (1, 2)), ((0, 3), (1, 3))]))
        assert g.surface.genus == 2
        np.testing.assert_allclose(g.cone_angles, [4 * PI] * 2, atol=1e-12)
        assert abs(g.residual) < 1e-9

    def test_four_pants(self):
        pants = [UNIT, LR((1, 1, 1, 2, 1, 3)), UNIT, LR((1, 1, 1, 0.5, 0.5, 0.5))]
        # complete graph K4: every pair of pants shares one curve
        pairs = [((0, 1), (1, 1)), ((0, 2), (2, 1)), ((0, 3), (3, 1)),
                 ((1, 2), (2, 2)), ((1, 3), (3, 2)), ((2, 3), (3, 3))]
        g = glue(GluingSpec(pants, pairs))
        assert g.surface.genus == 3
        np.testing.assert_allclose(g.cone_angles, [4 * PI] * 4, atol=1e-12)
        assert abs(g.residual) < 1e-9

    @pytest.mark.parametrize("v", [2, 4, 6])
    def test_genus_formula(self, v):
        g = glue(GluingSpec([UNIT] * v, cyclic_gluing(v)))
        assert g.surface.genus == 1 + v // 2
        assert abs(g.residual) < 1e-9

    def test_self_pairing_within_pants_allowed(self):
        pairs = [((0, 1), (0, 2)), ((0, 3), (1, 3)), ((1, 1), (1, 2))]
        assert glue(GluingSpec([UNIT, UNIT], pairs)).surface.genus == 2

    def test_length_mismatch(self):
        other = LR((2, 1.5, 1.5, 1, 1, 1))
        with pytest.raises(GluingError, match=r"\(0, 1\), \(1, 1\)"):
            glue(GluingSpec([UNIT, other], [((0, 1), (1, 1)), ((0, 2), (1, 2)), ((0, 3), (1, 3))]))

    def test_incomplete(self):
        with pytest.raises(GluingError, match="incomplete"):
            glue(GluingSpec([UNIT, UNIT], [((0, 1), (1, 1)), ((0, 2), (1, 2))]))

    def test_slot_glued_to_itself(self):
        with pytest.raises(GluingError, match="itself"):
            glue(GluingSpec([UNIT, UNIT], [((0, 1), (0, 1))]))

    def test_slot_used_twice(self):
        with pytest.raises(GluingError, match="used twice"):
            glue(GluingSpec([UNIT, UNIT], [((0, 1), (1, 1)), ((0, 1), (1, 2))]))

    def test_bad_slot(self):
        with pytest.raises(GluingError, match="no boundary slot"):
            glue(GluingSpec([UNIT, UNIT], [((0, 4), (1, 1))]))

    def test_disconnected(self):
        pairs = [((0, 1), (0, 2)), ((0, 3), (1, 3)), ((1, 1), (1, 2)),
                 ((2, 1), (2, 2)), ((2, 3), (3, 3)), ((3, 1), (3, 2))]
        with pytest.raises(GluingError, match="disconnected"):
            glue(GluingSpec([UNIT] * 4, pairs))

    def test_boundary_singularity_refused(self):
        with pytest.raises(GluingError, match="interior"):
            glue(GluingSpec([LR((1, 1, 1, 0, 1, 1)), UNIT], [((0, 1), (1, 1))]))

    def test_pants_surface(self):
        s = pants_surface(UNIT)
        assert (s.genus, s.boundary_count) == (0, 3)
        assert gauss_bonnet_bounded(s) == pytest.approx(0, abs=1e-12)


class TestFeasibility:
    def test_genus_three_one_cone(self):
        v = decomposition_feasible(3, 1)
        assert v.verdict is Feasibility.INFEASIBLE
        assert (v.pants_needed, v.pants_servable) == (4, 2)

    def test_genus_two_one_cone(self):
        assert decomposition_feasible(2, 1).verdict is Feasibility.NOT_RULED_OUT

    def test_genus_five_three_cones(self):
        # 2g - 2 = 8 pants against at most 2 * 3 = 6
        assert decomposition_feasible(5, 3).verdict is Feasibility.INFEASIBLE

    @pytest.mark.parametrize("args", [(1, 1), (0, 3), (3, 0)])
    def test_refusals(self, args):
        with pytest.raises(ValueError):
            decomposition_feasible(*args)

    @given(st.integers(2, 200), st.integers(1, 200))
    def test_counting_rule(self, g, n):
        infeasible = decomposition_feasible(g, n).verdict is Feasibility.INFEASIBLE
        assert infeasible == (2 * g - 2 > 2 * n)
