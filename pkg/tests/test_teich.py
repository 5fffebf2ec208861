import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatpants.params import ConstraintError, DistanceParams, NonFiniteError, validate_la
from flatpants.teich import (
    BASEPOINT,
    BOUNDARY,
    INTERIOR,
    OUTSIDE,
    contract,
    member_mask,
    membership,
    segment_in_B,
    stratum,
    strata,
    wall_intersection_point,
)

from samplers import random_la_members


class TestMembership:
    def test_interior(self):
        assert membership((1, 1, 1, 2, 2, 2)).status == INTERIOR

    def test_l_wall(self):
        m = membership((2, 1, 1, 1, 1, 1))
        assert m.status == BOUNDARY
        assert m.stratum.as_dict() == {"l_walls": [1], "a_walls": []}

    def test_same_index_walls_outside(self):
        m = membership((2, 1, 1, 2, 1, 1))
        assert m.status == OUTSIDE
        assert [v.code for v in m.violations] == ["condition-5"]

    def test_non_finite(self):
        with pytest.raises(NonFiniteError):
            membership((1, 1, 1, 2, 2, np.nan))

    def test_wrong_shape(self):
        with pytest.raises(ValueError):
            membership((1, 1, 1, 2, 2))

    def test_accepts_distance_params(self):
        assert membership(DistanceParams.from_values(BASEPOINT)).is_member

    def test_stratum_snaps_within_tolerance(self):
        assert stratum((2 + 1e-12, 1, 1, 1, 1, 1)).l_walls == {1}


class TestSegment:
    def test_degenerate_segment(self):
        assert segment_in_B(BASEPOINT, BASEPOINT)

    def test_example(self):
        assert segment_in_B((1, 1, 1, 2, 2, 2), (4, 4, 4, 3, 4, 5), n=1000)

    def test_non_member_endpoint(self):
        with pytest.raises(ConstraintError, match="y is not in B"):
            segment_in_B(BASEPOINT, (2, 1, 1, 2, 1, 1))

    def test_random_pairs(self):
        rng = np.random.default_rng(21)
        x, y = random_la_members(rng, 300), random_la_members(rng, 300)
        assert all(segment_in_B(a, b) for a, b in zip(x, y))


class TestContract:
    def test_endpoints(self):
        x = (4, 4, 4, 3, 4, 5)
        np.testing.assert_array_equal(contract(x, 0.0), x)
        np.testing.assert_array_equal(contract(x, 1.0), BASEPOINT)

    def test_midpoint(self):
        y = contract((1, 1, 1, 2, 2, 2), 0.5, base=(2, 2, 2, 2, 2, 2))
        np.testing.assert_allclose(y, (1.5, 1.5, 1.5, 2, 2, 2))
        assert membership(y).is_member

    @pytest.mark.parametrize("t", [-0.1, 1.5])
    def test_t_out_of_range(self, t):
        with pytest.raises(ValueError):
            contract(BASEPOINT, t)

    def test_path_stays_in_B(self):
        rng = np.random.default_rng(22)
        for x in random_la_members(rng, 100):
            for t in np.linspace(0, 1, 21):
                assert membership(contract(x, t)).is_member


def test_unbounded_cone():
    rng = np.random.default_rng(23)
    x = random_la_members(rng, 500)
    for lam in (1.0, 2.5, 1e3, 1e6):
        assert member_mask(lam * x).all()


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from([0.0, 0.5, 1.0, 1.5, 2.0, 3.0, -1.0]), min_size=6, max_size=6))
def test_membership_agrees_with_validation(x):
    assert membership(x).is_member == bool(validate_la(DistanceParams.from_values(x)))
    assert bool(member_mask(np.array([x]))[0]) == membership(x).is_member


def test_no_two_l_walls_among_members():
    rng = np.random.default_rng(24)
    x = random_la_members(rng, 20000, wall_fraction=0.5)
    lw, aw = strata(x)
    assert member_mask(x).all()
    assert lw.sum(axis=1).max() <= 1 and aw.sum(axis=1).max() <= 1
    assert lw.any() and aw.any()


@pytest.mark.parametrize("i", [1, 2, 3])
@pytest.mark.parametrize("j", [1, 2, 3])
def test_wall_intersections(i, j):
    x = wall_intersection_point(i, j)
    m = membership(x)
    if i == j:
        assert m.status == OUTSIDE
    else:
        assert m.status == BOUNDARY
        assert (m.stratum.l_walls, m.stratum.a_walls) == ({i}, {j})
