import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphereconvex import (
    DomainError,
    GreatCircle,
    Lune,
    NotOnArc,
    Semicircle,
    SpherePoint,
    arc_point,
    GeodesicArc,
    construct_lune,
    distance,
    equilateral_points,
    min_sampled_distance,
    perpendicular_drop,
    phi,
)
from strategies import rotations

TWO_PHI_AT_TWO_PI_THIRD = 1.871858911322652  # frozen: 2 * phi(2*pi/3)

wide_deltas = st.floats(math.pi / 2 + 0.01, math.pi - 0.01, allow_nan=False)


def rotated(lune, rot):
    """Apply a rotation to every field of a lune."""

    def rp(p):
        return SpherePoint(rot.apply(p.v))

    def rs(s):
        return Semicircle(GreatCircle(rot.apply(s.circle.n)), rp(s.center))

    return Lune(
        side_a=rs(lune.side_a),
        side_b=rs(lune.side_b),
        corners=(rp(lune.corners[0]), rp(lune.corners[1])),
    )


class TestConstructLune:
    def test_orthogonal_centers_at_right_thickness(self):
        lune = construct_lune(math.pi / 2)
        assert float(np.dot(lune.side_a.center.v, lune.side_b.center.v)) == pytest.approx(0.0, abs=1e-15)

    def test_thickness_matches_input(self):
        lune = construct_lune(2 * math.pi / 3)
        assert lune.thickness == pytest.approx(2 * math.pi / 3, abs=1e-15)

    @pytest.mark.parametrize("delta", [0.0, math.pi, -0.5, 5.0])
    def test_domain_rejected(self, delta):
        with pytest.raises(DomainError):
            construct_lune(delta)

    @pytest.mark.parametrize("delta", np.linspace(0.05, math.pi - 0.05, 25))
    def test_thickness_from_hemisphere_poles(self, delta):
        # independent recomputation: orient each bounding circle's pole
        # toward the other center; the poles then subtend pi - thickness
        lune = construct_lune(float(delta))
        pa = lune.side_a.circle.n.copy()
        if float(np.dot(pa, lune.side_b.center.v)) < 0:
            pa = -pa
        pb = lune.side_b.circle.n.copy()
        if float(np.dot(pb, lune.side_a.center.v)) < 0:
            pb = -pb
        pole_gap = math.atan2(float(np.linalg.norm(np.cross(pa, pb))), float(np.dot(pa, pb)))
        assert lune.thickness == pytest.approx(math.pi - pole_gap, abs=1e-12)
        assert lune.thickness == pytest.approx(float(delta), abs=1e-12)

    def test_corners_quarter_turn_from_centers(self):
        lune = construct_lune(2.0)
        for corner in lune.corners:
            assert distance(corner, lune.side_a.center) == pytest.approx(math.pi / 2, abs=1e-10)
            assert distance(corner, lune.side_b.center) == pytest.approx(math.pi / 2, abs=1e-10)

    def test_corners_antipodal(self):
        lune = construct_lune(1.2)
        assert distance(lune.corners[0], lune.corners[1]) == pytest.approx(math.pi, abs=1e-12)

    def test_invalid_lune_rejected(self):
        lune = construct_lune(2.0)
        with pytest.raises(DomainError):
            Lune(side_a=lune.side_a, side_b=lune.side_a, corners=lune.corners)


class TestEquilateralPoints:
    def test_distances_to_own_center(self):
        delta = 2 * math.pi / 3
        lune = construct_lune(delta)
        i, j = equilateral_points(lune)
        assert distance(i, lune.side_a.center) == pytest.approx(phi(delta), abs=1e-15)
        assert distance(j, lune.side_a.center) == pytest.approx(phi(delta), abs=1e-15)

    def test_frozen_apex_distance(self):
        lune = construct_lune(2 * math.pi / 3)
        i, j = equilateral_points(lune)
        apex = lune.side_b.center
        assert distance(i, apex) == pytest.approx(TWO_PHI_AT_TWO_PI_THIRD, abs=1e-12)
        assert distance(j, apex) == pytest.approx(TWO_PHI_AT_TWO_PI_THIRD, abs=1e-12)

    @given(wide_deltas)
    def test_triangle_is_equilateral(self, delta):
        lune = construct_lune(delta)
        i, j = equilateral_points(lune)
        apex = lune.side_b.center
        target = 2 * phi(delta)
        assert distance(i, j) == pytest.approx(target, abs=1e-10)
        assert distance(i, apex) == pytest.approx(target, abs=1e-10)
        assert distance(j, apex) == pytest.approx(target, abs=1e-10)

    def test_narrow_lune_rejected(self):
        with pytest.raises(DomainError):
            equilateral_points(construct_lune(1.0))

    def test_points_lie_on_the_chord_circle(self):
        lune = construct_lune(2.5)
        for p in equilateral_points(lune):
            assert lune.side_a.circle.contains(p)


class TestPerpendicularDrop:
    def test_center_drops_to_center(self):
        delta = 2.2
        lune = construct_lune(delta)
        drop = perpendicular_drop(lune, lune.side_a.center)
        assert distance(drop, lune.side_b.center) <= 1e-12
        assert distance(lune.side_a.center, drop) == pytest.approx(delta, abs=1e-12)

    def test_drop_from_equilateral_point(self):
        delta = 2 * math.pi / 3
        lune = construct_lune(delta)
        i, _ = equilateral_points(lune)
        drop = perpendicular_drop(lune, i)
        assert lune.side_b.circle.contains(drop)
        assert distance(drop, lune.side_b.center) <= math.pi / 2 + 1e-12
        assert distance(i, drop) >= delta - 1e-12

    def test_drop_is_farthest_point_of_far_circle(self):
        # dense-sampling oracle: the drop maximizes the distance from k over
        # the whole far circle, because it is the antipode of the foot
        delta = 2.4
        lune = construct_lune(delta)
        i, _ = equilateral_points(lune)
        drop = perpendicular_drop(lune, i)
        n = lune.side_b.circle.n
        e1 = lune.side_b.center.v
        e2 = np.cross(n, e1)
        theta = np.linspace(0.0, 2.0 * math.pi, 100_000, endpoint=False)
        samples = np.cos(theta)[:, None] * e1 + np.sin(theta)[:, None] * e2
        dists = np.arctan2(np.linalg.norm(np.cross(i.v, samples), axis=1), samples @ i.v)
        assert distance(i, drop) >= float(dists.max()) - 1e-8

    def test_drop_circle_is_orthogonal(self):
        lune = construct_lune(2.1)
        i, _ = equilateral_points(lune)
        drop = perpendicular_drop(lune, i)
        connecting = np.cross(i.v, drop.v)
        connecting /= np.linalg.norm(connecting)
        assert float(np.dot(connecting, lune.side_b.circle.n)) == pytest.approx(0.0, abs=1e-10)

    def test_off_circle_rejected(self):
        lune = construct_lune(2.0)
        with pytest.raises(NotOnArc):
            perpendicular_drop(lune, SpherePoint((1.0, 0.0, 0.0)))

    def test_beyond_chord_rejected(self):
        lune = construct_lune(2.0)
        with pytest.raises(NotOnArc):
            perpendicular_drop(lune, lune.corners[0])

    @given(wide_deltas, st.floats(0.0, 1.0))
    @settings(max_examples=40)
    def test_interior_drops_land_on_far_semicircle(self, delta, t):
        lune = construct_lune(delta)
        i, j = equilateral_points(lune)
        k = arc_point(GeodesicArc(i, j), t)
        drop = perpendicular_drop(lune, k)
        assert abs(float(np.dot(drop.v, lune.side_b.circle.n))) <= 1e-10
        assert distance(drop, lune.side_b.center) <= math.pi / 2 + 1e-10
        assert distance(k, drop) >= delta - 1e-10


class TestChordBounds:
    def test_chord_to_apex_floor(self):
        # |k apex| >= 2*phi along the whole chord, equality only at the ends
        delta = 2 * math.pi / 3
        lune = construct_lune(delta)
        i, j = equilateral_points(lune)
        apex = lune.side_b.center
        floor = 2 * phi(delta)
        arc = GeodesicArc(i, j)
        ts = np.linspace(0.0, 1.0, 1000)
        vals = np.array([distance(arc_point(arc, float(t)), apex) for t in ts])
        assert vals.min() >= floor - 1e-9
        interior = (ts >= 0.1) & (ts <= 0.9)
        assert vals[interior].min() > floor + 0.01

    def test_apex_distance_grows_from_corner_to_center(self):
        # pi/2 at the corner, rising to the full thickness at the center
        delta = 2.8
        lune = construct_lune(delta)
        apex = lune.side_b.center
        arc = GeodesicArc(lune.corners[0], lune.side_a.center)
        vals = [distance(arc_point(arc, float(t)), apex) for t in np.linspace(0.0, 1.0, 500)]
        assert np.all(np.diff(vals) >= -1e-12)
        assert vals[0] == pytest.approx(math.pi / 2, abs=1e-12)
        assert vals[-1] == pytest.approx(delta, abs=1e-12)

    def test_min_sampled_distance_hits_two_phi(self):
        delta = 2 * math.pi / 3
        lune = construct_lune(delta)
        got = min_sampled_distance(lune, 200, 200)
        assert got >= 2 * phi(delta) - 1e-9
        assert got == pytest.approx(2 * phi(delta), abs=1e-12)

    def test_min_sampled_distance_exceeds_gap_at_center(self):
        # the center-to-apex pair contributes the thickness itself, which
        # stays above 2*phi
        delta = 3.0
        lune = construct_lune(delta)
        assert delta > 2 * phi(delta)
        assert min_sampled_distance(lune, 3, 2) >= 2 * phi(delta) - 1e-9

    @given(wide_deltas)
    @settings(max_examples=15)
    def test_min_sampled_distance_floor(self, delta):
        lune = construct_lune(delta)
        got = min_sampled_distance(lune, 60, 60)
        assert got >= 2 * phi(delta) - 1e-9

    def test_sample_counts_validated(self):
        lune = construct_lune(2.0)
        with pytest.raises(DomainError):
            min_sampled_distance(lune, 1, 10)

    def test_narrow_lune_rejected(self):
        with pytest.raises(DomainError):
            min_sampled_distance(construct_lune(1.0), 10, 10)


class TestRotationInvariance:
    @given(rotations(), wide_deltas)
    @settings(max_examples=25)
    def test_scalars_survive_rotation(self, rot, delta):
        lune = construct_lune(delta)
        moved = rotated(lune, rot)
        assert moved.thickness == pytest.approx(lune.thickness, abs=1e-12)
        assert min_sampled_distance(moved, 25, 25) == pytest.approx(
            min_sampled_distance(lune, 25, 25), abs=1e-12
        )

    @given(rotations())
    @settings(max_examples=25)
    def test_points_move_covariantly(self, rot):
        delta = 2.3
        lune = construct_lune(delta)
        moved = rotated(lune, rot)
        i, j = equilateral_points(lune)
        mi, mj = equilateral_points(moved)
        assert distance(SpherePoint(rot.apply(i.v)), mi) <= 1e-12
        assert distance(SpherePoint(rot.apply(j.v)), mj) <= 1e-12
