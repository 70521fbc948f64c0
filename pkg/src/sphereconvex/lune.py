"""Lunes, their thickness, and the inscribed equilateral-triangle bounds.

A lune is the intersection of two different, non-opposite hemispheres.  Its
boundary consists of two semicircles meeting at a pair of antipodal corners;
the thickness is the distance between the semicircle centers.

For thickness delta in (pi/2, pi) the two points of one bounding semicircle
at distance phi(delta) from its center, together with the opposite center,
form an equilateral triangle of side 2*phi(delta).  Every point k of the
chord arc between those two points satisfies |k h| >= 2*phi(delta) for the
opposite center h, and more generally |k l| >= 2*phi(delta) for every l on
the arc from h to the orthogonal drop of k onto the far semicircle.  The
operations below construct these objects and measure the inequalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import vecmath
from .core import (
    EPS_ON,
    GreatCircle,
    Semicircle,
    SpherePoint,
    distance,
)
from .errors import DomainError, NotOnArc
from .quad import phi


@dataclass(frozen=True, eq=False)
class Lune:
    """Intersection of two different, non-opposite hemispheres.

    side_a and side_b are the bounding semicircles; corners are the two
    antipodal points where their circles cross.  Operations that break the
    symmetry (chord sampling, orthogonal drops) live on side_a and measure
    against side_b.
    """

    side_a: Semicircle
    side_b: Semicircle
    corners: tuple[SpherePoint, SpherePoint]

    def __post_init__(self):
        cross = np.cross(self.side_a.circle.n, self.side_b.circle.n)
        if float(np.linalg.norm(cross)) < 1e-9:
            raise DomainError("bounding circles coincide or are opposite; not a lune")
        for corner in self.corners:
            for side in (self.side_a, self.side_b):
                if not side.circle.contains(corner):
                    raise DomainError("corner does not lie on both bounding circles")
                if abs(distance(corner, side.center) - math.pi / 2) > 1e-10:
                    raise DomainError("corner is not an endpoint of a bounding semicircle")
        if distance(self.corners[0], self.corners[1]) < math.pi - 1e-9:
            raise DomainError("corners must be antipodal")

    @cached_property
    def thickness(self) -> float:
        return distance(self.side_a.center, self.side_b.center)


def construct_lune(delta: float) -> Lune:
    """Canonical lune of thickness delta in (0, pi).

    Pose: corners on the y-axis, semicircle centers on the x-z great circle
    separated by delta and symmetric about (1, 0, 0).
    """
    if not 0.0 < delta < math.pi:
        raise DomainError(f"thickness delta={delta} outside the open interval (0, pi)")
    half = delta / 2.0
    center_a = SpherePoint((math.cos(half), 0.0, math.sin(half)))
    center_b = SpherePoint((math.cos(half), 0.0, -math.sin(half)))
    corners = (SpherePoint((0.0, 1.0, 0.0)), SpherePoint((0.0, -1.0, 0.0)))
    side_a = Semicircle(GreatCircle(np.cross(corners[0].v, center_a.v)), center_a)
    side_b = Semicircle(GreatCircle(np.cross(corners[0].v, center_b.v)), center_b)
    return Lune(side_a=side_a, side_b=side_b, corners=corners)


def _require_wide(lune: Lune) -> float:
    delta = lune.thickness
    if not math.pi / 2 < delta < math.pi:
        raise DomainError(f"thickness {delta} outside (pi/2, pi); the bounds need a wide lune")
    return delta


def equilateral_points(lune: Lune) -> tuple[SpherePoint, SpherePoint]:
    """The two points of side_a at distance phi(thickness) from its center.

    Both lie at distance 2*phi(thickness) from the center of side_b, so the
    two points and that center form an equilateral triangle.  The first
    returned point is the one toward corners[0].
    """
    delta = _require_wide(lune)
    ph = phi(delta)
    g = lune.side_a.center.v
    u = vecmath.unit(vecmath.reject(lune.corners[0].v, g))
    i = math.cos(ph) * g + math.sin(ph) * u
    j = math.cos(ph) * g - math.sin(ph) * u
    return SpherePoint(i), SpherePoint(j)


def perpendicular_drop(lune: Lune, k: SpherePoint) -> SpherePoint:
    """Intersection of side_b with the great circle through k orthogonal to it.

    k must lie on the chord arc between the two equilateral points of side_a.
    The drop is the intersection candidate lying on the semicircle side_b
    (the one within pi/2 of its center); for a wide lune it is the far
    crossing, at distance at least the thickness from k.
    """
    delta = _require_wide(lune)
    if not lune.side_a.circle.contains(k, EPS_ON):
        raise NotOnArc("point is not on the circle carrying the chord arc")
    if distance(k, lune.side_a.center) > phi(delta) + 1e-9:
        raise NotOnArc("point is outside the chord arc between the equilateral points")
    n_b = lune.side_b.circle.n
    w = vecmath.reject(k.v, n_b)
    norm = float(np.linalg.norm(w))
    if norm < 1e-12:
        raise NotOnArc("point is a pole of the far circle; the drop is not unique")
    foot = w / norm
    if float(np.dot(foot, lune.side_b.center.v)) < 0.0:
        foot = -foot
    return SpherePoint(foot)


def min_sampled_distance(lune: Lune, samples_k: int, samples_l: int) -> float:
    """Minimum of |k l| over a sampling grid.

    k runs over `samples_k` points of the chord arc (endpoints included) and,
    for each k, l runs over `samples_l` points of the arc from the center of
    side_b to the orthogonal drop of k.  The returned minimum is a
    deterministic function of the grid; it is bounded below by
    2*phi(thickness) up to rounding.
    """
    delta = _require_wide(lune)
    if samples_k < 2 or samples_l < 2:
        raise DomainError("need at least 2 samples on each arc")
    i, j = equilateral_points(lune)
    h = lune.side_b.center.v
    n_b = lune.side_b.circle.n

    t = np.linspace(0.0, 1.0, samples_k)
    chord = vecmath.slerp(i.v, j.v, t)  # (nk, 3)

    w = chord - (chord @ n_b)[:, None] * n_b
    feet = vecmath.unit(w)
    flip = np.where(feet @ h >= 0.0, 1.0, -1.0)
    drops = feet * flip[:, None]  # (nk, 3)

    lengths = vecmath.ang(h, drops)  # (nk,)
    s = np.linspace(0.0, 1.0, samples_l)
    num = (
        np.sin((1.0 - s)[None, :, None] * lengths[:, None, None]) * h
        + np.sin(s[None, :, None] * lengths[:, None, None]) * drops[:, None, :]
    )
    degenerate = lengths < 1e-12
    num[degenerate] = h
    arcs = vecmath.unit(num)  # (nk, nl, 3)

    dists = vecmath.ang(chord[:, None, :], arcs)
    return float(dists.min())
