"""Convex spherical polygons: hulls, extreme points, and boundary diameter.

Polygons are modeled as ordered vertex cycles strictly contained in an open
hemisphere (hence free of antipodal pairs).  Hull construction projects the
input gnomonically onto the tangent plane at a hemisphere center; since the
projection maps great circles to straight lines, planar convexity inside the
chart coincides with spherical convexity.

The boundary diameter is computed by exact candidate enumeration rather than
sampling: for diameters above pi/2 the farthest boundary pair may sit in the
interior of one or two edges, and those critical configurations are where
the connecting geodesic meets the edges orthogonally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull as _PlanarHull
from scipy.spatial import QhullError

from . import vecmath
from .core import EPS_ANTIPODE, EPS_ON, SpherePoint
from .errors import (
    DegenerateHull,
    DiameterOutOfRange,
    DomainError,
    InvalidPolygon,
    NoHemisphere,
    TooFewPoints,
)
from .quad import phi

# Strict open-hemisphere containment margin for vertices.
EPS_HEMI = 1e-6
# A vertex whose interior angle is within this of pi lies on the arc joining
# its neighbours and is not an extreme point.
EPS_ANGLE = 1e-9

# Slack for "point lies on this edge arc" membership in candidate tests;
# kept well below reporting tolerances so off-arc candidates cannot inflate
# the diameter by more than ~1e-10.
_ARC_SLACK = 1e-10

VERTEX_VERTEX = "vertex-vertex"
VERTEX_EDGE = "vertex-edge"
EDGE_EDGE = "edge-edge"


def _chart_basis(center: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Right-handed orthonormal tangent basis at center (e1 x e2 == center)."""
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(center)))] = 1.0
    e1 = vecmath.unit(np.cross(axis, center))
    e2 = np.cross(center, e1)
    return e1, e2


def _to_chart(center: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Gnomonic coordinates of pts (all with positive dot against center)."""
    e1, e2 = _chart_basis(center)
    d = pts @ center
    return np.stack([(pts @ e1) / d, (pts @ e2) / d], axis=-1)


def _hemisphere_center(pts: np.ndarray) -> np.ndarray:
    """A unit vector with strictly positive dot against every input point.

    Tries the normalized vector sum first; if that fails, solves the linear
    program max t s.t. pts @ c >= t, |c_i| <= 1, which certifies whether an
    open hemisphere exists.  Raises NoHemisphere when it does not (or when
    the margin cannot beat EPS_HEMI).
    """
    s = pts.sum(axis=0)
    ns = float(np.linalg.norm(s))
    if ns > 1e-12:
        c = s / ns
        if float(np.min(pts @ c)) > EPS_HEMI:
            return c
    n = pts.shape[0]
    res = linprog(
        c=[0.0, 0.0, 0.0, -1.0],
        A_ub=np.hstack([-pts, np.ones((n, 1))]),
        b_ub=np.zeros(n),
        bounds=[(-1.0, 1.0)] * 3 + [(None, None)],
        method="highs",
    )
    if not res.success or res.x[3] <= 1e-9:
        raise NoHemisphere("no open hemisphere strictly contains all points")
    c = res.x[:3]
    nc = float(np.linalg.norm(c))
    if nc < 1e-12:
        raise NoHemisphere("no open hemisphere strictly contains all points")
    c = c / nc
    if float(np.min(pts @ c)) <= EPS_HEMI:
        raise NoHemisphere("hemisphere containment margin below EPS_HEMI")
    return c


@dataclass(frozen=True, eq=False)
class SphericalPolygon:
    """Ordered vertex cycle of a convex spherical polygon.

    Vertices wind counterclockwise as seen in the tangent chart at
    hemisphere_center; every vertex lies strictly inside that open
    hemisphere.  Interior angles may equal pi (a vertex sitting on the arc
    between its neighbours); such vertices are valid but not extreme.
    """

    vertices: tuple[SpherePoint, ...]
    hemisphere_center: SpherePoint

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 3:
            raise InvalidPolygon("a polygon needs at least 3 vertices")
        V = self._varr
        c = self.hemisphere_center.v
        if float(np.min(V @ c)) <= EPS_HEMI:
            raise InvalidPolygon("a vertex is not strictly inside the open hemisphere")
        steps = vecmath.ang(V, np.roll(V, -1, axis=0))
        if np.any(steps <= EPS_ANTIPODE) or np.any(steps >= math.pi - EPS_ANTIPODE):
            raise InvalidPolygon("consecutive vertices equal or antipodal")
        Z = _to_chart(c, V)
        e = np.roll(Z, -1, axis=0) - Z
        e_next = np.roll(e, -1, axis=0)
        cr = e[:, 0] * e_next[:, 1] - e[:, 1] * e_next[:, 0]
        scale = np.linalg.norm(e, axis=1) * np.linalg.norm(e_next, axis=1)
        if np.any(cr < -1e-9 * scale):
            raise InvalidPolygon("vertices are not in convex counterclockwise order")
        turning = float(np.sum(np.arctan2(cr, np.sum(e * e_next, axis=1))))
        if abs(turning - 2.0 * math.pi) > 1e-6:
            raise InvalidPolygon("vertex cycle does not wind once around the polygon")
        if np.any(self._interior_angles <= 1e-12):
            raise InvalidPolygon("zero interior angle")

    @cached_property
    def _varr(self) -> np.ndarray:
        a = np.array([p.v for p in self.vertices])
        a.flags.writeable = False
        return a

    @cached_property
    def _edge_normals(self) -> np.ndarray:
        """Unit normals of the edge great circles; interior is on the
        non-negative side of each."""
        V = self._varr
        n = vecmath.unit(np.cross(V, np.roll(V, -1, axis=0)))
        n.flags.writeable = False
        return n

    @cached_property
    def _edge_lengths(self) -> np.ndarray:
        V = self._varr
        le = vecmath.ang(V, np.roll(V, -1, axis=0))
        le.flags.writeable = False
        return le

    @cached_property
    def _interior_angles(self) -> np.ndarray:
        V = self._varr
        tp = vecmath.unit(vecmath.reject(np.roll(V, 1, axis=0), V))
        tn = vecmath.unit(vecmath.reject(np.roll(V, -1, axis=0), V))
        a = vecmath.ang(tp, tn)
        a.flags.writeable = False
        return a

    def to_dict(self) -> dict:
        return {"vertices": [p.tolist() for p in self.vertices]}

    @classmethod
    def from_dict(cls, obj: dict) -> "SphericalPolygon":
        verts = [SpherePoint.from_json(v) for v in obj["vertices"]]
        center = _hemisphere_center(np.array([p.v for p in verts]))
        return cls(tuple(verts), SpherePoint(center))


@dataclass(frozen=True, eq=False)
class DiameterWitness:
    """A farthest pair of boundary points and how the maximum is attained."""

    p: SpherePoint
    q: SpherePoint
    value: float
    attainment: str

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "p": self.p.tolist(),
            "q": self.q.tolist(),
            "attainment": self.attainment,
        }


def convex_hull(points: Sequence[SpherePoint]) -> SphericalPolygon:
    """Spherical convex hull of at least three points in an open hemisphere.

    Projects gnomonically to the tangent plane at a hemisphere center, takes
    the planar hull there, and maps the hull ring back.  Vertices whose
    interior angle is within EPS_ANGLE of pi (collinear survivors of the
    planar hull) are absorbed into their edges.
    """
    pts = [p if isinstance(p, SpherePoint) else SpherePoint(p) for p in points]
    if len(pts) < 3:
        raise TooFewPoints(f"need at least 3 points, got {len(pts)}")
    arr = np.array([p.v for p in pts])
    center = _hemisphere_center(arr)
    try:
        hull = _PlanarHull(_to_chart(center, arr))
    except QhullError as exc:
        raise DegenerateHull("points are collinear in the chart (one great circle)") from exc
    ring = arr[hull.vertices]  # counterclockwise in the chart
    ring = _absorb_flat_vertices(ring)
    if ring.shape[0] < 3:
        raise DegenerateHull("hull collapsed to fewer than 3 vertices")
    return SphericalPolygon(tuple(SpherePoint(v) for v in ring), SpherePoint(center))


def _absorb_flat_vertices(ring: np.ndarray) -> np.ndarray:
    """Drop duplicate-adjacent vertices and vertices with interior angle pi."""
    while ring.shape[0] >= 3:
        steps = vecmath.ang(ring, np.roll(ring, -1, axis=0))
        keep = steps > EPS_ANTIPODE
        if not np.all(keep):
            ring = ring[keep]
            continue
        tp = vecmath.unit(vecmath.reject(np.roll(ring, 1, axis=0), ring))
        tn = vecmath.unit(vecmath.reject(np.roll(ring, -1, axis=0), ring))
        angles = vecmath.ang(tp, tn)
        keep = angles < math.pi - EPS_ANGLE
        if np.all(keep):
            break
        ring = ring[keep]
    return ring


def contains(P: SphericalPolygon, p: SpherePoint, tol: float = EPS_ON) -> bool:
    """Whether p lies in the polygon (boundary included, residual tol)."""
    if float(np.dot(p.v, P.hemisphere_center.v)) <= 0.0:
        return False
    return float(np.min(P._edge_normals @ p.v)) >= -tol


def extreme_points(P: SphericalPolygon) -> list[SpherePoint]:
    """Vertices that are not interior to the arc joining their neighbours."""
    keep = P._interior_angles < math.pi - EPS_ANGLE
    return [p for p, k in zip(P.vertices, keep) if k]


def extreme_diameter(P: SphericalPolygon) -> float:
    """Largest pairwise distance between extreme points."""
    E = np.array([p.v for p in extreme_points(P)])
    G = vecmath.ang(E[:, None, :], E[None, :, :])
    return float(G.max())


def _on_arc(x: np.ndarray, a: np.ndarray, b: np.ndarray, length) -> np.ndarray:
    """Membership of points x (already on the edge circle) in the arc a->b."""
    return vecmath.ang(a, x) + vecmath.ang(x, b) <= length + _ARC_SLACK


def boundary_diameter(P: SphericalPolygon) -> DiameterWitness:
    """Farthest pair of boundary points, by exact candidate enumeration.

    Candidates: (a) vertex-vertex pairs; (b) for each vertex and edge the
    point of the edge circle farthest from the vertex (the antipode of the
    perpendicular foot), kept when it lies on the edge arc; (c) for each
    pair of edges the crossings of their common-perpendicular great circle,
    kept when both lie on their arcs.  A pair of edges on the same great
    circle has no common perpendicular and falls back to the other classes.

    Ties between classes resolve in the order (a), (b), (c), and within a
    class to the first pair in scan order, so the witness is deterministic.
    """
    V = P._varr
    n = V.shape[0]
    A = V
    B = np.roll(V, -1, axis=0)
    N = P._edge_normals
    L = P._edge_lengths

    # (a) vertex-vertex
    G = vecmath.ang(V[:, None, :], V[None, :, :])
    iu, ju = np.triu_indices(n, k=1)
    flat = int(np.argmax(G[iu, ju]))
    best_val = float(G[iu[flat], ju[flat]])
    best = (V[iu[flat]], V[ju[flat]], VERTEX_VERTEX)

    # (b) vertex-edge: farthest point of each edge circle from each vertex
    dots = V @ N.T  # (nv, ne)
    W = V[:, None, :] - dots[:, :, None] * N[None, :, :]
    wn = np.linalg.norm(W, axis=-1)
    usable = wn > 1e-9  # vertex is not a pole of the edge circle
    F = W / np.maximum(wn, 1e-300)[:, :, None]
    far = -F
    in_arc = usable & _on_arc(far, A[None, :, :], B[None, :, :], L[None, :])
    if np.any(in_arc):
        dist = np.where(in_arc, vecmath.ang(V[:, None, :], far), -1.0)
        k = int(np.argmax(dist))
        vi, ei = divmod(k, n)
        if float(dist[vi, ei]) > best_val:
            best_val = float(dist[vi, ei])
            best = (V[vi], far[vi, ei], VERTEX_EDGE)

    # (c) edge-edge: crossings of the common-perpendicular circle
    M = np.cross(N[:, None, :], N[None, :, :])
    mn = np.linalg.norm(M, axis=-1)
    pair_ok = (mn > 1e-12) & (np.arange(n)[:, None] < np.arange(n)[None, :])
    Mu = M / np.maximum(mn, 1e-300)[:, :, None]
    U1 = np.cross(N[:, None, :], Mu)  # on the first edge circle, unit by construction
    U2 = np.cross(N[None, :, :], Mu)
    for s1 in (1.0, -1.0):
        p_cand = s1 * U1
        ok1 = pair_ok & _on_arc(p_cand, A[:, None, :], B[:, None, :], L[:, None])
        if not np.any(ok1):
            continue
        for s2 in (1.0, -1.0):
            q_cand = s2 * U2
            ok = ok1 & _on_arc(q_cand, A[None, :, :], B[None, :, :], L[None, :])
            if not np.any(ok):
                continue
            dist = np.where(ok, vecmath.ang(p_cand, q_cand), -1.0)
            k = int(np.argmax(dist))
            ei, ej = divmod(k, n)
            if float(dist[ei, ej]) > best_val:
                best_val = float(dist[ei, ej])
                best = (p_cand[ei, ej], q_cand[ei, ej], EDGE_EDGE)

    p, q, kind = best
    return DiameterWitness(p=SpherePoint(p), q=SpherePoint(q), value=best_val, attainment=kind)


def regular_triangle(side: float) -> SphericalPolygon:
    """Equilateral spherical triangle of the given side, centered on (0,0,1).

    The circumradius r satisfies cos(r) = sqrt((2 cos(side) + 1) / 3), which
    requires side < 2*pi/3 for the vertices to stay inside an open
    hemisphere.
    """
    if not 0.0 < side:
        raise DomainError(f"side={side} must be positive")
    q = (2.0 * math.cos(side) + 1.0) / 3.0
    if q <= EPS_HEMI**2:
        raise DomainError(f"side={side} too long for a hemisphere-contained regular triangle")
    ct = math.sqrt(q)
    st = math.sqrt(1.0 - q)
    verts = tuple(
        SpherePoint((st * math.cos(2.0 * math.pi * k / 3.0), st * math.sin(2.0 * math.pi * k / 3.0), ct))
        for k in range(3)
    )
    return SphericalPolygon(verts, SpherePoint((0.0, 0.0, 1.0)))


def extreme_diameter_margin(P: SphericalPolygon) -> float:
    """Slack of the extreme-point diameter over its sharp lower bound.

    Returns extreme_diameter(P) - 2*phi(boundary_diameter(P)); this is
    non-negative (up to rounding) for every convex polygon whose boundary
    diameter lies in (pi/2, pi).  Raises DiameterOutOfRange outside that
    interval, where the bound does not apply: for diameter at most pi/2 the
    extreme and boundary diameters agree outright.
    """
    w = boundary_diameter(P)
    if not math.pi / 2 < w.value < math.pi:
        raise DiameterOutOfRange(f"boundary diameter {w.value} outside (pi/2, pi)")
    return extreme_diameter(P) - 2.0 * phi(w.value)


def _random_unit(rng: np.random.Generator) -> np.ndarray:
    z = rng.uniform(-1.0, 1.0)
    az = rng.uniform(0.0, 2.0 * math.pi)
    r = math.sqrt(max(0.0, 1.0 - z * z))
    return np.array([r * math.cos(az), r * math.sin(az), z])


def _sample_cap(rng: np.random.Generator, center: np.ndarray, radius: float, count: int) -> np.ndarray:
    """Uniform-in-area samples of the spherical cap around center."""
    e1, e2 = _chart_basis(center)
    z = 1.0 - rng.uniform(size=count) * (1.0 - math.cos(radius))
    az = rng.uniform(0.0, 2.0 * math.pi, size=count)
    st = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return (
        st[:, None] * np.cos(az)[:, None] * e1
        + st[:, None] * np.sin(az)[:, None] * e2
        + z[:, None] * center
    )


def random_polygon(
    seed: int,
    index: int,
    *,
    stream: int = 0,
    cap_radius_range: tuple[float, float] = (math.pi / 4 + 0.05, math.pi / 2 - 0.05),
    diameter_range: tuple[float, float] = (math.pi / 2 + 1e-4, math.pi - 1e-4),
    num_points_range: tuple[int, int] = (5, 50),
    max_attempts: int = 1000,
) -> tuple[SphericalPolygon, DiameterWitness]:
    """Seeded random convex polygon with boundary diameter in a target range.

    Draws a cap center uniformly on the sphere, a cap radius uniformly from
    cap_radius_range, and N points uniformly in the cap, then keeps the hull
    if its boundary diameter falls inside diameter_range (redrawing
    otherwise).  The generator is PCG64 keyed by SeedSequence([seed, stream,
    index]), so trial `index` of a stream is reproducible in isolation and
    across machines; `stream` separates independent trial families sharing
    one seed.
    """
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, stream, index])))
    for _ in range(max_attempts):
        center = _random_unit(rng)
        radius = rng.uniform(*cap_radius_range)
        count = int(rng.integers(num_points_range[0], num_points_range[1] + 1))
        pts = _sample_cap(rng, center, radius, count)
        try:
            P = convex_hull([SpherePoint(p) for p in pts])
        except (DegenerateHull, NoHemisphere, TooFewPoints):
            continue
        w = boundary_diameter(P)
        if diameter_range[0] < w.value < diameter_range[1]:
            return P, w
    raise RuntimeError(
        f"no polygon with diameter in {diameter_range} after {max_attempts} attempts"
    )
