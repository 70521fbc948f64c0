"""Sampling-based oracles used to cross-check the geometry engines.

These deliberately re-implement the primitives they need (distance,
interpolation, chart projection) so a defect in the production code cannot
hide inside its own oracle.
"""

import numpy as np


def sphere_angle(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.arctan2(np.linalg.norm(np.cross(u, v), axis=-1), np.sum(u * v, axis=-1))


def arc_points(a, b, t):
    """Points along the shorter arc a -> b at parameters t in [0, 1]."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    theta = float(sphere_angle(a, b))
    if theta < 1e-12:
        return np.tile(a, (len(t), 1))
    return (np.sin((1.0 - t)[:, None] * theta) * a + np.sin(t[:, None] * theta) * b) / np.sin(theta)


def vertex_array(P):
    return np.array([p.v for p in P.vertices])


def boundary_samples(P, total):
    """(points, edge_index, param) spread along the boundary by edge length."""
    V = vertex_array(P)
    B = np.roll(V, -1, axis=0)
    lengths = sphere_angle(V, B)
    counts = np.maximum(2, np.round(lengths / lengths.sum() * total).astype(int))
    pts, eidx, ts = [], [], []
    for e in range(len(V)):
        t = np.linspace(0.0, 1.0, counts[e], endpoint=False)
        pts.append(arc_points(V[e], B[e], t))
        eidx.append(np.full(counts[e], e, dtype=int))
        ts.append(t)
    return np.vstack(pts), np.concatenate(eidx), np.concatenate(ts)


def sampled_diameter(P, total=320):
    """Max pairwise distance over boundary samples (a lower bound on truth).

    Returns (value, (edge, t), (edge, t)) for the attaining sample pair.
    """
    pts, eidx, ts = boundary_samples(P, total)
    D = sphere_angle(pts[:, None, :], pts[None, :, :])
    k = int(np.argmax(D))
    i, j = divmod(k, len(pts))
    return float(D[i, j]), (int(eidx[i]), float(ts[i])), (int(eidx[j]), float(ts[j]))


def _refine_pair(V, B, pair1, pair2, rounds=24, width=0.6, grid=9):
    (e1, t1), (e2, t2) = pair1, pair2
    best = -1.0
    for _ in range(rounds):
        g1 = np.clip(np.linspace(t1 - width, t1 + width, grid), 0.0, 1.0)
        g2 = np.clip(np.linspace(t2 - width, t2 + width, grid), 0.0, 1.0)
        P1 = arc_points(V[e1], B[e1], g1)
        P2 = arc_points(V[e2], B[e2], g2)
        D = sphere_angle(P1[:, None, :], P2[None, :, :])
        k = int(np.argmax(D))
        i, j = divmod(k, grid)
        best = float(D[i, j])
        t1, t2 = float(g1[i]), float(g2[j])
        width /= 3.0
    return best


def oracle_diameter(P, total=320, top_k=5):
    """Sampled diameter locally refined around the best few edge pairs.

    Approaches the true boundary diameter from below; the midpoint of every
    zoom window is re-evaluated, so refinement never decreases the value.
    """
    pts, eidx, ts = boundary_samples(P, total)
    V = vertex_array(P)
    B = np.roll(V, -1, axis=0)
    D = sphere_angle(pts[:, None, :], pts[None, :, :])
    order = np.argsort(D, axis=None)[::-1]
    best = -1.0
    seen = set()
    for k in order:
        i, j = divmod(int(k), len(pts))
        key = (int(eidx[i]), int(eidx[j]))
        if key in seen:
            continue
        seen.add(key)
        val = _refine_pair(V, B, (int(eidx[i]), float(ts[i])), (int(eidx[j]), float(ts[j])))
        best = max(best, val)
        if len(seen) >= top_k:
            break
    return best


def chart_contains(P, p, tol=1e-9):
    """Planar point-in-convex-polygon test in the tangent chart at the
    polygon's hemisphere center (an independent inside test)."""
    c = P.hemisphere_center.v
    if float(np.dot(p.v, c)) <= 0.0:
        return False
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(c)))] = 1.0
    e1 = np.cross(axis, c)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(c, e1)

    def chart(x):
        d = x @ c
        return np.stack([(x @ e1) / d, (x @ e2) / d], axis=-1)

    Z = chart(vertex_array(P))
    z = chart(p.v)
    e = np.roll(Z, -1, axis=0) - Z
    w = z - Z
    cr = e[:, 0] * w[:, 1] - e[:, 1] * w[:, 0]
    scale = np.linalg.norm(e, axis=1) * (np.linalg.norm(w, axis=1) + 1e-300)
    return bool(np.all(cr >= -tol * scale))


def on_boundary(P, p, tol=1e-9):
    """Whether p lies on some edge arc of the polygon (within tol)."""
    V = vertex_array(P)
    B = np.roll(V, -1, axis=0)
    N = np.cross(V, B)
    N /= np.linalg.norm(N, axis=1, keepdims=True)
    lengths = sphere_angle(V, B)
    on_circle = np.abs(N @ p.v) <= tol
    on_arc = sphere_angle(V, p.v) + sphere_angle(p.v, B) <= lengths + 1e-8
    return bool(np.any(on_circle & on_arc))
