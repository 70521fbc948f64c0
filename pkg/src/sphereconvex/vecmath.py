"""ndarray helpers shared by the geometry modules.

All functions treat the last axis as the 3-vector axis and broadcast over
leading axes.
"""

from __future__ import annotations

import numpy as np


def unit(v: np.ndarray) -> np.ndarray:
    """Normalize along the last axis."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    return v / n


def ang(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Angle in [0, pi] between unit vectors, accurate near 0 and pi.

    Uses atan2(|u x w|, u . w) rather than arccos of the dot product, which
    loses roughly half the significant digits at both ends of the range.
    """
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    c = np.cross(u, w)
    s = np.linalg.norm(c, axis=-1)
    d = np.sum(u * w, axis=-1)
    return np.arctan2(s, d)


def reject(v: np.ndarray, axis_vec: np.ndarray) -> np.ndarray:
    """Component of v orthogonal to the unit vector axis_vec (not normalized)."""
    v = np.asarray(v, dtype=float)
    axis_vec = np.asarray(axis_vec, dtype=float)
    return v - np.sum(v * axis_vec, axis=-1, keepdims=True) * axis_vec


def slerp(a: np.ndarray, b: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Points along the shorter great-circle arc from a to b at parameters t.

    a, b are unit 3-vectors; t broadcasts to the leading shape of the result.
    For nearly coincident endpoints the arc is treated as the single point a.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    t = np.asarray(t, dtype=float)[..., None]
    theta = ang(a, b)
    if theta < 1e-12:
        return np.broadcast_to(a, t.shape[:-1] + (3,)).copy()
    s = np.sin(theta)
    return (np.sin((1.0 - t) * theta) * a + np.sin(t * theta) * b) / s
