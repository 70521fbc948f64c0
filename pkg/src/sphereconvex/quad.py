"""Spherical quadrilaterals with right angles at three vertices.

A quadrilateral abcd with right angles at a, b, c is determined up to
isometry by the two sides meeting at b.  Writing kappa = |ab|, lam = |bc|,
mu = |cd|, nu = |da| and xi = |bd| for the diagonal, the sides satisfy

    sin(mu) = sin(kappa) * cos(nu)                         (eq. 1)
    tan(mu) = tan(kappa) * cos(lam)                        (eq. 2)
    cos(nu) = sqrt(cos(mu)^2 cos(lam)^2 + sin(mu)^2)       (eq. 3)
    cos(nu) = cos(lam) / sqrt(1 - sin(lam)^2 sin(kappa)^2) (eq. 4)

and both right-triangle splits of the diagonal give
cos(xi) = cos(mu) cos(lam) = cos(nu) cos(kappa).  These are the spherical
counterparts of the Lambert-quadrilateral relations of the hyperbolic plane
(sinh mu = sinh kappa cosh nu, tanh mu = cosh lam tanh kappa, and so on);
only the spherical case is implemented here.

The module provides the closed-form solver, an explicit geometric embedding
that serves as an independent route to the same numbers, and the extremal
function `phi` relating a lune thickness to the half-side of the equilateral
triangle inscribed in the lune (see the `lune` module).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SpherePoint, angle_at, distance
from .errors import DomainError, NoIntersection

# Inputs closer than this to the degenerate strip (kappa or lam == 0) are
# rejected; the limits are exercised by tests, not extrapolated by the code.
_DEGENERATE_SIDE = 1e-8


def _phi_formula(delta: float) -> float:
    c = math.cos(delta)
    return math.acos(0.25 * (c + math.sqrt(c * c + 8.0)))


def phi(delta: float) -> float:
    """Extremal half-side function for thickness delta in (pi/2, pi).

    phi(delta) = arccos((cos(delta) + sqrt(cos(delta)^2 + 8)) / 4) is the
    half-side of the chord such that the inscribed triangle of the matching
    lune is equilateral; it increases from pi/4 to pi/3 over the open
    interval (pi/2, pi).
    """
    if not math.pi / 2 < delta < math.pi:
        raise DomainError(f"delta={delta} outside the open interval (pi/2, pi)")
    return _phi_formula(delta)


def phi_inverse_delta(phi_val: float) -> float:
    """Inverse of `phi`: the thickness whose extremal half-side is phi_val.

    Uses cos(delta) = (2 cos(phi)^2 - 1) / cos(phi), valid for
    phi_val in (pi/4, pi/3); the round trip phi(phi_inverse_delta(x)) == x
    holds to double precision.
    """
    if not math.pi / 4 < phi_val < math.pi / 3:
        raise DomainError(f"phi={phi_val} outside the open interval (pi/4, pi/3)")
    c = math.cos(phi_val)
    return math.acos((2.0 * c * c - 1.0) / c)


@dataclass(frozen=True)
class QuadSolution:
    """Side lengths of a quadrilateral with right angles at a, b, c.

    kappa = |ab|, lam = |bc|, mu = |cd|, nu = |da|, xi = |bd| (diagonal).
    Construction only range-checks the values; use `check_identities` to
    measure how well a solution satisfies the four side relations, e.g. for
    values measured off an embedding or deliberately perturbed.
    """

    kappa: float
    lam: float
    mu: float
    nu: float
    xi: float

    def __post_init__(self):
        for name in ("kappa", "lam", "mu", "nu"):
            val = getattr(self, name)
            if not 0.0 < val < math.pi / 2:
                raise DomainError(f"{name}={val} outside the open interval (0, pi/2)")
        if not 0.0 < self.xi < math.pi:
            raise DomainError(f"xi={self.xi} outside the open interval (0, pi)")

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "lambda": self.lam,
            "mu": self.mu,
            "nu": self.nu,
            "xi": self.xi,
        }


def _check_side_domain(kappa: float, lam: float) -> None:
    if not 0.0 < kappa < math.pi / 2:
        raise DomainError(f"kappa={kappa} outside the open interval (0, pi/2)")
    if not 0.0 < lam < math.pi / 2:
        raise DomainError(f"lam={lam} outside the open interval (0, pi/2)")
    if kappa < _DEGENERATE_SIDE or lam < _DEGENERATE_SIDE:
        raise DomainError("side below the degeneracy floor 1e-8; limits are not extrapolated")


def solve_quad(kappa: float, lam: float) -> QuadSolution:
    """Closed-form side lengths from the two sides meeting at b.

    mu comes from eq. 2 and nu from the tangent form of eq. 4
    (tan(nu) = cos(kappa) tan(lam)), because those need only the inputs;
    eqs. 1, 3, and the literal eq. 4 are then available as independent
    residuals.  The tangent and atan2 forms stay accurate where the arccos
    forms collapse (tiny sides, or both sides near pi/2).
    """
    _check_side_domain(kappa, lam)
    mu = math.atan(math.tan(kappa) * math.cos(lam))
    nu = math.atan2(math.cos(kappa) * math.sin(lam), math.cos(lam))
    # diagonal: cos(xi) = cos(mu) cos(lam), with the matching sine
    # sin(xi)^2 = sin(mu)^2 + cos(mu)^2 sin(lam)^2 for small-angle accuracy
    sin_xi = math.sqrt(math.sin(mu) ** 2 + (math.cos(mu) * math.sin(lam)) ** 2)
    xi = math.atan2(sin_xi, math.cos(mu) * math.cos(lam))
    return QuadSolution(kappa=kappa, lam=lam, mu=mu, nu=nu, xi=xi)


@dataclass(frozen=True)
class QuadEmbedding:
    """Realized vertices of a quadrilateral with right angles at a, b, c."""

    a: SpherePoint
    b: SpherePoint
    c: SpherePoint
    d: SpherePoint

    def __post_init__(self):
        for vertex, p, q in ((self.a, self.d, self.b), (self.b, self.a, self.c), (self.c, self.b, self.d)):
            if abs(angle_at(vertex, p, q) - math.pi / 2) > 1e-10:
                raise DomainError("embedding does not have right angles at a, b, c")

    def measured(self) -> QuadSolution:
        """Side lengths read off the embedded vertices."""
        return QuadSolution(
            kappa=distance(self.a, self.b),
            lam=distance(self.b, self.c),
            mu=distance(self.c, self.d),
            nu=distance(self.d, self.a),
            xi=distance(self.b, self.d),
        )


def construct_quad(kappa: float, lam: float) -> QuadEmbedding:
    """Geometric realization, independent of the closed-form solver.

    Canonical pose: b at (1, 0, 0), bc along the equator, ba along the prime
    meridian, which makes the right angle at b exact.  Perpendicular great
    circles are erected at a and c and intersected to obtain d; the
    intersection candidate on the same side as the quadrilateral interior is
    selected.
    """
    _check_side_domain(kappa, lam)
    b = np.array([1.0, 0.0, 0.0])
    c = np.array([math.cos(lam), math.sin(lam), 0.0])
    a = np.array([math.cos(kappa), 0.0, math.sin(kappa)])
    # Normals of the circles through a and c orthogonal to ba and bc: the
    # unit tangents of those sides at a and c.
    n_a = np.array([math.sin(kappa), 0.0, -math.cos(kappa)])
    n_c = np.array([math.sin(lam), -math.cos(lam), 0.0])
    w = np.cross(n_c, n_a)
    norm = float(np.linalg.norm(w))
    if norm < 1e-12:
        raise NoIntersection("perpendiculars at a and c are coplanar")
    d = w / norm
    if float(np.dot(d, a + c)) < 0.0:
        d = -d
    return QuadEmbedding(a=SpherePoint(a), b=SpherePoint(b), c=SpherePoint(c), d=SpherePoint(d))


def check_identities(q: QuadSolution) -> tuple[float, float, float, float]:
    """Absolute residuals of eqs. 1-4 for the given side lengths."""
    r1 = abs(math.sin(q.mu) - math.sin(q.kappa) * math.cos(q.nu))
    r2 = abs(math.tan(q.mu) - math.tan(q.kappa) * math.cos(q.lam))
    r3 = abs(math.cos(q.nu) - math.sqrt(math.cos(q.mu) ** 2 * math.cos(q.lam) ** 2 + math.sin(q.mu) ** 2))
    r4 = abs(math.cos(q.nu) - math.cos(q.lam) / math.sqrt(1.0 - math.sin(q.lam) ** 2 * math.sin(q.kappa) ** 2))
    return (r1, r2, r3, r4)


def diagonal_residuals(q: QuadSolution) -> tuple[float, float]:
    """Residuals of the two right-triangle splits of the diagonal:
    |cos(xi) - cos(mu) cos(lam)| and |cos(xi) - cos(nu) cos(kappa)|."""
    cx = math.cos(q.xi)
    return (
        abs(cx - math.cos(q.mu) * math.cos(q.lam)),
        abs(cx - math.cos(q.nu) * math.cos(q.kappa)),
    )
