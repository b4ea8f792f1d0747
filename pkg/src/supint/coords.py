"""Canonical coordinate charts and transformations.

An n-particle configuration on the line is identified with one point of
E^n through the orthonormal change of variables

    z^j = (x^1 + ... + x^j - j x^{j+1}) / sqrt(j(j+1)),   j = 1..n-1
    z^n = (x^1 + ... + x^n) / sqrt(n)

whose matrix is orthogonal, so momenta push forward by the same matrix.
On top of the Cartesian z-chart sit the curvilinear charts used by the
potential catalog.  Momenta always transform as covectors through the
analytic inverse-transpose Jacobian of the position map; kinetic energy
is chart-invariant and `kinetic_energy` knows every metric.

Chart tags, coordinate orderings and angle conventions are tabulated in
CHARTS.md at the repository root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ChartMismatchError, SingularChartError

__all__ = [
    "CARTESIAN_LINE",
    "ORTHOGONAL_Z",
    "CYLINDRICAL_3",
    "SPHERICAL_CYLINDRICAL_N",
    "POLAR_2",
    "SPHERE_2",
    "CHART_TAGS",
    "LineConfig",
    "PhaseState",
    "helmert_matrix",
    "line_to_orthogonal",
    "orthogonal_to_line",
    "chart_transform",
    "normalize_angle",
    "kinetic_energy",
]

CARTESIAN_LINE = "cartesian-line"
ORTHOGONAL_Z = "orthogonal-z"
CYLINDRICAL_3 = "cylindrical-3"
SPHERICAL_CYLINDRICAL_N = "spherical-cylindrical-n"
POLAR_2 = "polar-2"
SPHERE_2 = "sphere-2"

CHART_TAGS = (CARTESIAN_LINE, ORTHOGONAL_Z, CYLINDRICAL_3,
              SPHERICAL_CYLINDRICAL_N, POLAR_2, SPHERE_2)

# fixed-dimension charts; cartesian-line and orthogonal-z take any n >= 2
_FIXED_DIM = {CYLINDRICAL_3: 3, SPHERICAL_CYLINDRICAL_N: 4, POLAR_2: 2, SPHERE_2: 2}

# tolerance for "state lies on the unit tangent bundle" when entering sphere-2
_SPHERE_TOL = 1e-9


@dataclass(frozen=True)
class LineConfig:
    """Positions and conjugate momenta of n unit-mass particles on a line."""

    x: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.array(self.x, dtype=float))
        object.__setattr__(self, "p", np.array(self.p, dtype=float))
        if self.x.ndim != 1 or self.x.shape != self.p.shape:
            raise ValueError("x and p must be 1-d arrays of equal length")
        if self.x.size < 2:
            raise ValueError("need at least two particles")

    @property
    def n(self) -> int:
        return self.x.size

    def differences(self) -> np.ndarray:
        """Cyclic differences X_i = x^i - x^{i+1} (X_n wraps around)."""
        return self.x - np.roll(self.x, -1)


@dataclass(frozen=True)
class PhaseState:
    """Chart-tagged point of phase space: coordinates q and momenta p."""

    chart: str
    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "q", np.array(self.q, dtype=float))
        object.__setattr__(self, "p", np.array(self.p, dtype=float))
        if self.chart not in CHART_TAGS:
            raise ChartMismatchError(f"unknown chart tag {self.chart!r}")
        if self.q.shape != self.p.shape or self.q.ndim != 1:
            raise ValueError("q and p must be 1-d arrays of equal length")
        want = _FIXED_DIM.get(self.chart)
        if want is not None and self.q.size != want:
            raise ChartMismatchError(
                f"chart {self.chart} has dimension {want}, got {self.q.size}")
        if want is None and self.q.size < 2:
            raise ChartMismatchError(f"chart {self.chart} needs dimension >= 2")

    @property
    def dim(self) -> int:
        return self.q.size

    def require_chart(self, *tags: str) -> None:
        if self.chart not in tags:
            raise ChartMismatchError(
                f"expected chart in {tags}, got {self.chart!r}")


def helmert_matrix(n: int) -> np.ndarray:
    """Orthogonal matrix mapping particle coordinates to the z-chart."""
    if n < 2:
        raise ValueError("n must be >= 2")
    m = np.zeros((n, n))
    for j in range(1, n):
        norm = 1.0 / math.sqrt(j * (j + 1))
        m[j - 1, :j] = norm
        m[j - 1, j] = -j * norm
    m[n - 1, :] = 1.0 / math.sqrt(n)
    return m


def line_to_orthogonal(c: LineConfig) -> PhaseState:
    m = helmert_matrix(c.n)
    return PhaseState(ORTHOGONAL_Z, m @ c.x, m @ c.p)


def orthogonal_to_line(s: PhaseState) -> LineConfig:
    s.require_chart(ORTHOGONAL_Z)
    m = helmert_matrix(s.dim)
    return LineConfig(m.T @ s.q, m.T @ s.p)


def normalize_angle(psi: float, period: float) -> float:
    """Reduce an angle to [0, period). Angles are otherwise kept unreduced."""
    if period <= 0:
        raise ValueError("period must be positive")
    out = math.fmod(psi, period)
    if out < 0:
        out += period
    if out >= period:  # fmod rounding at the boundary
        out -= period
    return out


def kinetic_energy(s: PhaseState) -> float:
    """Value of the kinetic term (unit masses) in the state's chart."""
    p = s.p
    if s.chart in (CARTESIAN_LINE, ORTHOGONAL_Z):
        return 0.5 * float(p @ p)
    if s.chart == POLAR_2:
        r = s.q[0]
        return 0.5 * (p[0] ** 2 + p[1] ** 2 / r**2)
    if s.chart == CYLINDRICAL_3:
        r = s.q[0]
        return 0.5 * (p[0] ** 2 + p[1] ** 2 / r**2 + p[2] ** 2)
    if s.chart == SPHERICAL_CYLINDRICAL_N:
        r, _, psi2 = s.q[0], s.q[1], s.q[2]
        return 0.5 * (p[0] ** 2 + p[2] ** 2 / r**2
                      + p[1] ** 2 / (r * math.sin(psi2)) ** 2 + p[3] ** 2)
    if s.chart == SPHERE_2:
        theta = s.q[0]
        return 0.5 * (p[0] ** 2 + p[1] ** 2 / math.sin(theta) ** 2)
    raise ChartMismatchError(s.chart)


# -- individual chart maps (positions + covector momenta) -------------------

def _check_finite(q, p):
    if not (np.all(np.isfinite(q)) and np.all(np.isfinite(p))):
        raise SingularChartError("transform produced a non-finite component")


def _cart_to_polar(s: PhaseState) -> PhaseState:
    x, y = s.q
    px, py = s.p
    r = math.hypot(x, y)
    if r == 0.0:
        raise SingularChartError("polar chart singular at r = 0")
    psi = math.atan2(y, x)
    pr = (x * px + y * py) / r
    ppsi = x * py - y * px
    return PhaseState(POLAR_2, [r, psi], [pr, ppsi])


def _polar_to_cart(s: PhaseState) -> PhaseState:
    r, psi = s.q
    pr, ppsi = s.p
    if r == 0.0:
        raise SingularChartError("polar chart singular at r = 0")
    c, sn = math.cos(psi), math.sin(psi)
    q = [r * c, r * sn]
    p = [c * pr - sn * ppsi / r, sn * pr + c * ppsi / r]
    _check_finite(q, p)
    return PhaseState(ORTHOGONAL_Z, q, p)


def _cart_to_cylindrical(s: PhaseState) -> PhaseState:
    flat = _cart_to_polar(PhaseState(ORTHOGONAL_Z, s.q[:2], s.p[:2]))
    return PhaseState(CYLINDRICAL_3,
                      np.append(flat.q, s.q[2]), np.append(flat.p, s.p[2]))


def _cylindrical_to_cart(s: PhaseState) -> PhaseState:
    flat = _polar_to_cart(PhaseState(POLAR_2, s.q[:2], s.p[:2]))
    return PhaseState(ORTHOGONAL_Z,
                      np.append(flat.q, s.q[2]), np.append(flat.p, s.p[2]))


def _cart_to_spherical_cyl(s: PhaseState) -> PhaseState:
    z1, z2, z3, z4 = s.q
    p1, p2, p3, p4 = s.p
    rho = math.hypot(z1, z2)
    r = math.sqrt(z1 * z1 + z2 * z2 + z3 * z3)
    if r == 0.0 or rho == 0.0:
        raise SingularChartError("spherical chart singular at r = 0 or sin(psi2) = 0")
    psi1 = math.atan2(z2, z1)
    psi2 = math.atan2(rho, z3)
    pr = (z1 * p1 + z2 * p2 + z3 * p3) / r
    ppsi1 = z1 * p2 - z2 * p1
    ppsi2 = z3 * (z1 * p1 + z2 * p2) / rho - rho * p3
    q = [r, psi1, psi2, z4]
    p = [pr, ppsi1, ppsi2, p4]
    _check_finite(q, p)
    return PhaseState(SPHERICAL_CYLINDRICAL_N, q, p)


def _spherical_cyl_to_cart(s: PhaseState) -> PhaseState:
    r, psi1, psi2, u = s.q
    pr, pp1, pp2, pu = s.p
    s1, c1 = math.sin(psi1), math.cos(psi1)
    s2, c2 = math.sin(psi2), math.cos(psi2)
    if r == 0.0 or s2 == 0.0:
        raise SingularChartError("spherical chart singular at r = 0 or sin(psi2) = 0")
    q = [r * s2 * c1, r * s2 * s1, r * c2, u]
    p = [pr * s2 * c1 - pp1 * s1 / (r * s2) + pp2 * c2 * c1 / r,
         pr * s2 * s1 + pp1 * c1 / (r * s2) + pp2 * c2 * s1 / r,
         pr * c2 - pp2 * s2 / r,
         pu]
    _check_finite(q, p)
    return PhaseState(ORTHOGONAL_Z, q, p)


def _cart_to_sphere(s: PhaseState) -> PhaseState:
    x = s.q
    p = s.p
    r = float(np.linalg.norm(x))
    if abs(r - 1.0) > _SPHERE_TOL:
        raise ChartMismatchError(
            f"sphere-2 expects a unit-sphere position, |x| = {r:.12g}")
    if abs(float(x @ p)) > _SPHERE_TOL * (1.0 + float(np.linalg.norm(p))):
        raise ChartMismatchError("sphere-2 expects a tangent momentum (x . p = 0)")
    rho = math.hypot(x[0], x[1])
    if rho == 0.0:
        raise SingularChartError("sphere chart singular at the poles")
    theta = math.atan2(rho, x[2])
    phi = math.atan2(x[1], x[0])
    ct, st = math.cos(theta), math.sin(theta)
    cp, sp = math.cos(phi), math.sin(phi)
    ptheta = p[0] * ct * cp + p[1] * ct * sp - p[2] * st
    pphi = -p[0] * st * sp + p[1] * st * cp
    return PhaseState(SPHERE_2, [theta, phi], [ptheta, pphi])


def _sphere_to_cart(s: PhaseState) -> PhaseState:
    theta, phi = s.q
    ptheta, pphi = s.p
    st, ct = math.sin(theta), math.cos(theta)
    cp, sp = math.cos(phi), math.sin(phi)
    if st == 0.0:
        raise SingularChartError("sphere chart singular at the poles")
    q = [st * cp, st * sp, ct]
    p = [ptheta * ct * cp - pphi * sp / st,
         ptheta * ct * sp + pphi * cp / st,
         -ptheta * st]
    _check_finite(q, p)
    return PhaseState(ORTHOGONAL_Z, q, p)


# routes into and out of the orthogonal-z hub, keyed by (tag, dimension)
_FROM_CART = {
    (POLAR_2, 2): _cart_to_polar,
    (CYLINDRICAL_3, 3): _cart_to_cylindrical,
    (SPHERICAL_CYLINDRICAL_N, 4): _cart_to_spherical_cyl,
    (SPHERE_2, 3): _cart_to_sphere,
}
_TO_CART = {
    POLAR_2: _polar_to_cart,
    CYLINDRICAL_3: _cylindrical_to_cart,
    SPHERICAL_CYLINDRICAL_N: _spherical_cyl_to_cart,
    SPHERE_2: _sphere_to_cart,
}


def chart_transform(s: PhaseState, target: str) -> PhaseState:
    """Transform a state to another chart, momenta included.

    All routes pass through the Cartesian z-chart, so any supported pair
    composes.  cartesian-line is treated as the particle-label alias of
    orthogonal-z (they differ by the orthogonal Helmert map).
    """
    if target not in CHART_TAGS:
        raise ChartMismatchError(f"unknown chart tag {target!r}")
    if target == s.chart:
        return s

    # normalize the source to orthogonal-z
    if s.chart == ORTHOGONAL_Z:
        cart = s
    elif s.chart == CARTESIAN_LINE:
        cart = line_to_orthogonal(LineConfig(s.q, s.p))
    else:
        cart = _TO_CART[s.chart](s)

    if target == ORTHOGONAL_Z:
        return cart
    if target == CARTESIAN_LINE:
        lc = orthogonal_to_line(cart)
        return PhaseState(CARTESIAN_LINE, lc.x, lc.p)
    try:
        fn = _FROM_CART[(target, cart.dim)]
    except KeyError:
        raise ChartMismatchError(
            f"no transform from {s.chart} (dim {s.dim}) to {target}") from None
    return fn(cart)
