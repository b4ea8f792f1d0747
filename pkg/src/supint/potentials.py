"""Potential catalog: evaluation, analytic gradients and wall functions.

Every entry evaluates natively in the chart(s) its closed form is written
in; other supported charts route through `coords.chart_transform`, and the
gradient rides back along the same covector transform the momenta use, so
no finite differences enter anywhere.

All singular denominators ("walls") raise `SingularityError` instead of
returning infinities: a silent inf would poison downstream integrators.
Wall proximity is judged against WALL_TOL.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import coords
from .coords import (CARTESIAN_LINE, CYLINDRICAL_3, ORTHOGONAL_Z, POLAR_2,
                     SPHERE_2, SPHERICAL_CYLINDRICAL_N, PhaseState)
from .errors import (ChartMismatchError, ConventionMismatchError,
                     ParameterError, SingularityError)
from .jets import Jet, jet_constant, jet_cos, jet_sin, jet_variable

__all__ = [
    "WALL_TOL",
    "AngularProfile",
    "ConstantProfile",
    "SinSquaredWell",
    "TTWAngular",
    "Potential",
    "PotentialValue",
    "PhaseConstants",
    "make_potential",
    "catalog_ids",
    "catalog_info",
    "evaluate",
    "gradient",
    "derive_phase_constants",
    "ttw_half_angle",
    "platonic_f",
    "platonic_f_gradient",
    "platonic_f3_printed",
]

# a denominator this close to zero counts as sitting on the wall
WALL_TOL = 1e-12


def _guard(name: str, value: float) -> float:
    if abs(value) <= WALL_TOL:
        raise SingularityError(name, value)
    return value


# ---------------------------------------------------------------------------
# angular profiles F(psi): plain value, derivative, and jet for the ladder
# ---------------------------------------------------------------------------

class AngularProfile:
    """Scalar function of one angle, differentiable to arbitrary order."""

    def __call__(self, psi: float) -> float:
        raise NotImplementedError

    def deriv(self, psi: float) -> float:
        raise NotImplementedError

    def jet(self, psi: float, order: int) -> Jet:
        raise NotImplementedError

    def walls(self, psi: float) -> dict[str, float]:
        return {}


class ConstantProfile(AngularProfile):
    def __init__(self, c: float):
        self.c = float(c)

    def __call__(self, psi):
        return self.c

    def deriv(self, psi):
        return 0.0

    def jet(self, psi, order):
        return jet_constant(self.c, order)


class SinSquaredWell(AngularProfile):
    """offset + k / sin^2(n psi + psi0)."""

    def __init__(self, k: float, n: int, psi0: float = 0.0, offset: float = 0.0):
        if int(n) != n or n < 1:
            raise ParameterError("sector count n must be a positive integer")
        self.k = float(k)
        self.n = int(n)
        self.psi0 = float(psi0)
        self.offset = float(offset)

    def _arg(self, psi):
        return self.n * psi + self.psi0

    def __call__(self, psi):
        s = _guard("sin(n psi + psi0)", math.sin(self._arg(psi)))
        return self.offset + self.k / s**2

    def deriv(self, psi):
        a = self._arg(psi)
        s = _guard("sin(n psi + psi0)", math.sin(a))
        return -2.0 * self.k * self.n * math.cos(a) / s**3

    def jet(self, psi, order):
        arg = jet_variable(psi, order) * self.n + self.psi0
        s = jet_sin(arg)
        _guard("sin(n psi + psi0)", s.value())
        return s ** (-2) * self.k + self.offset

    def walls(self, psi):
        return {"sin(n psi + psi0)": math.sin(self._arg(psi))}


class TTWAngular(AngularProfile):
    """k1 + k2 / cos^2(h psi) + k3 / sin^2(h psi)."""

    def __init__(self, k1: float, k2: float, k3: float, h: float):
        self.k1, self.k2, self.k3 = float(k1), float(k2), float(k3)
        self.h = float(h)

    def __call__(self, psi):
        c = _guard("cos(h psi)", math.cos(self.h * psi))
        s = _guard("sin(h psi)", math.sin(self.h * psi))
        return self.k1 + self.k2 / c**2 + self.k3 / s**2

    def deriv(self, psi):
        h = self.h
        c = _guard("cos(h psi)", math.cos(h * psi))
        s = _guard("sin(h psi)", math.sin(h * psi))
        return 2.0 * h * (self.k2 * s / c**3 - self.k3 * c / s**3)

    def jet(self, psi, order):
        arg = jet_variable(psi, order) * self.h
        c, s = jet_cos(arg), jet_sin(arg)
        _guard("cos(h psi)", c.value())
        _guard("sin(h psi)", s.value())
        return c ** (-2) * self.k2 + s ** (-2) * self.k3 + self.k1

    def walls(self, psi):
        return {"cos(h psi)": math.cos(self.h * psi),
                "sin(h psi)": math.sin(self.h * psi)}


# ---------------------------------------------------------------------------
# platonic invariants on the sphere
# ---------------------------------------------------------------------------

def _f1(theta, psi):
    return math.sin(theta) ** 2 * math.cos(theta) * math.cos(psi) * math.sin(psi)


def _f1_grad(theta, psi):
    s, c = math.sin(theta), math.cos(theta)
    half_sin2 = math.cos(psi) * math.sin(psi)
    return ((2 * s * c * c - s**3) * half_sin2,
            s * s * c * math.cos(2 * psi))


def _f3_bracket(theta, psi):
    c = math.cos(theta)
    s = math.sin(theta)
    b_theta = 11 * c**5 - 15 * c**3 + 5 * c
    return b_theta + 2 * s**5 * math.cos(5 * psi)


def _f3(theta, psi):
    return -math.cos(theta) * _f3_bracket(theta, psi)


def _f3_grad(theta, psi):
    s, c = math.sin(theta), math.cos(theta)
    g = _f3_bracket(theta, psi)
    db_theta = 55 * c**4 * (-s) - 45 * c**2 * (-s) + 5 * (-s)
    dg_theta = db_theta + 10 * s**4 * c * math.cos(5 * psi)
    return (s * g - c * dg_theta, 10 * c * s**5 * math.sin(5 * psi))


def platonic_f3_printed(theta, psi):
    """f3 with the quintic azimuthal polynomial written out term by term."""
    c, s = math.cos(theta), math.sin(theta)
    cp, sp = math.cos(psi), math.sin(psi)
    poly = 32 * cp * sp**4 - 24 * cp * sp**2 + 2 * cp
    return -c * (c**5 - 5 * s**2 * c**3 + 5 * s**4 * c + s**5 * poly)


def platonic_f(index: int, theta: float, psi: float) -> float:
    """Invariant f_i on the sphere: 1 tetrahedral, 2 octahedral, 3 icosahedral."""
    if index == 1:
        return _f1(theta, psi)
    if index == 2:
        return _f1(theta, psi) ** 2
    if index == 3:
        return _f3(theta, psi)
    raise ParameterError(f"platonic index must be 1, 2 or 3, got {index}")


def platonic_f_gradient(index: int, theta: float, psi: float):
    if index == 1:
        return _f1_grad(theta, psi)
    if index == 2:
        f = _f1(theta, psi)
        gt, gp = _f1_grad(theta, psi)
        return (2 * f * gt, 2 * f * gp)
    if index == 3:
        return _f3_grad(theta, psi)
    raise ParameterError(f"platonic index must be 1, 2 or 3, got {index}")


def _platonic_walls(index, theta, psi):
    if index in (1, 2):
        return {"sin(theta)": math.sin(theta), "cos(theta)": math.cos(theta),
                "cos(psi)": math.cos(psi), "sin(psi)": math.sin(psi)}
    return {"cos(theta)": math.cos(theta),
            "icosahedral factor": _f3_bracket(theta, psi)}


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PotentialValue:
    value: float
    gradient: np.ndarray | None = None


class Potential:
    """One catalog entry: identifier, parameters and chart-aware evaluation."""

    def __init__(self, pid: str, params: dict, defining_chart: str,
                 supported_charts: frozenset[str]):
        self.id = pid
        self.params = dict(params)
        self.defining_chart = defining_chart
        self.supported_charts = supported_charts

    def __repr__(self):
        ps = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"Potential({self.id}, {ps})"

    # chart-native hooks, overridden per entry ------------------------------

    def _native_value(self, s: PhaseState) -> float:
        raise NotImplementedError

    def _native_gradient(self, s: PhaseState) -> np.ndarray:
        raise NotImplementedError

    def _native_charts(self) -> tuple[str, ...]:
        return (self.defining_chart,)

    def walls(self, s: PhaseState) -> dict[str, float]:
        """Wall functions (singular denominators) at the state's configuration."""
        return {}

    # public evaluation -----------------------------------------------------

    def _to_native(self, s: PhaseState) -> PhaseState:
        if s.chart in self._native_charts():
            return s
        if s.chart not in self.supported_charts:
            raise ChartMismatchError(
                f"{self.id} does not support chart {s.chart}")
        return coords.chart_transform(s, self.defining_chart)

    def value(self, s: PhaseState) -> float:
        return self._native_value(self._to_native(s))

    def gradient(self, s: PhaseState) -> np.ndarray:
        native = self._to_native(s)
        g = self._native_gradient(native)
        if native is s:
            return g
        # covectors transform exactly like momenta
        carrier = PhaseState(native.chart, native.q, g)
        return coords.chart_transform(carrier, s.chart).p


def evaluate(pot: Potential, s: PhaseState, with_gradient: bool = False) -> PotentialValue:
    v = pot.value(s)
    g = pot.gradient(s) if with_gradient else None
    return PotentialValue(v, g)


def gradient(pot: Potential, s: PhaseState) -> np.ndarray:
    return pot.gradient(s)


class _LinePairPotential(Potential):
    """Sum over cyclic pair terms strength/den_i^2 on the 3-particle line."""

    def __init__(self, pid, params, strength):
        super().__init__(pid, params, CARTESIAN_LINE,
                         frozenset({CARTESIAN_LINE, ORTHOGONAL_Z, CYLINDRICAL_3}))
        self.strength = strength

    def _dens(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _den_jacobian(self) -> np.ndarray:
        raise NotImplementedError

    def _native_value(self, s):
        if s.q.size != 3:
            raise ChartMismatchError(f"{self.id} is a three-body potential")
        d = self._dens(s.q)
        for i, di in enumerate(d):
            _guard(f"{self.id} denominator {i + 1}", di)
        return float(self.strength * np.sum(1.0 / d**2))

    def _native_gradient(self, s):
        d = self._dens(s.q)
        for i, di in enumerate(d):
            _guard(f"{self.id} denominator {i + 1}", di)
        jac = self._den_jacobian()
        return -2.0 * self.strength * (jac.T @ (1.0 / d**3))

    def walls(self, s):
        native = self._to_native(s)
        d = self._dens(native.q)
        return {f"{self.id} denominator {i + 1}": float(di)
                for i, di in enumerate(d)}


class _Calogero(_LinePairPotential):
    def __init__(self, params):
        super().__init__("calogero", params, params["k"])

    def _dens(self, x):
        return x - np.roll(x, -1)

    def _den_jacobian(self):
        # d X_i / d x_j for X_i = x_i - x_{i+1} (cyclic)
        return np.eye(3) - np.roll(np.eye(3), -1, axis=0)


class _Wolfes(_LinePairPotential):
    def __init__(self, params):
        super().__init__("wolfes", params, params["h"])

    def _dens(self, x):
        diff = x - np.roll(x, -1)
        return diff - np.roll(diff, -1)

    def _den_jacobian(self):
        # Y_i = x_i - 2 x_{i+1} + x_{i+2} (cyclic)
        e = np.eye(3)
        return e - 2 * np.roll(e, -1, axis=0) + np.roll(e, -2, axis=0)


class _PlanarRadialPotential(Potential):
    """V = F(psi) / r^2 on the plane, F from an angular profile."""

    def __init__(self, pid, params, profile: AngularProfile):
        super().__init__(pid, params, POLAR_2,
                         frozenset({POLAR_2, CYLINDRICAL_3, ORTHOGONAL_Z}))
        self.profile = profile

    def _native_charts(self):
        return (POLAR_2, CYLINDRICAL_3)

    def _native_value(self, s):
        r, psi = s.q[0], s.q[1]
        return self.profile(psi) / r**2

    def _native_gradient(self, s):
        r, psi = s.q[0], s.q[1]
        g = np.zeros(s.dim)
        g[0] = -2.0 * self.profile(psi) / r**3
        g[1] = self.profile.deriv(psi) / r**2
        return g

    def walls(self, s):
        native = self._to_native(s)
        return dict(self.profile.walls(native.q[1]))


class _EvansPotential(Potential):
    """Evans family V_i = W(psi1, psi2) / r^2 in spherical-cylindrical E^4.

    On the sphere-2 chart the entry evaluates W itself (theta = psi2,
    phi = psi1), which coincides with V on the unit sphere and is the
    potential of the induced S^2 Hamiltonian.
    """

    def __init__(self, pid, params, profile: AngularProfile):
        super().__init__(pid, params, SPHERICAL_CYLINDRICAL_N,
                         frozenset({SPHERICAL_CYLINDRICAL_N, ORTHOGONAL_Z, SPHERE_2}))
        self.profile = profile

    def _native_charts(self):
        return (SPHERICAL_CYLINDRICAL_N, SPHERE_2)

    def _angular(self, psi1, psi2):
        """W and its partials (W, W_psi1, W_psi2)."""
        raise NotImplementedError

    def _native_value(self, s):
        if s.chart == SPHERE_2:
            theta, phi = s.q
            return self._angular(phi, theta)[0]
        r = s.q[0]
        return self._angular(s.q[1], s.q[2])[0] / r**2

    def _native_gradient(self, s):
        if s.chart == SPHERE_2:
            theta, phi = s.q
            _, w1, w2 = self._angular(phi, theta)
            return np.array([w2, w1])
        r = s.q[0]
        w, w1, w2 = self._angular(s.q[1], s.q[2])
        return np.array([-2.0 * w / r**3, w1 / r**2, w2 / r**2, 0.0])

    def _wall_angles(self, s):
        native = self._to_native(s)
        if native.chart == SPHERE_2:
            return native.q[1], native.q[0]
        return native.q[1], native.q[2]


class _Evans1(_EvansPotential):
    def _angular(self, psi1, psi2):
        s2 = _guard("sin(psi2)", math.sin(psi2))
        f = self.profile(psi1)
        return (f / s2**2, self.profile.deriv(psi1) / s2**2,
                -2.0 * f * math.cos(psi2) / s2**3)

    def walls(self, s):
        psi1, psi2 = self._wall_angles(s)
        return {"sin(psi2)": math.sin(psi2), **self.profile.walls(psi1)}


class _Evans2(_EvansPotential):
    def _angular(self, psi1, psi2):
        k = self.params["k"]
        s2 = _guard("sin(psi2)", math.sin(psi2))
        c2 = _guard("cos(psi2)", math.cos(psi2))
        f = self.profile(psi1)
        w = k / c2**2 + f / s2**2
        w2 = 2.0 * k * s2 / c2**3 - 2.0 * f * c2 / s2**3
        return (w, self.profile.deriv(psi1) / s2**2, w2)

    def walls(self, s):
        psi1, psi2 = self._wall_angles(s)
        return {"sin(psi2)": math.sin(psi2), "cos(psi2)": math.cos(psi2),
                **self.profile.walls(psi1)}


class _Evans3(_EvansPotential):
    def _angular(self, psi1, psi2):
        k = self.params["k"]
        s2 = _guard("sin(psi2)", math.sin(psi2))
        c2 = math.cos(psi2)
        f = self.profile(psi1)
        w = (k * c2 + f) / s2**2
        w2 = -k / s2 - 2.0 * (k * c2 + f) * c2 / s2**3
        return (w, self.profile.deriv(psi1) / s2**2, w2)

    def walls(self, s):
        psi1, psi2 = self._wall_angles(s)
        return {"sin(psi2)": math.sin(psi2), **self.profile.walls(psi1)}


class _Evans4(_EvansPotential):
    def _angular(self, psi1, psi2):
        p = self.params
        k, k1, k2, k3 = p["k"], p["k1"], p["k2"], p["k3"]
        s2 = _guard("sin(psi2)", math.sin(psi2))
        c2 = _guard("cos(psi2)", math.cos(psi2))
        s1 = _guard("sin(psi1)", math.sin(psi1))
        c1 = _guard("cos(psi1)", math.cos(psi1))
        inner = k2 / c1**2 + k3 / s1**2
        w = k * (k + k1 / c2**2 + inner / s2**2)
        w1 = k * (2.0 * k2 * s1 / c1**3 - 2.0 * k3 * c1 / s1**3) / s2**2
        w2 = k * (2.0 * k1 * s2 / c2**3 - 2.0 * inner * c2 / s2**3)
        return (w, w1, w2)

    def walls(self, s):
        psi1, psi2 = self._wall_angles(s)
        return {"sin(psi2)": math.sin(psi2), "cos(psi2)": math.cos(psi2),
                "sin(psi1)": math.sin(psi1), "cos(psi1)": math.cos(psi1)}


class _PlatonicPotential(Potential):
    """V = 1 / f_i on the unit sphere (the r^2 V form of the E^3 potential)."""

    def __init__(self, pid, params, index):
        super().__init__(pid, params, SPHERE_2, frozenset({SPHERE_2}))
        self.index = index

    def _native_value(self, s):
        theta, psi = s.q
        for name, w in _platonic_walls(self.index, theta, psi).items():
            _guard(name, w)
        return 1.0 / platonic_f(self.index, theta, psi)

    def _native_gradient(self, s):
        theta, psi = s.q
        for name, w in _platonic_walls(self.index, theta, psi).items():
            _guard(name, w)
        f = platonic_f(self.index, theta, psi)
        gt, gp = platonic_f_gradient(self.index, theta, psi)
        return np.array([-gt / f**2, -gp / f**2])

    def walls(self, s):
        theta, psi = self._to_native(s).q
        return {k: float(v) for k, v in _platonic_walls(self.index, theta, psi).items()}


class _HiggsCuboctahedral(Potential):
    """Four-center Higgs oscillator on the sphere (cuboctahedron vertices).

    Evaluated through t = cot^2(theta) so the equator is regular; the raw
    form divides by tan^2(theta) which overflows there.
    """

    def __init__(self, params):
        super().__init__("higgs-cuboctahedral", params, SPHERE_2,
                         frozenset({SPHERE_2}))

    def _pieces(self, theta, phi):
        g = self.params["g"]
        st = _guard("sin(theta)", math.sin(theta))
        ct = math.cos(theta)
        c4, s4 = math.cos(4 * phi), math.sin(4 * phi)
        _guard("1 + cos(4 phi)", 1.0 + c4)
        t = (ct / st) ** 2
        e = 1.0 - 8.0 * t + 8.0 * t * t - c4
        _guard("higgs denominator", e)
        return g, st, ct, c4, s4, t, e

    def _native_value(self, s):
        theta, phi = s.q
        g, st, ct, c4, s4, t, e = self._pieces(theta, phi)
        total = (1.0 / (1.0 + c4)
                 + (1.0 - 6.0 * t) / e
                 + 4.0 * t * (1.0 - 16.0 * t + 16.0 * t * t) / e**2)
        return 4.0 * g / st**2 * total

    def _native_gradient(self, s):
        theta, phi = s.q
        g, st, ct, c4, s4, t, e = self._pieces(theta, phi)
        tp = -2.0 * ct / st**3                      # dt/dtheta
        e_t = (-8.0 + 16.0 * t) * tp
        e_p = 4.0 * s4
        a = 1.0 / (1.0 + c4)
        a_p = 4.0 * s4 / (1.0 + c4) ** 2
        b = (1.0 - 6.0 * t) / e
        b_t = (-6.0 * tp * e - (1.0 - 6.0 * t) * e_t) / e**2
        b_p = -(1.0 - 6.0 * t) * e_p / e**2
        n = t - 16.0 * t * t + 16.0 * t**3
        n_t = (1.0 - 32.0 * t + 48.0 * t * t) * tp
        c = 4.0 * n / e**2
        c_t = 4.0 * (n_t * e - 2.0 * n * e_t) / e**3
        c_p = -8.0 * n * e_p / e**3
        pref = 4.0 * g / st**2
        pref_t = -8.0 * g * ct / st**3
        total = a + b + c
        return np.array([pref_t * total + pref * (b_t + c_t),
                         pref * (a_p + b_p + c_p)])

    def walls(self, s):
        theta, phi = self._to_native(s).q
        st = math.sin(theta)
        ct = math.cos(theta)
        out = {"sin(theta)": st, "1 + cos(4 phi)": 1.0 + math.cos(4 * phi)}
        if st != 0.0:
            t = (ct / st) ** 2
            out["higgs denominator"] = 1.0 - 8.0 * t + 8.0 * t * t - math.cos(4 * phi)
        return out


# -- construction -----------------------------------------------------------

def _need(params, *names):
    missing = [n for n in names if n not in params]
    if missing:
        raise ParameterError(f"missing parameters: {', '.join(missing)}")
    return [float(params[n]) for n in names]


def _rationalize(h) -> tuple[int, int]:
    if isinstance(h, (tuple, list)):
        p, q = int(h[0]), int(h[1])
    else:
        frac = Fraction(h).limit_denominator(1000)
        if float(frac) != float(h):
            raise ParameterError(f"h = {h} is not a small rational")
        p, q = frac.numerator, frac.denominator
    if q < 1 or p < 1:
        raise ParameterError("rational h = p/q needs p >= 1, q >= 1")
    if math.gcd(p, q) != 1:
        raise ParameterError("rational h = p/q must be in lowest terms")
    return p, q


def _evans_profile(params) -> AngularProfile:
    if "F" in params:
        prof = params["F"]
        if not isinstance(prof, AngularProfile):
            raise ParameterError("F must be an AngularProfile")
        return prof
    a = float(params.get("a", 1.0))
    b = float(params.get("b", 1.0))
    return SinSquaredWell(b, 1, 0.0, offset=a)


_CATALOG_DOC = {
    "calogero": ("k", "pairwise 1/X^2 interaction of three points"),
    "wolfes": ("h", "three-body 1/(X_i - X_{i+1})^2 interaction"),
    "sin-family": ("k, n, psi0", "planar k / (r sin(n psi + psi0))^2 wells"),
    "ttw": ("k1, k2, k3, h=p/q", "rational-parameter planar deformation family"),
    "evans-1": ("a, b | F", "F(psi1)/(r sin psi2)^2"),
    "evans-2": ("k, a, b | F", "k/(r cos psi2)^2 + F(psi1)/(r sin psi2)^2"),
    "evans-3": ("k, a, b | F", "(k cos psi2 + F(psi1))/(r sin psi2)^2"),
    "evans-4": ("k, k1, k2, k3", "fully parametric spherical family"),
    "higgs-cuboctahedral": ("g", "four-center Higgs oscillator on S^2"),
    "platonic-1": ("-", "1/f1 on S^2, tetrahedral walls"),
    "platonic-2": ("-", "1/f1^2 on S^2, octahedral walls"),
    "platonic-3": ("-", "1/f3 on S^2, icosahedral walls"),
}


def make_potential(pid: str, **params) -> Potential:
    """Validate parameters and build a catalog potential."""
    if pid == "calogero":
        (k,) = _need(params, "k")
        return _Calogero({"k": k})
    if pid == "wolfes":
        (h,) = _need(params, "h")
        return _Wolfes({"h": h})
    if pid == "sin-family":
        k, n, psi0 = params.get("k"), params.get("n"), params.get("psi0", 0.0)
        if k is None or n is None:
            raise ParameterError("sin-family needs k and n")
        prof = SinSquaredWell(float(k), n, float(psi0))
        return _PlanarRadialPotential(
            "sin-family", {"k": float(k), "n": int(n), "psi0": float(psi0)}, prof)
    if pid == "ttw":
        k1, k2, k3 = _need(params, "k1", "k2", "k3")
        if "h" not in params:
            raise ParameterError("ttw needs h")
        p, q = _rationalize(params["h"])
        prof = TTWAngular(k1, k2, k3, p / q)
        return _PlanarRadialPotential(
            "ttw", {"k1": k1, "k2": k2, "k3": k3, "h_p": p, "h_q": q}, prof)
    if pid in ("evans-1", "evans-2", "evans-3"):
        prof = _evans_profile(params)
        cls = {"evans-1": _Evans1, "evans-2": _Evans2, "evans-3": _Evans3}[pid]
        stored = {k: v for k, v in params.items() if k != "F"}
        if pid in ("evans-2", "evans-3"):
            (k,) = _need(params, "k")
            stored["k"] = k
        return cls(pid, stored, prof)
    if pid == "evans-4":
        k, k1, k2, k3 = _need(params, "k", "k1", "k2", "k3")
        return _Evans4(pid, {"k": k, "k1": k1, "k2": k2, "k3": k3},
                       ConstantProfile(0.0))
    if pid == "higgs-cuboctahedral":
        (g,) = _need(params, "g")
        return _HiggsCuboctahedral({"g": g})
    if pid in ("platonic-1", "platonic-2", "platonic-3"):
        if params:
            raise ParameterError(f"{pid} takes no parameters")
        return _PlatonicPotential(pid, {}, int(pid[-1]))
    raise ParameterError(f"unknown potential id {pid!r}")


def catalog_ids() -> list[str]:
    return list(_CATALOG_DOC)


def catalog_info() -> dict[str, tuple[str, str]]:
    """id -> (parameter summary, one-line description)."""
    return dict(_CATALOG_DOC)


# ---------------------------------------------------------------------------
# phase/scale fit between line form and planar sin-well form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseConstants:
    phi0: float
    scale: float
    residual: float


def derive_phase_constants(pot_line: Potential, pot_polar: Potential,
                           samples: int = 24, seed: int = 20240915) -> PhaseConstants:
    """Fit (phi0, c) so that the line potential equals c*k/(r sin(n psi + phi0))^2.

    The identity V r^2 sin^2(n psi + phi0) = c k is linear in
    (cos 2phi0, sin 2phi0, c k), so the fit is a plain least-squares solve
    on sampled nonsingular configurations; phi0 comes out modulo pi.
    """
    n = int(pot_polar.params["n"])
    k = float(pot_polar.params["k"])
    rng = np.random.default_rng(seed)

    rows, rhs, states = [], [], []
    while len(rows) < samples:
        x = np.sort(rng.uniform(-2.0, 2.0, size=3))[::-1]
        if np.min(np.abs(x - np.roll(x, -1))) < 0.3:
            continue
        st = PhaseState(CARTESIAN_LINE, x, np.zeros(3))
        try:
            v = pot_line.value(st)
        except SingularityError:
            continue
        cyl = coords.chart_transform(st, CYLINDRICAL_3)
        r, psi = cyl.q[0], cyl.q[1]
        a = v * r**2
        rows.append([-0.5 * a * math.cos(2 * n * psi),
                     0.5 * a * math.sin(2 * n * psi), -1.0])
        rhs.append(-0.5 * a)
        states.append((v, r, psi))

    sol, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    u, w, ck = sol
    norm = math.hypot(u, w)
    if abs(norm - 1.0) > 1e-6:
        raise ConventionMismatchError(
            f"{pot_line.id} is not of the c*k/(r sin({n} psi + phi0))^2 form")
    phi0 = coords.normalize_angle(0.5 * math.atan2(w, u), math.pi)
    c = ck / k

    resid = 0.0
    for v, r, psi in states:
        fit = c * k / (r * math.sin(n * psi + phi0)) ** 2
        resid = max(resid, abs(v - fit) / (1.0 + abs(v)))
    if resid > 1e-9:
        raise ConventionMismatchError(
            f"phase fit residual {resid:.3e} exceeds 1e-9 for {pot_line.id}")
    return PhaseConstants(phi0, c, resid)


def ttw_half_angle(pot: Potential, s: PhaseState) -> float:
    """TTW value through the double-angle rewrite.

    (1/r^2) [k1 + 2((k2+k3) + (k3-k2) cos 2h psi) / sin^2 2h psi];
    equal to the direct form wherever both are defined.
    """
    if pot.id != "ttw":
        raise ParameterError("ttw_half_angle expects a ttw potential")
    s.require_chart(POLAR_2, CYLINDRICAL_3)
    r, psi = s.q[0], s.q[1]
    p = pot.params
    h = p["h_p"] / p["h_q"]
    s2h = _guard("sin(2 h psi)", math.sin(2 * h * psi))
    num = (p["k2"] + p["k3"]) + (p["k3"] - p["k2"]) * math.cos(2 * h * psi)
    return (p["k1"] + 2.0 * num / s2h**2) / r**2
