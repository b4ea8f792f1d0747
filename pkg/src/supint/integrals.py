"""First integrals: the quadratic families, the degree-n ladder, brackets.

The ladder integral is built by n-fold application of the first-order
operator

    A = p_r + (1/(n r)) (p_psi d/dpsi - F'(psi) d/dp_psi)

to the seed cos(n psi + psi0).  The working representation is a polynomial
in (p_r, p_psi) with exact integer powers of 1/r and coefficients carried
as psi-jets at the evaluation point, so every psi-derivative the operator
takes is exact; the only numerical error left is roundoff.  A fresh jet
expansion is built per evaluation state, which keeps the result a smooth
function of the state (finite-difference brackets stay clean).

The quadratic sets are plain closures over the chart coordinates; their
conservation is checked numerically through `poisson_bracket`, a central
difference bracket with one Richardson level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coords import (CYLINDRICAL_3, POLAR_2, SPHERE_2,
                     SPHERICAL_CYLINDRICAL_N, PhaseState)
from .errors import ChartMismatchError, ParameterError
from .jets import jet_cos, jet_variable
from .jets import jet_elementary  # noqa: F401  (part of this module's API)
from .potentials import AngularProfile, Potential

__all__ = [
    "PhaseFunction",
    "FunctionIntegral",
    "LadderIntegral",
    "StandardIntegralSet",
    "build_ladder_integral",
    "standard_integrals",
    "radial_hamiltonian",
    "three_body_hamiltonian",
    "eval_phase_function",
    "poisson_bracket",
    "jet_elementary",
]


class PhaseFunction:
    """Evaluable scalar function on phase space."""

    name: str = "phase function"
    degree: int | None = None  # polynomial degree in the momenta, if known
    charts: tuple[str, ...] = ()

    def __call__(self, s: PhaseState) -> float:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class FunctionIntegral(PhaseFunction):
    def __init__(self, name, fn, charts=(), degree=None):
        self.name = name
        self._fn = fn
        self.charts = tuple(charts)
        self.degree = degree

    def __call__(self, s: PhaseState) -> float:
        if self.charts and s.chart not in self.charts:
            raise ChartMismatchError(
                f"{self.name} expects chart in {self.charts}, got {s.chart}")
        return float(self._fn(s))


class LadderIntegral(PhaseFunction):
    """Degree-n polynomial first integral of the planar sin-well Hamiltonian."""

    charts = (POLAR_2, CYLINDRICAL_3)

    def __init__(self, n: int, profile: AngularProfile, psi0: float):
        self.n = int(n)
        self.profile = profile
        self.psi0 = float(psi0)
        self.degree = self.n
        self.name = f"L{self.n}"

    def momentum_terms(self, psi: float) -> dict[tuple[int, int, int], float]:
        """Coefficients of p_r^a p_psi^b r^(-c) at angle psi."""
        n = self.n
        seed = jet_cos(jet_variable(psi, n) * n + self.psi0)
        fprime = None  # profile may be singular at psi; only expand if used
        inv_n = 1.0 / n
        terms = {(0, 0, 0): seed}
        for _ in range(n):
            new = {}

            def add(key, jet):
                new[key] = new[key] + jet if key in new else jet

            for (a, b, c), coeff in terms.items():
                add((a + 1, b, c), coeff)
                add((a, b + 1, c + 1), coeff.derivative() * inv_n)
                if b:
                    if fprime is None:
                        fprime = self.profile.jet(psi, n).derivative()
                    add((a, b - 1, c + 1), fprime * coeff * (-b * inv_n))
            terms = new
        return {key: jet.value() for key, jet in terms.items()}

    def __call__(self, s: PhaseState) -> float:
        if s.chart not in self.charts:
            raise ChartMismatchError(
                f"{self.name} expects a polar or cylindrical state, got {s.chart}")
        r, psi = s.q[0], s.q[1]
        pr, ppsi = s.p[0], s.p[1]
        if r <= 0.0:
            raise ValueError("radial coordinate must be positive")
        total = 0.0
        for (a, b, c), coef in self.momentum_terms(psi).items():
            total += coef * pr**a * ppsi**b / r**c
        return total


def build_ladder_integral(n: int, profile: AngularProfile,
                          psi0: float = 0.0) -> LadderIntegral:
    if int(n) != n or n < 1 or n > 16:
        raise ParameterError("ladder degree n must be an integer in [1, 16]")
    return LadderIntegral(n, profile, psi0)


def eval_phase_function(pf: PhaseFunction, s: PhaseState) -> float:
    return pf(s)


# ---------------------------------------------------------------------------
# quadratic integral sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StandardIntegralSet:
    system: str
    chart: str
    members: tuple[PhaseFunction, ...]

    @property
    def hamiltonian(self) -> PhaseFunction:
        return self.members[0]

    def named(self, name: str) -> PhaseFunction:
        for m in self.members:
            if m.name == name:
                return m
        raise KeyError(name)


def radial_hamiltonian(profile: AngularProfile) -> FunctionIntegral:
    """Planar Hamiltonian 1/2 (p_r^2 + p_psi^2/r^2) + F(psi)/r^2."""

    def h(s):
        r, psi = s.q[0], s.q[1]
        return 0.5 * (s.p[0] ** 2 + s.p[1] ** 2 / r**2) + profile(psi) / r**2

    return FunctionIntegral("H_planar", h, charts=(POLAR_2,), degree=2)


def three_body_hamiltonian(profile: AngularProfile) -> FunctionIntegral:
    def h(s):
        r, psi = s.q[0], s.q[1]
        return (0.5 * (s.p[0] ** 2 + s.p[1] ** 2 / r**2 + s.p[2] ** 2)
                + profile(psi) / r**2)

    return FunctionIntegral("H", h, charts=(CYLINDRICAL_3,), degree=2)


def _three_body_set(profile: AngularProfile) -> StandardIntegralSet:
    def h1(s):
        return 0.5 * s.p[1] ** 2 + profile(s.q[1])

    def h2(s):
        return 0.5 * s.p[2] ** 2

    def h3(s):
        r, u = s.q[0], s.q[2]
        return 0.5 * (r * s.p[2] - u * s.p[0]) ** 2 + (u / r) ** 2 * h1(s)

    charts = (CYLINDRICAL_3,)
    return StandardIntegralSet(
        "three-body", CYLINDRICAL_3,
        (three_body_hamiltonian(profile),
         FunctionIntegral("H1", h1, charts, 2),
         FunctionIntegral("H2", h2, charts, 2),
         FunctionIntegral("H3", h3, charts, 2)))


def _evans_angular(pot: Potential):
    """W(psi1, psi2) = r^2 V through the entry's unit-sphere restriction."""

    def w(psi1, psi2):
        return pot.value(PhaseState(SPHERE_2, [psi2, psi1], [0.0, 0.0]))

    return w


def _evans_extras(pot: Potential) -> tuple[PhaseFunction, ...]:
    """The two extra quadratic integrals, prewired where the closed form
    is classical: azimuthal separation constant plus the z-translation,
    z-Kepler or parabolic constant depending on the family member."""
    profile = getattr(pot, "profile", None)
    if profile is None or pot.id not in ("evans-1", "evans-2", "evans-3"):
        return ()

    def j1(s):
        return 0.5 * s.p[1] ** 2 + profile(s.q[1])

    def pz(s):
        r, psi2 = s.q[0], s.q[2]
        return math.cos(psi2) * s.p[0] - math.sin(psi2) * s.p[2] / r

    first = FunctionIntegral("J1", j1, (SPHERICAL_CYLINDRICAL_N,), 2)

    if pot.id == "evans-1":
        def j2(s):
            return 0.5 * pz(s) ** 2

        return (first, FunctionIntegral("J2", j2, (SPHERICAL_CYLINDRICAL_N,), 2))

    if pot.id == "evans-2":
        k = pot.params["k"]

        def j2(s):
            z = s.q[0] * math.cos(s.q[2])
            return 0.5 * pz(s) ** 2 + k / z**2

        return (first, FunctionIntegral("J2", j2, (SPHERICAL_CYLINDRICAL_N,), 2))

    # evans-3 separates in rotational parabolic coordinates; the constant of
    # separation is quadratic in the momenta
    k = pot.params["k"]
    w = _evans_angular(pot)

    def h3d(s):
        r, psi1, psi2 = s.q[0], s.q[1], s.q[2]
        t = 0.5 * (s.p[0] ** 2 + s.p[2] ** 2 / r**2
                   + s.p[1] ** 2 / (r * math.sin(psi2)) ** 2)
        return t + w(psi1, psi2) / r**2

    def j2(s):
        r, psi1, psi2 = s.q[0], s.q[1], s.q[2]
        z = r * math.cos(psi2)
        xi, eta = r + z, r - z
        prho = math.sin(psi2) * s.p[0] + math.cos(psi2) * s.p[2] / r
        pxi = 0.5 * (math.sqrt(eta / xi) * prho + pz(s))
        return (2.0 * xi * pxi**2
                + (0.5 * s.p[1] ** 2 + profile(psi1) - k) / xi
                - xi * h3d(s))

    return (first, FunctionIntegral("J2", j2, (SPHERICAL_CYLINDRICAL_N,), 2))


def _evans_4d_set(pot: Potential,
                  extras: tuple[PhaseFunction, ...] | None) -> StandardIntegralSet:
    w = _evans_angular(pot)
    charts = (SPHERICAL_CYLINDRICAL_N,)

    def h1(s):
        psi1, psi2 = s.q[1], s.q[2]
        return (0.5 * (s.p[2] ** 2 + s.p[1] ** 2 / math.sin(psi2) ** 2)
                + w(psi1, psi2))

    def h4(s):
        r = s.q[0]
        return (0.5 * (s.p[0] ** 2 + s.p[2] ** 2 / r**2
                       + s.p[1] ** 2 / (r * math.sin(s.q[2])) ** 2 + s.p[3] ** 2)
                + w(s.q[1], s.q[2]) / r**2)

    def h5(s):
        return s.p[3] ** 2

    def h6(s):
        r, u = s.q[0], s.q[3]
        return 0.5 * (u * s.p[0] - r * s.p[3]) ** 2 + (u / r) ** 2 * h1(s)

    if extras is None:
        extras = _evans_extras(pot)
    members = (FunctionIntegral("H", h4, charts, 2),
               FunctionIntegral("H1", h1, charts, 2),
               *extras,
               FunctionIntegral("H5", h5, charts, 2),
               FunctionIntegral("H6", h6, charts, 2))
    return StandardIntegralSet("evans-4d", SPHERICAL_CYLINDRICAL_N, members)


def standard_integrals(system: str, *, profile: AngularProfile | None = None,
                       potential: Potential | None = None,
                       extras: tuple[PhaseFunction, ...] | None = None
                       ) -> StandardIntegralSet:
    """Named quadratic first integrals of a catalog system.

    three-body: needs the angular profile F; returns (H, H1, H2, H3) on the
    cylindrical chart.  evans-4d: needs an evans catalog potential; returns
    (H, H1, extras..., H5, H6) on the spherical-cylindrical chart, with the
    two classical extra integrals prewired for evans-1..3 and overridable
    through `extras`.
    """
    if system == "three-body":
        if profile is None:
            raise ParameterError("three-body needs an angular profile F")
        return _three_body_set(profile)
    if system == "evans-4d":
        if potential is None or not potential.id.startswith("evans"):
            raise ParameterError("evans-4d needs an evans catalog potential")
        return _evans_4d_set(potential, extras)
    raise ParameterError(f"unknown system {system!r}")


# ---------------------------------------------------------------------------
# numerical Poisson bracket
# ---------------------------------------------------------------------------

_FD_STEP = (np.finfo(float).eps) ** (1.0 / 3.0)  # ~ 6.1e-6


def _partials(fn, s: PhaseState) -> np.ndarray:
    """Richardson-extrapolated central differences in all 2k phase variables."""
    k = s.dim
    w = np.concatenate([s.q, s.p])
    out = np.empty(2 * k)

    def value(vec):
        return fn(PhaseState(s.chart, vec[:k], vec[k:]))

    for i in range(2 * k):
        h = _FD_STEP * (1.0 + abs(w[i]))
        e = np.zeros(2 * k)
        e[i] = h
        coarse = (value(w + e) - value(w - e)) / (2 * h)
        fine = (value(w + 0.5 * e) - value(w - 0.5 * e)) / h
        out[i] = (4.0 * fine - coarse) / 3.0
    return out


def poisson_bracket(f, g, s: PhaseState) -> float:
    """{f, g} at s via central differences with one Richardson level.

    Any singularity inside the difference stencil propagates to the caller.
    """
    df = _partials(f, s)
    dg = _partials(g, s)
    k = s.dim
    return float(df[:k] @ dg[k:] - df[k:] @ dg[:k])
