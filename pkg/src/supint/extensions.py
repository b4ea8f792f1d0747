"""Extended Hamiltonians on u x Q and their ladder first integrals.

A base natural Hamiltonian L on a constant-curvature surface (or line)
extends to H = 1/2 p_u^2 + alpha(u) L, with alpha fixed by the curvature:
-kappa for the flat case and K / S_kappa^2(c u + u0) otherwise, where
S_kappa is the curvature-parametrized sine.  The extension carries a
first integral obtained by m-fold application of U = p_u + gamma(u) X_L
to a seed function of the base coordinates; X_L is the Hamiltonian
derivation of L.  p_u and gamma(u) are constants for X_L, so U^m expands
binomially and only iterated X_L applications need jet bookkeeping.

The residual operators embody the structural conditions a pair (V, G)
must satisfy for such an extension to exist: the Hessian condition
Hess(G) + K g G = 0 and the gradient condition grad V . grad G = 2 K V G.
Both return plain numbers; thresholds live with the callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coords import POLAR_2, PhaseState
from .errors import ParameterError, SingularChartError, SingularityError
from .integrals import PhaseFunction
from .jets import Jet, jet_cos, jet_variable
from .potentials import AngularProfile

__all__ = [
    "CurvedChart",
    "EUCLIDEAN_2",
    "SPHERE_CHART",
    "s_kappa",
    "hessian_residual",
    "vteo_residual",
    "christoffel_consistency",
    "ExtensionSpec",
    "ExtendedHamiltonian",
    "extend_hamiltonian",
    "CosineSeed",
    "build_U_ladder",
]

# treat |kappa| at or below this as the flat branch; keeps the branch
# function continuous through kappa = 0 at the 1e-7 level
_KAPPA_CUTOFF = 1e-8


def s_kappa(kappa: float, x: float) -> float:
    """Curvature-parametrized sine: sin, identity or sinh by sign of kappa."""
    if abs(kappa) <= _KAPPA_CUTOFF:
        return x
    if kappa > 0:
        rk = math.sqrt(kappa)
        return math.sin(rk * x) / rk
    rk = math.sqrt(-kappa)
    return math.sinh(rk * x) / rk


class CurvedChart:
    """Two-dimensional chart with closed-form metric and Christoffel symbols."""

    def __init__(self, tag: str, curvature: float):
        self.tag = tag
        self.curvature = float(curvature)

    def metric(self, q) -> np.ndarray:
        raise NotImplementedError

    def inverse_metric(self, q) -> np.ndarray:
        raise NotImplementedError

    def christoffel(self, q) -> np.ndarray:
        """Gamma[k, i, j] with the upper index first."""
        raise NotImplementedError


class _Euclidean2(CurvedChart):
    def __init__(self):
        super().__init__("euclidean-2", 0.0)

    def metric(self, q):
        return np.eye(2)

    def inverse_metric(self, q):
        return np.eye(2)

    def christoffel(self, q):
        return np.zeros((2, 2, 2))


class _Sphere2(CurvedChart):
    """Unit sphere in (theta, phi), metric diag(1, sin^2 theta)."""

    def __init__(self):
        super().__init__("sphere-2", 1.0)

    def _sin(self, q):
        s = math.sin(q[0])
        if abs(s) < 1e-12:
            raise SingularChartError("sphere chart singular at the poles")
        return s

    def metric(self, q):
        s = self._sin(q)
        return np.diag([1.0, s * s])

    def inverse_metric(self, q):
        s = self._sin(q)
        return np.diag([1.0, 1.0 / (s * s)])

    def christoffel(self, q):
        s = self._sin(q)
        c = math.cos(q[0])
        gamma = np.zeros((2, 2, 2))
        gamma[0, 1, 1] = -s * c
        gamma[1, 0, 1] = gamma[1, 1, 0] = c / s
        return gamma


EUCLIDEAN_2 = _Euclidean2()
SPHERE_CHART = _Sphere2()

_H2 = math.sqrt(np.finfo(float).eps)  # first-derivative step scale
_H4 = np.finfo(float).eps ** 0.25     # second-derivative step scale


def _grad_fd(f: Callable, q: np.ndarray) -> np.ndarray:
    out = np.empty(q.size)
    for i in range(q.size):
        h = _H2 * (1.0 + abs(q[i]))
        e = np.zeros(q.size)
        e[i] = h
        out[i] = (f(q + e) - f(q - e)) / (2 * h)
    return out


def _hess_fd(f: Callable, q: np.ndarray) -> np.ndarray:
    n = q.size
    out = np.empty((n, n))
    f0 = f(q)
    steps = [_H4 * (1.0 + abs(q[i])) for i in range(n)]
    for i in range(n):
        e = np.zeros(n)
        e[i] = steps[i]
        out[i, i] = (f(q + e) - 2 * f0 + f(q - e)) / steps[i] ** 2
    for i in range(n):
        for j in range(i + 1, n):
            ei = np.zeros(n)
            ej = np.zeros(n)
            ei[i] = steps[i]
            ej[j] = steps[j]
            out[i, j] = out[j, i] = (
                f(q + ei + ej) - f(q + ei - ej) - f(q - ei + ej) + f(q - ei - ej)
            ) / (4 * steps[i] * steps[j])
    return out


def hessian_residual(G: Callable, chart: CurvedChart, q) -> float:
    """Max-norm of Hess(G) + K g G at the point q.

    Functions in the kernel of this operator are exactly the admissible
    extension seeds on the chart; on the sphere that is the span of the
    three ambient coordinate restrictions.
    """
    q = np.asarray(q, float)
    grad = _grad_fd(G, q)
    hess = _hess_fd(G, q)
    gamma = chart.christoffel(q)
    cov = hess - np.tensordot(gamma, grad, axes=([0], [0]))
    residual = cov + chart.curvature * chart.metric(q) * G(q)
    return float(np.max(np.abs(residual)))


def vteo_residual(V: Callable, G: Callable, K: float, chart: CurvedChart, q) -> float:
    """grad V . grad G - 2 K V G, gradients contracted with the chart metric."""
    q = np.asarray(q, float)
    gv = _grad_fd(V, q)
    gg = _grad_fd(G, q)
    dot = float(gv @ chart.inverse_metric(q) @ gg)
    return dot - 2.0 * K * V(q) * G(q)


def christoffel_consistency(chart: CurvedChart, q) -> float:
    """Residual between closed-form Christoffels and metric derivatives."""
    q = np.asarray(q, float)
    n = q.size
    dg = np.empty((n, n, n))  # dg[l, i, j] = d g_ij / d q^l
    for l in range(n):
        h = _H2 * (1.0 + abs(q[l]))
        e = np.zeros(n)
        e[l] = h
        dg[l] = (chart.metric(q + e) - chart.metric(q - e)) / (2 * h)
    ginv = chart.inverse_metric(q)
    gamma = np.zeros((n, n, n))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                acc = 0.0
                for l in range(n):
                    acc += ginv[k, l] * (dg[i, l, j] + dg[j, l, i] - dg[l, i, j])
                gamma[k, i, j] = 0.5 * acc
    return float(np.max(np.abs(gamma - chart.christoffel(q))))


# ---------------------------------------------------------------------------
# the extension Hamiltonian and its ladder
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionSpec:
    """Extension data: base Hamiltonian plus curvature and branch constants.

    `base` maps (q, p) arrays of the base manifold to the value of L.
    `c` defaults to K/m, the coupling of the classification; the concrete
    planar systems use c = 1, so it stays overridable.
    """

    base: Callable[[np.ndarray, np.ndarray], float]
    curvature: float
    kappa: float
    u0: float = 0.0
    m: int = 1
    c: float | None = None
    gamma: Callable[[float], float] | None = None

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ParameterError("ladder exponent m must be a positive integer")

    @property
    def coupling(self) -> float:
        if self.c is not None:
            return self.c
        if self.curvature == 0.0:
            return 1.0
        return self.curvature / self.m


class ExtendedHamiltonian(PhaseFunction):
    """1/2 p_u^2 + alpha(u) L on states with q = (u, base q), p likewise."""

    def __init__(self, spec: ExtensionSpec):
        self.spec = spec
        self.name = "H_ext"
        self.degree = None

    def coefficient(self, u: float) -> float:
        sp = self.spec
        if sp.curvature == 0.0:
            return -sp.kappa
        s = s_kappa(sp.kappa, sp.coupling * u + sp.u0)
        if s == 0.0:
            raise SingularityError("S_kappa(c u + u0)", s)
        return sp.curvature / (s * s)

    def __call__(self, s: PhaseState) -> float:
        u, pu = s.q[0], s.p[0]
        lval = self.spec.base(s.q[1:], s.p[1:])
        return 0.5 * pu * pu + self.coefficient(u) * lval


def extend_hamiltonian(spec: ExtensionSpec) -> ExtendedHamiltonian:
    return ExtendedHamiltonian(spec)


class CosineSeed(AngularProfile):
    """cos(n psi + psi0), the seed the planar ladder grows from."""

    def __init__(self, n: int, psi0: float = 0.0):
        self.n = int(n)
        self.psi0 = float(psi0)

    def __call__(self, psi):
        return math.cos(self.n * psi + self.psi0)

    def deriv(self, psi):
        return -self.n * math.sin(self.n * psi + self.psi0)

    def jet(self, psi, order):
        return jet_cos(jet_variable(psi, order) * self.n + self.psi0)


class ULadder(PhaseFunction):
    """m-fold application of p_u + gamma(u) X_L to a seed G(q).

    Works over a one-dimensional flat base L = 1/2 p^2 + V(q).  The
    operator ordering is fixed by requiring agreement with the planar
    ladder: momentum factors multiply, the derivation acts on everything
    to its right, and both commute because X_L touches only the base.
    """

    def __init__(self, seed: AngularProfile, gamma: Callable[[float], float],
                 m: int, base_profile: AngularProfile):
        self.seed = seed
        self.gamma = gamma
        self.m = int(m)
        self.base_profile = base_profile
        self.name = f"U^{self.m}(G)"
        self.degree = self.m

    def _xl_powers(self, psi: float) -> list[dict[int, Jet]]:
        """[X_L^j G for j = 0..m] as maps p-degree -> jet coefficient."""
        m = self.m
        out = [{0: self.seed.jet(psi, m)}]
        vprime = None
        for _ in range(m):
            cur = out[-1]
            nxt: dict[int, Jet] = {}

            def add(b, jet):
                nxt[b] = nxt[b] + jet if b in nxt else jet

            for b, coeff in cur.items():
                add(b + 1, coeff.derivative())
                if b:
                    if vprime is None:
                        vprime = self.base_profile.jet(psi, m).derivative()
                    add(b - 1, vprime * coeff * (-b))
            out.append(nxt)
        return out

    def __call__(self, s: PhaseState) -> float:
        u, psi = s.q[0], s.q[1]
        pu, pp = s.p[0], s.p[1]
        powers = self._xl_powers(psi)
        g = self.gamma(u)
        total = 0.0
        for j in range(self.m + 1):
            base_val = sum(coeff.value() * pp**b for b, coeff in powers[j].items())
            total += math.comb(self.m, j) * pu ** (self.m - j) * g**j * base_val
        return total


def build_U_ladder(seed: AngularProfile, gamma: Callable[[float], float],
                   m: int, base_profile: AngularProfile) -> ULadder:
    """Generic ladder U^m(G) over a one-dimensional base Hamiltonian.

    With seed cos(n psi + psi0), gamma(u) = 1/(n u) and the matching
    sin-well base this reproduces `build_ladder_integral` evaluation for
    evaluation, by a different route (binomial expansion vs iterated
    operator), which is what makes the pair a useful cross-check.
    """
    if int(m) != m or m < 1 or m > 8:
        raise ParameterError("ladder exponent m must be an integer in [1, 8]")
    return ULadder(seed, gamma, m, base_profile)


def planar_extension(profile: AngularProfile) -> ExtendedHamiltonian:
    """The concrete planar case: u = r, L = 1/2 p_psi^2 + F(psi), alpha = 1/r^2."""

    def base(q, p):
        return 0.5 * p[0] ** 2 + profile(q[0])

    return extend_hamiltonian(
        ExtensionSpec(base=base, curvature=1.0, kappa=0.0, u0=0.0, m=1, c=1.0))
