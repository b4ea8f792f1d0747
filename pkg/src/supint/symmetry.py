"""Finite orthogonal symmetry groups and invariance checks.

Dihedral prism groups act on the plane transverse to the center-of-mass
axis; the Platonic rotation groups act on E^3.  Groups are generated by
floating-point closure with a matrix-distance dedup (1e-9): group orders
are small and exact, so any drift past the tolerance is a generator bug,
which the closure cap turns into a loud error.

Orientation conventions: tetra/octa are aligned with the coordinate axes
(the xyz invariant frame); icosa has a 5-fold axis along z and a 2-fold
axis in the xz-plane, which is the orientation the dodecahedral surface
invariant with the cos(5 psi) azimuthal structure belongs to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ClosureError, ParameterError, SingularityError

__all__ = [
    "GroupElement",
    "FiniteGroup",
    "close_group",
    "dihedral_group",
    "platonic_group",
    "check_invariance",
    "permutation_isometry",
]

_DEDUP_TOL = 1e-9


@dataclass(frozen=True)
class GroupElement:
    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("group element must be a square matrix")
        if np.max(np.abs(m @ m.T - np.eye(m.shape[0]))) > 1e-12:
            raise ValueError("group element must be orthogonal")

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix)

    def __repr__(self):
        return f"GroupElement({np.array_str(np.round(self.matrix, 12))}, {self.label!r})"


@dataclass(frozen=True)
class FiniteGroup:
    elements: tuple[GroupElement, ...]
    generators: tuple[GroupElement, ...] = field(default=())

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].matrix.shape[0]

    def contains(self, m: np.ndarray, tol: float = _DEDUP_TOL) -> bool:
        return any(np.max(np.abs(e.matrix - m)) < tol for e in self.elements)


def close_group(generators: list[GroupElement], expected_order: int | None = None,
                tol: float = _DEDUP_TOL) -> FiniteGroup:
    """Generate the closure of a generator list under multiplication.

    With `expected_order` given, exceeding it aborts immediately: finite
    orthogonal groups of the catalog close exactly, so overshoot means the
    generators (or the tolerance) are wrong.
    """
    dim = generators[0].matrix.shape[0]
    elements: list[GroupElement] = [GroupElement(np.eye(dim), "e")]
    cap = None if expected_order is None else 10 * expected_order

    def known(m):
        return any(np.max(np.abs(e.matrix - m)) < tol for e in elements)

    frontier = [g for g in generators if not known(g.matrix)]
    elements.extend(frontier)
    products = 0
    while frontier:
        fresh = []
        for g in frontier:
            for e in list(elements):
                for m in (g.matrix @ e.matrix, e.matrix @ g.matrix):
                    products += 1
                    if cap is not None and products > cap * len(elements):
                        raise ClosureError(
                            f"closure exceeded {cap} products per element")
                    if not known(m):
                        el = GroupElement(m)
                        elements.append(el)
                        fresh.append(el)
                if expected_order is not None and len(elements) > expected_order:
                    raise ClosureError(
                        f"closure produced more than {expected_order} elements")
        frontier = fresh
    return FiniteGroup(tuple(elements), tuple(generators))


def _rot2(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def _reflection2(axis_angle: float) -> np.ndarray:
    c, s = math.cos(2 * axis_angle), math.sin(2 * axis_angle)
    return np.array([[c, s], [s, -c]])


def _rot3(axis, angle: float) -> np.ndarray:
    a = np.asarray(axis, float)
    a = a / np.linalg.norm(a)
    k = np.array([[0, -a[2], a[1]], [a[2], 0, -a[0]], [-a[1], a[0], 0]])
    return np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)


def dihedral_group(n: int, phase: float = 0.0) -> FiniteGroup:
    """Symmetries of the 2n-sided prism cross-section: order 4n.

    Rotations by multiples of pi/n plus reflections; the reflection axes
    are anchored at angle -phase/n so that sin^2(n psi + phase) wells are
    invariant under the whole group.
    """
    if int(n) != n or n < 1:
        raise ParameterError("dihedral index n must be a positive integer")
    gens = [GroupElement(_rot2(math.pi / n), "r"),
            GroupElement(_reflection2(-phase / n), "s")]
    return close_group(gens, expected_order=4 * n)


_PLATONIC_ORDERS = {"tetra": 12, "octa": 24, "icosa": 60}


def platonic_group(kind: str) -> FiniteGroup:
    """Rotation group of a Platonic solid: tetra (12), octa (24), icosa (60)."""
    if kind == "tetra":
        gens = [GroupElement(_rot3([1, 1, 1], 2 * math.pi / 3), "c3"),
                GroupElement(_rot3([0, 0, 1], math.pi), "c2")]
    elif kind == "octa":
        gens = [GroupElement(_rot3([1, 1, 1], 2 * math.pi / 3), "c3"),
                GroupElement(_rot3([0, 0, 1], math.pi / 2), "c4")]
    elif kind == "icosa":
        # vertex along z; edge midpoints sit at half the vertex colatitude
        beta = 0.5 * math.atan(2.0)
        gens = [GroupElement(_rot3([0, 0, 1], 2 * math.pi / 5), "c5"),
                GroupElement(_rot3([math.sin(beta), 0, math.cos(beta)], math.pi), "c2")]
    else:
        raise ParameterError(f"unknown platonic kind {kind!r}")
    return close_group(gens, expected_order=_PLATONIC_ORDERS[kind])


def check_invariance(f, group: FiniteGroup, samples: int = 100,
                     seed: int = 0) -> float:
    """Max relative residual |f(Rx) - f(x)| / (1 + |f(x)|) over random unit x.

    Samples where f is singular are redrawn (up to 50x oversampling);
    persistent failure raises the underlying singularity.
    """
    rng = np.random.default_rng(seed)
    dim = group.dim
    worst = 0.0
    accepted = 0
    attempts = 0
    while accepted < samples:
        if attempts > 50 * samples:
            raise SingularityError("invariance sampling", 0.0)
        attempts += 1
        x = rng.normal(size=dim)
        x /= np.linalg.norm(x)
        try:
            base = f(x)
            for e in group.elements:
                val = f(e.matrix @ x)
                worst = max(worst, abs(val - base) / (1.0 + abs(base)))
        except (SingularityError, ZeroDivisionError):
            continue
        accepted += 1
    return worst


def permutation_isometry(sigma, n: int | None = None) -> GroupElement:
    """Isometry of the relative-coordinate space induced by a particle relabeling.

    sigma lists images: particle j goes to slot sigma[j] (0-based).  The
    permutation matrix conjugated by the orthogonal line-to-z map fixes the
    center-of-mass axis, and the returned element is the block acting on
    the first n-1 z-coordinates.  The map sigma -> element is a group
    homomorphism; for n = 3 the image of S_3 is the 2-d dihedral group of
    order 6.
    """
    from .coords import helmert_matrix

    sigma = tuple(int(i) for i in sigma)
    n = len(sigma) if n is None else n
    if n not in (3, 4):
        raise ParameterError("permutation isometries are built for n in {3, 4}")
    if sorted(sigma) != list(range(n)):
        raise ParameterError(f"{sigma} is not a permutation of 0..{n - 1}")
    perm = np.zeros((n, n))
    for j, img in enumerate(sigma):
        perm[img, j] = 1.0
    m = helmert_matrix(n)
    conj = m @ perm @ m.T
    # bottom-right block must be the untouched center-of-mass direction
    if abs(conj[n - 1, n - 1] - 1.0) > 1e-12:
        raise ClosureError("permutation failed to fix the center-of-mass axis")
    return GroupElement(conj[: n - 1, : n - 1], label=str(sigma))
