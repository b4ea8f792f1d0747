"""Truncated Taylor series (jets) of one scalar variable.

A jet of order m at an expansion point stores the m+1 Taylor coefficients
c[j] = f^(j)(x0)/j!.  Arithmetic implements the truncated Cauchy product,
series division and composition recurrences for the elementary functions,
so derivatives of composite expressions come out exact to roundoff instead
of carrying finite-difference noise.

Binary operations between jets of different order truncate to the shorter
one: validity can only shrink.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import JetPoleError

__all__ = [
    "Jet",
    "jet_variable",
    "jet_constant",
    "jet_sin",
    "jet_cos",
    "jet_tan",
    "jet_exp",
    "jet_elementary",
]


class Jet:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = np.asarray(coeffs, dtype=float)
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise ValueError("jet coefficients must be a nonempty 1-d array")

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def value(self) -> float:
        """Constant term, i.e. the function value at the expansion point."""
        return float(self.coeffs[0])

    def derivative(self) -> "Jet":
        """Jet of f'; order drops by one. Order-0 jets differentiate to 0."""
        c = self.coeffs
        if c.size == 1:
            return Jet(np.zeros(1))
        k = np.arange(1, c.size)
        return Jet(c[1:] * k)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return None  # scalar fast path
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            c = self.coeffs.copy()
            c[0] += other
            return Jet(c)
        m = min(self.coeffs.size, o.coeffs.size)
        return Jet(self.coeffs[:m] + o.coeffs[:m])

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coeffs)

    def __sub__(self, other):
        return self.__add__(-other if isinstance(other, Jet) else -other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return Jet(self.coeffs * other)
        m = min(self.coeffs.size, o.coeffs.size)
        return Jet(np.convolve(self.coeffs[:m], o.coeffs[:m])[:m])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return Jet(self.coeffs / other)
        return self * o ** (-1)

    def __rtruediv__(self, other):
        return self ** (-1) * other

    def __pow__(self, alpha):
        """Truncated power series of f**alpha.

        Integer alpha ≥ 0 works for any jet; other exponents require a
        nonzero constant term (standard power recurrence).
        """
        if isinstance(alpha, (int, np.integer)) and alpha >= 0:
            if alpha == 0:
                c = np.zeros_like(self.coeffs)
                c[0] = 1.0
                return Jet(c)
            out = self
            for _ in range(int(alpha) - 1):
                out = out * self
            return out
        f = self.coeffs
        if f[0] == 0.0:
            raise JetPoleError(f"jet power {alpha} at a zero of the base")
        m = f.size
        g = np.zeros(m)
        g[0] = f[0] ** alpha
        for k in range(1, m):
            acc = 0.0
            for j in range(1, k + 1):
                acc += (alpha * j - (k - j)) * f[j] * g[k - j]
            g[k] = acc / (k * f[0])
        return Jet(g)

    def __repr__(self):
        return f"Jet({np.array2string(self.coeffs, precision=12)})"


def jet_variable(at: float, order: int) -> Jet:
    """The identity function x as a jet at `at`."""
    c = np.zeros(order + 1)
    c[0] = at
    if order >= 1:
        c[1] = 1.0
    return Jet(c)


def jet_constant(value: float, order: int) -> Jet:
    c = np.zeros(order + 1)
    c[0] = value
    return Jet(c)


def _sin_cos(f: Jet):
    c = f.coeffs
    m = c.size
    s = np.zeros(m)
    co = np.zeros(m)
    s[0] = math.sin(c[0])
    co[0] = math.cos(c[0])
    for k in range(1, m):
        acc_s = 0.0
        acc_c = 0.0
        for j in range(1, k + 1):
            acc_s += j * c[j] * co[k - j]
            acc_c += j * c[j] * s[k - j]
        s[k] = acc_s / k
        co[k] = -acc_c / k
    return Jet(s), Jet(co)


def jet_sin(f: Jet) -> Jet:
    return _sin_cos(f)[0]


def jet_cos(f: Jet) -> Jet:
    return _sin_cos(f)[1]


def jet_tan(f: Jet) -> Jet:
    s, c = _sin_cos(f)
    if c.coeffs[0] == 0.0:
        raise JetPoleError("tan at an odd multiple of pi/2")
    return s / c


def jet_exp(f: Jet) -> Jet:
    c = f.coeffs
    m = c.size
    g = np.zeros(m)
    g[0] = math.exp(c[0])
    for k in range(1, m):
        acc = 0.0
        for j in range(1, k + 1):
            acc += j * c[j] * g[k - j]
        g[k] = acc / k
    return Jet(g)


_ELEMENTARY = ("sin", "cos", "pow", "inv-sin-sq", "const", "linear")


def jet_elementary(fn: str, at: float, order: int, *, exponent: float | None = None,
                   value: float | None = None) -> Jet:
    """Jet of a named elementary function at the expansion point `at`.

    coeffs[j] = f^(j)(at)/j!.  `pow` needs `exponent`; `const` needs `value`.
    Raises JetPoleError at poles (e.g. inv-sin-sq at a multiple of pi).
    """
    if order < 0 or order > 32:
        raise ValueError("jet order must be in [0, 32]")
    x = jet_variable(at, order)
    if fn == "sin":
        return jet_sin(x)
    if fn == "cos":
        return jet_cos(x)
    if fn == "pow":
        if exponent is None:
            raise ValueError("pow needs an exponent")
        return x**exponent
    if fn == "inv-sin-sq":
        s = jet_sin(x)
        if s.coeffs[0] == 0.0:
            raise JetPoleError("inv-sin-sq at a multiple of pi")
        return s ** (-2)
    if fn == "const":
        if value is None:
            raise ValueError("const needs a value")
        return jet_constant(value, order)
    if fn == "linear":
        return x
    raise ValueError(f"unknown elementary function {fn!r}; expected one of {_ELEMENTARY}")
