"""Truncated Taylor-jet arithmetic.

A :class:`Jet` stores the normalized Taylor coefficients ``f^(k)(x0) / k!``
of a scalar function at a point.  Arithmetic and the elementary functions
used by the dispersion-symbol language propagate these coefficients exactly
(up to rounding) via the usual recurrences, so derivatives of arbitrary
compositions come out without finite differencing.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ..errors import DomainError

# tanh(x)/x = sum_i TANHC_SERIES[i] x^(2i), truncated at degree 8.
TANHC_SERIES = (1.0, -1.0 / 3.0, 2.0 / 15.0, -17.0 / 315.0, 62.0 / 2835.0)
TANHC_SERIES_RADIUS = 1e-3
# below this the integral form sech^2 quadrature is used instead of tanh(x)/x
TANHC_QUADRATURE_RADIUS = 1.0


class Jet:
    """Value plus derivatives up to a fixed order, stored as Taylor coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = np.asarray(coeffs, dtype=float)

    @classmethod
    def variable(cls, x: float, order: int) -> Jet:
        c = np.zeros(order + 1)
        c[0] = x
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value: float, order: int) -> Jet:
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def derivatives(self) -> np.ndarray:
        """Return ``(f, f', f'', ...)`` at the expansion point."""
        return self.coeffs * _factorials(self.order)

    def derivative(self, k: int) -> float:
        return float(self.coeffs[k] * math.factorial(k))

    def __repr__(self):
        return f"Jet({self.derivatives().tolist()})"

    def _coerce(self, other) -> Jet:
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("jet orders differ")
            return other
        return Jet.constant(float(other), self.order)

    # arithmetic

    def __add__(self, other):
        return Jet(self.coeffs + self._coerce(other).coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        return Jet(self.coeffs - self._coerce(other).coeffs)

    def __rsub__(self, other):
        return Jet(self._coerce(other).coeffs - self.coeffs)

    def __neg__(self):
        return Jet(-self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.coeffs * float(other))
        other = self._coerce(other)
        return Jet(np.convolve(self.coeffs, other.coeffs)[: self.order + 1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.coeffs / float(other))
        return _divide(self.coeffs, self._coerce(other).coeffs)

    def __rtruediv__(self, other):
        return _divide(self._coerce(other).coeffs, self.coeffs)

    def __pow__(self, exponent):
        return power(self, exponent)


@lru_cache(maxsize=None)
def _factorials(order: int) -> np.ndarray:
    return np.array([math.factorial(k) for k in range(order + 1)], dtype=float)


def _divide(u: np.ndarray, v: np.ndarray) -> Jet:
    if v[0] == 0.0:
        raise DomainError("division by zero")
    n = len(u)
    q = np.zeros(n)
    for k in range(n):
        q[k] = (u[k] - np.dot(v[1 : k + 1], q[k - 1 :: -1][:k])) / v[0]
    return Jet(q)


def _first_order_ode(a: np.ndarray, y0: float, rate) -> np.ndarray:
    """Solve y' = rate(y) a' order by order; ``rate`` maps the known y[:m+1] to u_m."""
    n = len(a)
    y = np.zeros(n)
    y[0] = y0
    u = np.zeros(n)
    for k in range(1, n):
        u[k - 1] = rate(y, k - 1)
        j = np.arange(1, k + 1)
        y[k] = np.dot(j * a[1 : k + 1], u[k - 1 :: -1][:k]) / k
    return y


def _one_minus_square(y: np.ndarray, m: int) -> float:
    s = np.dot(y[: m + 1], y[m::-1])
    return (1.0 if m == 0 else 0.0) - s


def exp(g: Jet) -> Jet:
    a = g.coeffs
    n = len(a)
    y = np.zeros(n)
    y[0] = math.exp(a[0])
    for k in range(1, n):
        j = np.arange(1, k + 1)
        y[k] = np.dot(j * a[1 : k + 1], y[k - 1 :: -1][:k]) / k
    return Jet(y)


def log(g: Jet) -> Jet:
    a = g.coeffs
    if a[0] <= 0.0:
        raise DomainError(f"log of non-positive value {a[0]!r}")
    n = len(a)
    y = np.zeros(n)
    y[0] = math.log(a[0])
    for k in range(1, n):
        j = np.arange(1, k)
        y[k] = (a[k] - np.dot(j * y[1:k], a[k - 1 : 0 : -1]) / k) / a[0]
    return Jet(y)


def power(g: Jet, exponent: float) -> Jet:
    """``g ** exponent`` for a constant exponent."""
    r = float(exponent)
    if r.is_integer() and abs(r) <= 64:
        return _integer_power(g, int(r))
    a = g.coeffs
    if a[0] < 0.0 or (a[0] == 0.0 and g.order > 0):
        raise DomainError(f"non-integer power of value {a[0]!r}")
    n = len(a)
    y = np.zeros(n)
    y[0] = a[0] ** r
    for k in range(1, n):
        j = np.arange(1, k + 1)
        y[k] = np.dot(((r + 1.0) * j - k) * a[1 : k + 1], y[k - 1 :: -1][:k]) / (k * a[0])
    return Jet(y)


def _integer_power(g: Jet, n: int) -> Jet:
    if n < 0:
        return 1.0 / _integer_power(g, -n)
    result = Jet.constant(1.0, g.order)
    base = g
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def sqrt(g: Jet) -> Jet:
    if g.coeffs[0] < 0.0:
        raise DomainError(f"sqrt of negative value {g.coeffs[0]!r}")
    return power(g, 0.5)


def sin(g: Jet) -> Jet:
    return _sincos(g)[0]


def cos(g: Jet) -> Jet:
    return _sincos(g)[1]


def _sincos(g: Jet) -> tuple[Jet, Jet]:
    a = g.coeffs
    n = len(a)
    s = np.zeros(n)
    c = np.zeros(n)
    s[0], c[0] = math.sin(a[0]), math.cos(a[0])
    for k in range(1, n):
        j = np.arange(1, k + 1)
        ja = j * a[1 : k + 1]
        s[k] = np.dot(ja, c[k - 1 :: -1][:k]) / k
        c[k] = -np.dot(ja, s[k - 1 :: -1][:k]) / k
    return Jet(s), Jet(c)


def tanh(g: Jet) -> Jet:
    return Jet(_first_order_ode(g.coeffs, math.tanh(g.coeffs[0]), _one_minus_square))


def coth(g: Jet) -> Jet:
    x = g.coeffs[0]
    if x == 0.0:
        raise DomainError("coth is singular at 0")
    return Jet(_first_order_ode(g.coeffs, 1.0 / math.tanh(x), _one_minus_square))


def absolute(g: Jet) -> Jet:
    x = g.coeffs[0]
    if g.order == 0:
        return Jet([abs(x)])
    if x <= 0.0:
        raise DomainError("abs is only differentiated at positive arguments")
    return Jet(g.coeffs.copy())


def _polynomial(g: Jet, coeffs) -> Jet:
    """Evaluate sum coeffs[i] * g**i by Horner's rule."""
    result = Jet.constant(coeffs[-1], g.order)
    for c in reversed(coeffs[:-1]):
        result = result * g + c
    return result


@lru_cache(maxsize=4)
def _gauss_legendre_unit(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def tanhc(g: Jet) -> Jet:
    """tanh(g)/g, regular at g = 0.

    Three branches: the degree-8 Maclaurin series near 0, the representation
    tanh(x)/x = int_0^1 sech^2(s x) ds on moderate arguments (no cancellation
    in high derivatives), and the direct quotient further out.
    """
    x = abs(g.coeffs[0])
    if x < TANHC_SERIES_RADIUS:
        even = [0.0] * (2 * len(TANHC_SERIES) - 1)
        even[::2] = TANHC_SERIES
        return _polynomial(g, even)
    if x < TANHC_QUADRATURE_RADIUS:
        nodes, weights = _gauss_legendre_unit(24)
        total = np.zeros(g.order + 1)
        for s, w in zip(nodes, weights):
            t = tanh(g * s)
            total += w * (1.0 - t * t).coeffs
        return Jet(total)
    return tanh(g) / g


def tanhc_value(x):
    """Vectorised scalar tanh(x)/x."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < TANHC_SERIES_RADIUS
    safe = np.where(small, 1.0, x)
    x2 = x * x
    series = sum(c * x2**i for i, c in enumerate(TANHC_SERIES))
    return np.where(small, series, np.tanh(safe) / safe)
