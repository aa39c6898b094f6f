"""Even 2*pi-periodic functions stored as cosine coefficients.

Inner product convention: <f, g> = (1/pi) int_0^{2pi} f g dz, so that
<cos nz, cos nz> = 1 for n >= 1 and <1, 1> = 2.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

import numpy as np


class CosineSeries:
    """sum_n coeffs[n] cos(n z); immutable."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        c = np.array(coeffs, dtype=float).ravel()
        if c.size == 0:
            c = np.zeros(1)
        c.setflags(write=False)
        self._c = c

    @classmethod
    def mode(cls, n: int, value: float = 1.0) -> CosineSeries:
        c = np.zeros(n + 1)
        c[n] = value
        return cls(c)

    @classmethod
    def from_dict(cls, modes: dict) -> CosineSeries:
        if not modes:
            return cls()
        c = np.zeros(max(int(n) for n in modes) + 1)
        for n, v in modes.items():
            c[int(n)] = v
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def max_mode(self) -> int:
        return len(self._c) - 1

    def __getitem__(self, n: int) -> float:
        return float(self._c[n]) if 0 <= n < len(self._c) else 0.0

    def to_dict(self) -> dict[int, float]:
        return {n: float(v) for n, v in enumerate(self._c) if v != 0.0}

    def trimmed(self) -> CosineSeries:
        nz = np.nonzero(self._c)[0]
        return CosineSeries(self._c[: nz[-1] + 1] if nz.size else [0.0])

    def truncated(self, max_mode: int) -> CosineSeries:
        return CosineSeries(self._c[: max_mode + 1])

    def __repr__(self):
        return f"CosineSeries({self.to_dict()})"

    def __eq__(self, other):
        if not isinstance(other, CosineSeries):
            return NotImplemented
        a, b = _pad(self._c, other._c)
        return bool(np.array_equal(a, b))

    def __add__(self, other):
        a, b = _pad(self._c, _as_series(other)._c)
        return CosineSeries(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = _pad(self._c, _as_series(other)._c)
        return CosineSeries(a - b)

    def __rsub__(self, other):
        return _as_series(other) - self

    def __neg__(self):
        return CosineSeries(-self._c)

    def __mul__(self, other):
        if isinstance(other, CosineSeries):
            return multiply(self, other)
        return CosineSeries(self._c * float(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return CosineSeries(self._c / float(scalar))

    def __call__(self, z):
        """Evaluate on a grid of z values."""
        z = np.asarray(z, dtype=float)
        n = np.arange(len(self._c))
        return np.cos(np.multiply.outer(z, n)) @ self._c

    def to_exponential(self) -> np.ndarray:
        """Two-sided coefficients e_p, p = -max_mode..max_mode."""
        c = self._c
        half = c[1:] / 2.0
        return np.concatenate([half[::-1], c[:1], half])

    @classmethod
    def from_exponential(cls, e: np.ndarray) -> CosineSeries:
        m = (len(e) - 1) // 2
        pos = e[m:]
        return cls(np.concatenate([pos[:1], 2.0 * pos[1:]]))


def _as_series(x) -> CosineSeries:
    if isinstance(x, CosineSeries):
        return x
    return CosineSeries([float(x)])


def _pad(a: np.ndarray, b: np.ndarray):
    n = max(len(a), len(b))
    return np.pad(a, (0, n - len(a))), np.pad(b, (0, n - len(b)))


def multiply(f: CosineSeries, g: CosineSeries) -> CosineSeries:
    """Exact product via cos p cos q = (cos(p-q) + cos(p+q)) / 2."""
    return CosineSeries.from_exponential(np.convolve(f.to_exponential(), g.to_exponential()))


def inner(f: CosineSeries, g: CosineSeries) -> float:
    """<f, g> = 2 f_0 g_0 + sum_{n>=1} f_n g_n."""
    a, b = _pad(f.coeffs, g.coeffs)
    return float(2.0 * a[0] * b[0] + np.dot(a[1:], b[1:]))


def cosine_power_exact(n: int) -> dict[int, Fraction]:
    """cos^n z = 2^-n sum_k C(n,k) cos((n-2k) z), folded onto modes >= 0."""
    if n < 0:
        raise ValueError("power must be non-negative")
    out: dict[int, Fraction] = {}
    for k in range(n + 1):
        mode = abs(n - 2 * k)
        out[mode] = out.get(mode, Fraction(0)) + Fraction(comb(n, k), 2**n)
    return out


def cosine_power(n: int) -> CosineSeries:
    return CosineSeries.from_dict({m: float(v) for m, v in cosine_power_exact(n).items()})
