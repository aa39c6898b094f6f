"""Small-amplitude Stokes waves of  J_rho eta - c eta + alpha eta^N = 0.

The wave is expanded as eta(a) = sum_m a^m eta_m, c(a) = sum_m c_m a^m with
eta_1 = cos z and <eta_m, cos z> = 0 for m >= 2, so ``a`` is exactly the
cos z coefficient of the profile.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, KernelComponentError, ResonanceError
from .series import CosineSeries, cosine_power, inner, multiply
from .symbols import DispersionSymbol

KERNEL_TOL = 1e-12
RESONANCE_TOL = 1e-12


@dataclass(frozen=True)
class WaveParams:
    N: int
    alpha: int
    rho: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise ConfigError(f"N must be an integer >= 2, got {self.N!r}")
        if self.alpha not in (1, -1):
            raise ConfigError(f"alpha must be +1 or -1, got {self.alpha!r}")
        if self.N % 2 == 0 and self.alpha != 1:
            raise ConfigError("alpha must be +1 for even N")
        if not self.rho > 0:
            raise ConfigError(f"rho must be positive, got {self.rho!r}")

    @property
    def even(self) -> bool:
        return self.N % 2 == 0

    @property
    def tau(self) -> int:
        """Order in a of the first speed correction."""
        return 2 * self.N - 2 if self.even else self.N - 1


class _Multiplier:
    """Cached j(rho n) lookups for one symbol and scaling."""

    def __init__(self, symbol: DispersionSymbol, rho: float):
        self.symbol = symbol
        self.rho = rho
        self._cache: dict[int, float] = {}
        self.j_rho = self(1)

    def __call__(self, n: int) -> float:
        if n not in self._cache:
            self._cache[n] = float(self.symbol(self.rho * n))
        return self._cache[n]

    def table(self, max_mode: int) -> np.ndarray:
        return np.array([self(n) for n in range(max_mode + 1)])


def apply_multiplier(series: CosineSeries, symbol: DispersionSymbol, rho: float) -> CosineSeries:
    """J_rho: mode n is scaled by j(rho n)."""
    mult = _Multiplier(symbol, rho)
    return CosineSeries(series.coeffs * mult.table(series.max_mode))


def apply_D_inverse(series: CosineSeries, symbol: DispersionSymbol, rho: float) -> CosineSeries:
    """Invert D_rho = j(rho) - J_rho off its kernel span{cos z}."""
    return _d_inverse(series, _Multiplier(symbol, rho))


def _d_inverse(series: CosineSeries, mult: _Multiplier) -> CosineSeries:
    c = series.coeffs
    if abs(series[1]) > KERNEL_TOL:
        raise KernelComponentError(f"cos z component {series[1]:.3e} lies in ker D_rho")
    out = np.zeros_like(c)
    for n, v in enumerate(c):
        if n == 1 or v == 0.0:
            continue
        denom = mult.j_rho - mult(n)
        if abs(denom) < RESONANCE_TOL:
            raise ResonanceError(f"j(rho) - j({n} rho) = {denom:.3e} at rho={mult.rho}")
        out[n] = v / denom
    return CosineSeries(out)


def series_power(orders: list[CosineSeries], exponent: int, target_order: int) -> list[CosineSeries]:
    """Coefficients of a^0..a^target_order in (sum_k a^k orders[k-1])^exponent."""
    if exponent < 1:
        raise ValueError("exponent must be >= 1")
    base = [CosineSeries()] + list(orders[:target_order])
    base += [CosineSeries()] * (target_order + 1 - len(base))
    result = base
    for _ in range(exponent - 1):
        result = _poly_mul(result, base, target_order)
    return result


def _poly_mul(p: list[CosineSeries], q: list[CosineSeries], target: int) -> list[CosineSeries]:
    out = []
    for m in range(target + 1):
        acc = CosineSeries()
        for i in range(m + 1):
            if np.any(p[i].coeffs) and np.any(q[m - i].coeffs):
                acc = acc + multiply(p[i], q[m - i])
        out.append(acc)
    return out


def leading_order(params: WaveParams, symbol: DispersionSymbol) -> tuple[CosineSeries, float, int]:
    """Closed-form (eta_N, c_tau, tau) of the first nontrivial correction."""
    mult = _Multiplier(symbol, params.rho)
    N, alpha = params.N, params.alpha
    cos_n = cosine_power(N)
    if params.even:
        eta_n = _d_inverse(cos_n * alpha, mult)
        c_tau = alpha * inner(multiply(cosine_power(N - 1), eta_n) * N, CosineSeries.mode(1))
    else:
        c_tau = alpha * inner(cos_n, CosineSeries.mode(1))
        eta_n = _d_inverse((cos_n - CosineSeries.mode(1, cos_n[1])) * alpha, mult)
    return eta_n, float(c_tau), params.tau


@dataclass(frozen=True)
class StokesExpansion:
    params: WaveParams
    order: int
    eta_orders: list[CosineSeries]
    c_orders: list[float]
    symbol: DispersionSymbol = field(repr=False)

    def eta(self, m: int) -> CosineSeries:
        """Order-m profile correction, eta_1 = cos z."""
        return self.eta_orders[m - 1] if 1 <= m <= self.order else CosineSeries()

    def wave(self, a: float) -> CosineSeries:
        total = CosineSeries()
        for m, eta_m in enumerate(self.eta_orders, start=1):
            total = total + eta_m * a**m
        return total

    def evaluate(self, a: float, z) -> np.ndarray:
        return self.wave(a)(z)

    def speed(self, a: float) -> float:
        return float(sum(c * a**m for m, c in enumerate(self.c_orders)))

    def residual(self, a: float) -> CosineSeries:
        """J_rho eta - c eta + alpha eta^N for the truncated series at amplitude a."""
        eta = self.wave(a)
        power = eta
        for _ in range(self.params.N - 1):
            power = multiply(power, eta)
        lhs = apply_multiplier(eta, self.symbol, self.params.rho) - eta * self.speed(a)
        return lhs + power * self.params.alpha

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "N": self.params.N,
            "alpha": self.params.alpha,
            "rho": self.params.rho,
            "symbol": self.symbol.label(),
            "c": list(self.c_orders),
            "eta": [{str(n): v for n, v in s.to_dict().items()} for s in self.eta_orders],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def expand(params: WaveParams, symbol: DispersionSymbol, order: int = 9) -> StokesExpansion:
    """Stokes expansion through eta_order and c_{order-1}.

    At each order m the speed correction c_{m-1} is fixed by removing the
    cos z component of the known right-hand side, then eta_m = D^{-1}(rhs).
    """
    if order < params.N:
        raise ConfigError(f"expansion order {order} must be >= N={params.N}")
    mult = _Multiplier(symbol, params.rho)
    kernel = CosineSeries.mode(1)
    etas = [kernel]
    cs = [mult.j_rho]
    for m in range(2, order + 1):
        power_m = series_power(etas, params.N, m)[m]
        rhs = power_m * params.alpha
        for j in range(1, m - 1):
            if cs[j] != 0.0:
                rhs = rhs - etas[m - j - 1] * cs[j]
        c_next = inner(rhs, kernel)
        rhs = rhs - kernel * c_next
        cs.append(c_next)
        etas.append(_d_inverse(rhs, mult).trimmed())
    return StokesExpansion(params, order, etas, cs, symbol)


def evaluate_wave(exp: StokesExpansion, a: float, z) -> np.ndarray:
    return exp.evaluate(a, z)


def speed(exp: StokesExpansion, a: float) -> float:
    return exp.speed(a)
