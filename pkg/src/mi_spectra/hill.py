"""Fourier-Floquet-Hill spectrum of the linearisation about a Stokes wave.

The Bloch operator

    Q_{a,mu} = (d/dz + i mu) (c - e^{-i mu z} J_rho e^{i mu z} - N alpha eta^{N-1})

is truncated to the exponentials e^{inz}, |n| <= M, and diagonalised densely
for each Floquet exponent on a grid.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .series import CosineSeries, multiply
from .stokes import StokesExpansion
from .symbols import DispersionSymbol

log = logging.getLogger(__name__)

TAIL_WARN = 1e-12


@dataclass(frozen=True)
class HillConfig:
    fourier_modes: int = 5
    mu_min: float = -0.01
    mu_max: float = 0.01
    mu_count: int = 201
    stokes_order: int = 9
    amplitude: float = 0.02

    def __post_init__(self):
        if self.fourier_modes < 1:
            raise ConfigError("fourier_modes must be >= 1")
        if self.mu_count < 1:
            raise ConfigError("mu_count must be >= 1")
        if self.mu_min > self.mu_max:
            raise ConfigError("mu_min must not exceed mu_max")

    @property
    def mu_grid(self) -> np.ndarray:
        if self.mu_count == 1:
            return np.array([self.mu_min])
        return np.linspace(self.mu_min, self.mu_max, self.mu_count)

    def to_dict(self) -> dict:
        return {
            "fourier_modes": self.fourier_modes,
            "mu_min": self.mu_min,
            "mu_max": self.mu_max,
            "mu_count": self.mu_count,
            "stokes_order": self.stokes_order,
            "amplitude": self.amplitude,
        }


@dataclass
class HillSpectrum:
    mu: np.ndarray
    eigenvalues: np.ndarray  # shape (len(mu), 2M+1)
    config: HillConfig
    provenance: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    @property
    def per_mu(self):
        return list(zip(self.mu, self.eigenvalues))

    def all_eigenvalues(self) -> np.ndarray:
        return self.eigenvalues.ravel()

    def rows(self):
        for m, vals in zip(self.mu, self.eigenvalues):
            for v in vals:
                yield m, v.real, v.imag

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "provenance": self.provenance,
            "mu": self.mu.tolist(),
            "eigenvalues": [[[v.real, v.imag] for v in row] for row in self.eigenvalues],
            "failures": {str(k): v for k, v in self.failures.items()},
        }


def potential_coefficients(exp: StokesExpansion, a: float, M: int) -> np.ndarray:
    """Exponential coefficients w_p, p = -M..M, of eta(a)^(N-1)."""
    eta = exp.wave(a)
    power = CosineSeries([1.0])
    for _ in range(exp.params.N - 1):
        power = multiply(power, eta)
    c = power.coeffs
    kept = c[: M + 1]
    dropped = c[M + 1 :]
    total = float(np.sum(c**2))
    if total > 0 and float(np.sum(dropped**2)) > TAIL_WARN * total:
        log.warning("eta^(N-1) has %.2e of its energy above mode %d", np.sum(dropped**2) / total, M)
    padded = np.zeros(M + 1)
    padded[: len(kept)] = kept
    return CosineSeries(padded).to_exponential().astype(complex)


def build_matrix(
    exp: StokesExpansion,
    symbol: DispersionSymbol,
    a: float,
    mu: float,
    M: int,
    w: np.ndarray | None = None,
) -> np.ndarray:
    """Truncated Bloch matrix, rows and columns indexed by n = -M..M."""
    N, alpha, rho = exp.params.N, exp.params.alpha, exp.params.rho
    if w is None:
        w = potential_coefficients(exp, a, 2 * M)
    n = np.arange(-M, M + 1)
    c = exp.speed(a)
    diff = n[:, None] - n[None, :]  # m - n, in -2M..2M
    conv = w[diff + 2 * M]
    inner = np.diag(c - symbol(rho * (n + mu))).astype(complex) - N * alpha * conv
    return 1j * (n + mu)[:, None] * inner


def spectrum(exp: StokesExpansion, symbol: DispersionSymbol, config: HillConfig, threads: int | None = None) -> HillSpectrum:
    """Eigenvalues of the truncated Bloch matrix for every mu on the grid."""
    M, a = config.fourier_modes, config.amplitude
    if M < exp.params.N * config.stokes_order / 2:
        log.info("fourier_modes=%d is below N*stokes_order/2=%g", M, exp.params.N * config.stokes_order / 2)
    w = potential_coefficients(exp, a, 2 * M)
    mus = config.mu_grid
    out = np.full((len(mus), 2 * M + 1), np.nan + 0j)
    failures = {}

    def slice_eigs(i):
        try:
            return i, np.linalg.eigvals(build_matrix(exp, symbol, a, mus[i], M, w)), None
        except np.linalg.LinAlgError as exc:
            return i, None, str(exc)

    if threads is None:
        threads = int(os.environ.get("MI_SPECTRA_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(slice_eigs, range(len(mus))))
    else:
        results = [slice_eigs(i) for i in range(len(mus))]
    for i, vals, err in results:
        if err is None:
            out[i] = vals
        else:
            failures[float(mus[i])] = err
    provenance = {
        "symbol": symbol.label(),
        "N": exp.params.N,
        "alpha": exp.params.alpha,
        "rho": exp.params.rho,
    }
    return HillSpectrum(mus, out, config, provenance, failures)


def unstable_points(spec: HillSpectrum, re_threshold: float, radius: float) -> np.ndarray:
    """Eigenvalues with Re > re_threshold inside |lambda| < radius."""
    vals = spec.all_eigenvalues()
    vals = vals[np.isfinite(vals)]
    return vals[(vals.real > re_threshold) & (np.abs(vals) < radius)]


def flat_spectrum(symbol: DispersionSymbol, rho: float, mu: float, M: int) -> np.ndarray:
    """i Omega_{n,mu} = i (n+mu)(j(rho) - j(rho(n+mu))) for |n| <= M."""
    n = np.arange(-M, M + 1) + mu
    return 1j * n * (symbol(rho) - symbol(rho * n))
