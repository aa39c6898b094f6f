"""Closed-form Benjamin-Feir spectrum near the origin.

Everything here is built from the Taylor jet of the dispersion symbol at
rho (and at 0), the cosine powers cos^N z and the inverse of
D_rho = j(rho) - J_rho.  The mu-dependent coefficients are stored as even
polynomials: ``p[i]`` multiplies ``mu**(2*i)``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConvergenceError,
    DomainError,
    NoSignChangeError,
    ResonanceError,
    StableCaseError,
)
from .series import CosineSeries, cosine_power, inner
from .stokes import WaveParams, _d_inverse, _Multiplier
from .symbols import DispersionSymbol, eval_jet

log = logging.getLogger(__name__)

__all__ = [
    "AnalyticCoefficients",
    "Lemniscate",
    "SpectralCurve",
    "StabilityReport",
    "coefficients",
    "cosine_power",
    "critical_rho",
    "eigencurves",
    "inner",
    "lemniscate",
    "mu_star",
    "stability_report",
    "wb_coefficient",
]

SINGULAR_TOL = 1e-10


def even_poly(p: np.ndarray, mu):
    """Evaluate sum_i p[i] mu^(2i)."""
    mu2 = np.asarray(mu, dtype=float) ** 2
    out = np.zeros_like(mu2)
    for c in p[::-1]:
        out = out * mu2 + c
    return out


@dataclass(frozen=True)
class AnalyticCoefficients:
    params: WaveParams
    lambda11_a: float
    lambda11_mu: np.ndarray
    lambda12: np.ndarray
    lambda13: float
    lambda33_a: float
    lambda33_mu: np.ndarray
    lambda_tilde_b: float
    lambda_tilde_d: float
    lambda_f: float | None
    j_rho: float
    rho_dj: float  # rho j'(rho), the leading part of lambda12

    @property
    def parity(self) -> str:
        return "even" if self.params.even else "odd"

    @property
    def delta(self) -> float:
        """Whitham-Benjamin coefficient."""
        if self.params.even:
            return self.lambda_tilde_b * self.lambda_f
        return self.params.alpha * self.lambda_tilde_b

    @property
    def growth(self) -> tuple[float, int]:
        """(D, kappa) with Re-part radicand D a^kappa - mu^2 Lambda_b^2."""
        if self.params.even:
            return self.delta, 2 * self.params.N - 2
        return self.delta * self.lambda11_a, self.params.N - 1

    def lambda_b(self, mu):
        """Lambda_b(mu) = -Lambda_12(mu) - Lambda_11^mu(mu)."""
        return -self.lambda12_at(mu) - even_poly(self.lambda11_mu, mu)

    def lambda12_at(self, mu):
        return even_poly(self.lambda12, mu)

    def lambda3(self, a: float, mu):
        kappa = 2 * self.params.N - 2 if self.params.even else self.params.N - 1
        return self.j_rho - 1.0 + a**kappa * self.lambda33_a + even_poly(self.lambda33_mu, mu)

    def to_dict(self) -> dict:
        return {
            "parity": self.parity,
            "lambda11_a": self.lambda11_a,
            "lambda11_mu": self.lambda11_mu.tolist(),
            "lambda12": self.lambda12.tolist(),
            "lambda13": self.lambda13,
            "lambda33_a": self.lambda33_a,
            "lambda33_mu": self.lambda33_mu.tolist(),
            "lambda_tilde_b": self.lambda_tilde_b,
            "lambda_tilde_d": self.lambda_tilde_d,
            "lambda_f": self.lambda_f,
            "delta": self.delta,
        }


def _parity_caps(params: WaveParams) -> tuple[int, int]:
    """Largest m in the Lambda_11^mu / Lambda_33^mu and Lambda_12 sums."""
    N = params.N
    if params.even:
        return N - 1, N - 2
    return (N - 1) // 2, (N - 3) // 2


def coefficients(params: WaveParams, symbol: DispersionSymbol, cap: int | None = None) -> AnalyticCoefficients:
    """Evaluate the 3x3 reduced-matrix coefficients for (N, alpha, rho, j).

    ``cap`` bounds the number of mu^2 powers kept: Lambda_11^mu and
    Lambda_12 keep mu^0..mu^(2cap-2), Lambda_33^mu keeps mu^2..mu^(2cap).
    """
    N, alpha, rho = params.N, params.alpha, params.rho
    cap11, cap12 = _parity_caps(params)
    if cap is not None:
        cap11 = min(cap11, cap)
        cap12 = min(cap12, cap - 1)
    order = max(2, 2 * cap11, 2 * cap12 + 1)
    t = eval_jet(symbol, rho, order).coeffs  # t[k] = j^(k)(rho) / k!
    mult = _Multiplier(symbol, rho)

    lam11_mu = np.array([rho ** (2 * m) * t[2 * m] for m in range(1, cap11 + 1)])
    lam12 = np.array([rho ** (2 * m + 1) * t[2 * m + 1] for m in range(0, cap12 + 1)])
    lam33_mu = np.zeros(cap11 + 1)
    try:
        t0 = eval_jet(symbol, 0.0, 2 * cap11).coeffs
        for m in range(1, cap11 + 1):
            lam33_mu[m] = -(rho ** (2 * m)) * t0[2 * m]
    except DomainError as exc:
        log.warning("no Taylor expansion of %s at 0 (%s); Lambda_33^mu dropped", symbol.label(), exc)
        lam33_mu = np.zeros(1)

    rho_dj = rho * t[1]
    tilde_b = -rho_dj - rho**2 * t[2]
    tilde_d = rho_dj + t[0] - 1.0
    mean_gap = mult.j_rho - mult(0)

    cos_n = cosine_power(N)
    cos_n1 = cosine_power(N - 1)
    kernel = CosineSeries.mode(1)
    if params.even:
        d_cos_n = _d_inverse(cos_n, mult)
        mean_n = inner(cos_n, CosineSeries([1.0]))
        lam11_a = 2 * N * (1 - N) * inner(cos_n, d_cos_n) + N**2 * inner(
            cos_n, CosineSeries([mean_n / (2.0 * mean_gap)])
        )
        lam13 = -N * mean_n / math.sqrt(2.0)
        lam33_a = (
            N * inner(cos_n, d_cos_n)
            - 0.5 * N * (N - 1) * inner(cosine_power(N - 2), d_cos_n)
            - 0.5 * N**2 * inner(cos_n1, _d_inverse(cos_n1 - kernel * cos_n1[1], mult))
        )
        if abs(tilde_d) < SINGULAR_TOL:
            raise ResonanceError(f"rho j'(rho) + j(rho) - 1 = {tilde_d:.3e} is singular")
        lam_f = -lam11_a + lam13**2 / tilde_d
    else:
        lam11_a = (N - 1) * inner(cos_n, kernel)
        lam13 = 0.0
        lam33_a = alpha * inner(cos_n, kernel) - 0.5 * alpha * N * inner(cos_n1, CosineSeries([1.0]))
        lam_f = None

    return AnalyticCoefficients(
        params=params,
        lambda11_a=float(lam11_a),
        lambda11_mu=lam11_mu,
        lambda12=lam12,
        lambda13=float(lam13),
        lambda33_a=float(lam33_a),
        lambda33_mu=lam33_mu,
        lambda_tilde_b=float(tilde_b),
        lambda_tilde_d=float(tilde_d),
        lambda_f=None if lam_f is None else float(lam_f),
        j_rho=float(t[0]),
        rho_dj=float(rho_dj),
    )


@dataclass
class StabilityReport:
    delta: float
    parity: str
    verdict: str
    params: WaveParams
    symbol: str
    a: float | None = None
    mu_star: float | None = None
    q_max: float | None = None
    width: float | None = None
    p_max: float | None = None

    @property
    def unstable(self) -> bool:
        return self.verdict == "unstable"

    def to_dict(self) -> dict:
        return {
            "symbol": self.symbol,
            "N": self.params.N,
            "alpha": self.params.alpha,
            "rho": self.params.rho,
            "a": self.a,
            "parity": self.parity,
            "delta": self.delta,
            "verdict": self.verdict,
            "mu_star": self.mu_star,
            "q_max": self.q_max,
            "width": self.width,
            "p_max": self.p_max,
        }


def _coeffs(params, symbol, coeffs):
    return coeffs if coeffs is not None else coefficients(params, symbol)


def wb_coefficient(params: WaveParams, symbol: DispersionSymbol, coeffs: AnalyticCoefficients | None = None) -> StabilityReport:
    """Whitham-Benjamin coefficient and the resulting verdict."""
    co = _coeffs(params, symbol, coeffs)
    delta = co.delta
    verdict = "unstable" if delta > 0 else "stable-at-this-order"
    return StabilityReport(delta, co.parity, verdict, params, symbol.label())


def stability_report(params: WaveParams, symbol: DispersionSymbol, a: float) -> StabilityReport:
    """Verdict plus figure-eight geometry at amplitude ``a`` when unstable."""
    co = coefficients(params, symbol)
    report = wb_coefficient(params, symbol, co)
    report.a = a
    if report.unstable:
        geo = lemniscate(params, symbol, a, samples=3, coeffs=co)
        report.mu_star = mu_star(params, symbol, a, coeffs=co)
        report.q_max = geo.q_max
        report.width = geo.width
        report.p_max = geo.width / 2.0
    return report


def critical_rho(
    symbol: DispersionSymbol, N: int, alpha: int = 1, bracket: tuple[float, float] = (0.5, 2.0), tol: float = 1e-6
) -> float:
    """Bisection root of rho -> Delta(rho) inside ``bracket``."""

    def delta(rho):
        return coefficients(WaveParams(N, alpha, rho), symbol, cap=1).delta

    lo, hi = bracket
    f_lo, f_hi = delta(lo), delta(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise NoSignChangeError(f"Delta has the same sign at rho={lo} and rho={hi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = delta(mid)
        if f_mid == 0.0:
            return mid
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def mu_star(
    params: WaveParams,
    symbol: DispersionSymbol,
    a: float,
    coeffs: AnalyticCoefficients | None = None,
    tol: float = 1e-14,
    max_iter: int = 100,
) -> float:
    """Edge of the unstable Floquet band, D a^kappa = mu^2 Lambda_b(mu)^2, by fixed-point iteration."""
    co = _coeffs(params, symbol, coeffs)
    D, kappa = co.growth
    if D <= 0:
        raise StableCaseError(f"no unstable band: growth coefficient {D:.6g} <= 0")
    if a == 0:
        return 0.0
    target = math.sqrt(D * abs(a) ** kappa)
    mu = target / abs(co.lambda_tilde_b)
    for _ in range(max_iter):
        new = target / abs(float(co.lambda_b(mu)))
        if abs(new - mu) < tol:
            return new
        mu = new
    raise ConvergenceError(f"mu* iteration did not converge in {max_iter} steps")


@dataclass
class SpectralCurve:
    mu: np.ndarray
    lambda_plus: np.ndarray
    lambda_minus: np.ndarray
    lambda0: np.ndarray

    @property
    def samples(self):
        return list(zip(self.mu, self.lambda_plus, self.lambda_minus, self.lambda0))

    def unstable(self, threshold: float = 0.0) -> np.ndarray:
        pts = np.concatenate([self.lambda_plus, self.lambda_minus])
        return pts[np.abs(pts.real) > threshold]

    def cloud(self) -> np.ndarray:
        return np.concatenate([self.lambda_plus, self.lambda_minus, self.lambda0])

    def rows(self):
        """(mu, re, im, branch) in mu order."""
        for m, lp, lm, l0 in self.samples:
            yield m, lp.real, lp.imag, "plus"
            yield m, lm.real, lm.imag, "minus"
            yield m, l0.real, l0.imag, "zero"

    def to_dict(self) -> dict:
        return {
            "mu": self.mu.tolist(),
            "plus": [[z.real, z.imag] for z in self.lambda_plus],
            "minus": [[z.real, z.imag] for z in self.lambda_minus],
            "zero": [[z.real, z.imag] for z in self.lambda0],
        }


def _signed_sqrt(radicand: np.ndarray) -> np.ndarray:
    """sqrt that is positive real for positive input and positive imaginary otherwise."""
    r = np.asarray(radicand, dtype=float)
    return np.where(r >= 0, np.sqrt(np.abs(r)) + 0j, 1j * np.sqrt(np.abs(r)))


def eigencurves(
    params: WaveParams,
    symbol: DispersionSymbol,
    a: float,
    mu_grid,
    coeffs: AnalyticCoefficients | None = None,
    leading: bool = False,
) -> SpectralCurve:
    """lambda_1^pm(a, mu) and lambda_0(a, mu) on a grid of Floquet exponents.

    ``leading`` truncates every mu-polynomial to its constant term.
    """
    co = coeffs if coeffs is not None else coefficients(params, symbol, cap=1 if leading else None)
    mu = np.asarray(mu_grid, dtype=float)
    D, kappa = co.growth
    lam_b = co.lambda_b(mu)
    root = _signed_sqrt(D * a**kappa - mu**2 * lam_b**2)
    drift = -1j * mu * co.lambda12_at(mu)
    plus = drift + mu * root
    minus = drift - mu * root
    zero = 1j * mu * co.lambda3(a, mu)
    return SpectralCurve(mu, plus, minus, zero)


@dataclass
class Lemniscate:
    q_max: float
    width: float
    q: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)

    @property
    def samples(self):
        return list(zip(self.p, self.q))

    def points(self) -> np.ndarray:
        return self.p + 1j * self.q

    def rows(self):
        half = len(self.q) // 2
        for i, (q, p) in enumerate(zip(self.q, self.p)):
            yield q, p, "upper" if i < half else "lower"

    def to_dict(self) -> dict:
        return {"q_max": self.q_max, "width": self.width, "q": self.q.tolist(), "p": self.p.tolist()}


def lemniscate(
    params: WaveParams,
    symbol: DispersionSymbol,
    a: float,
    samples: int = 401,
    coeffs: AnalyticCoefficients | None = None,
) -> Lemniscate:
    """Leading-order figure eight p(q) as a closed curve (Re >= 0 half, then Re <= 0 half)."""
    co = _coeffs(params, symbol, coeffs)
    D, kappa = co.growth
    if D <= 0:
        raise StableCaseError(f"no figure eight: growth coefficient {D:.6g} <= 0")
    amp = D * abs(a) ** kappa
    s = abs(co.rho_dj)
    tb = abs(co.lambda_tilde_b)
    q_max = s * math.sqrt(amp) / tb
    width = amp / tb
    q = np.linspace(-q_max, q_max, samples)
    p = np.abs(q) / s * np.sqrt(np.clip(amp - (q / s) ** 2 * tb**2, 0.0, None))
    p[0] = p[-1] = 0.0
    return Lemniscate(q_max, width, np.concatenate([q, q[::-1]]), np.concatenate([p, -p[::-1]]))
