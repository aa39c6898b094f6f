"""Analytic-versus-numerical comparison of the figure-eight spectrum."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .analytic import coefficients, eigencurves, lemniscate, mu_star
from .errors import EmptyCloudError, StableCaseError
from .hill import HillConfig, HillSpectrum, spectrum, unstable_points
from .stokes import WaveParams, expand
from .symbols import DispersionSymbol

# fraction of the predicted p_max below which a real part counts as zero
RE_FRACTION = 1e-3
HAUSDORFF_TOL = 0.05
GROWTH_TOL = 0.10
SYMMETRY_TOL = 1e-8


def hausdorff(cloud_a, cloud_b) -> float:
    """Symmetric Hausdorff distance between two finite sets of complex numbers."""
    a = np.asarray(cloud_a, dtype=complex).ravel()
    b = np.asarray(cloud_b, dtype=complex).ravel()
    if a.size == 0 or b.size == 0:
        raise EmptyCloudError("Hausdorff distance needs two nonempty clouds")
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def symmetry_residual(spec: HillSpectrum) -> float:
    """Worst per-slice distance between the spectrum and its image under lambda -> -conj(lambda)."""
    worst = 0.0
    for vals in spec.eigenvalues:
        vals = vals[np.isfinite(vals)]
        if vals.size:
            worst = max(worst, hausdorff(vals, -np.conj(vals)))
    return worst


def cloud_size(points) -> tuple[float, float]:
    """(height, width) = (max |Im|, max Re - min Re) of a point cloud."""
    pts = np.asarray(points, dtype=complex)
    if pts.size == 0:
        raise EmptyCloudError("no unstable points to measure")
    return float(np.abs(pts.imag).max()), float(pts.real.max() - pts.real.min())


def off_axis(spec: HillSpectrum, threshold: float, radius: float) -> np.ndarray:
    """Eigenvalues with |Re| > threshold inside |lambda| < radius (both lobes)."""
    vals = spec.all_eigenvalues()
    vals = vals[np.isfinite(vals)]
    return vals[(np.abs(vals.real) > threshold) & (np.abs(vals) < radius)]


@dataclass
class ComparisonReport:
    hausdorff_abs: float
    hausdorff_rel_to_qmax: float
    growth_rate_analytic: float
    growth_rate_numeric: float
    growth_rate_rel_err: float
    symmetry_residual: float
    q_max: float
    mu_star: float
    hill_points: int
    analytic_points: int
    hausdorff_ok: bool
    growth_ok: bool
    symmetry_ok: bool

    @property
    def ok(self) -> bool:
        return self.hausdorff_ok and self.growth_ok and self.symmetry_ok

    def to_dict(self) -> dict:
        return {**asdict(self), "ok": self.ok}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        return "\n".join(
            [
                f"hausdorff      {self.hausdorff_abs:.3e}  ({100 * self.hausdorff_rel_to_qmax:.2f}% of q_max)",
                f"growth rate    hill {self.growth_rate_numeric:.6e}  analytic {self.growth_rate_analytic:.6e}"
                f"  rel err {self.growth_rate_rel_err:.2e}",
                f"symmetry       {self.symmetry_residual:.2e}",
                f"verdict        {'PASS' if self.ok else 'FAIL'}",
            ]
        )


@dataclass
class Comparison:
    """Everything produced by :func:`compare`, for writers and plots."""

    report: ComparisonReport
    hill: HillSpectrum
    hill_cloud: np.ndarray
    analytic_cloud: np.ndarray


def compare(
    params: WaveParams,
    symbol: DispersionSymbol,
    config: HillConfig,
    threads: int | None = None,
) -> Comparison:
    """Run Hill's method and the closed form on the same Floquet grid and compare."""
    co = coefficients(params, symbol)
    a = config.amplitude
    geo = lemniscate(params, symbol, a, samples=3, coeffs=co)
    p_max = geo.width / 2.0
    threshold = RE_FRACTION * p_max
    radius = 10.0 * geo.q_max

    exp = expand(params, symbol, config.stokes_order)
    hill = spectrum(exp, symbol, config, threads=threads)
    hill_cloud = unstable_points(hill, threshold, radius)
    curve = eigencurves(params, symbol, a, config.mu_grid, coeffs=co)
    analytic = curve.unstable(threshold)
    analytic = analytic[analytic.real > 0]

    if hill_cloud.size and analytic.size:
        h = hausdorff(hill_cloud, analytic)
        growth_num = float(hill_cloud.real.max())
    else:
        h, growth_num = math.inf, 0.0
    rel_err = abs(growth_num - p_max) / p_max
    sym = symmetry_residual(hill)
    report = ComparisonReport(
        hausdorff_abs=h,
        hausdorff_rel_to_qmax=h / geo.q_max,
        growth_rate_analytic=p_max,
        growth_rate_numeric=growth_num,
        growth_rate_rel_err=rel_err,
        symmetry_residual=sym,
        q_max=geo.q_max,
        mu_star=mu_star(params, symbol, a, coeffs=co),
        hill_points=int(hill_cloud.size),
        analytic_points=int(analytic.size),
        hausdorff_ok=h <= HAUSDORFF_TOL * geo.q_max,
        growth_ok=rel_err <= GROWTH_TOL,
        symmetry_ok=sym <= SYMMETRY_TOL,
    )
    return Comparison(report, hill, hill_cloud, analytic)


def measured_size(
    params: WaveParams,
    symbol: DispersionSymbol,
    a: float,
    fourier_modes: int = 5,
    stokes_order: int = 9,
    mu_count: int = 401,
    threads: int | None = None,
) -> tuple[float, float]:
    """(height, width) of the Hill figure eight on a grid covering [-1.2 mu*, 1.2 mu*]."""
    co = coefficients(params, symbol)
    edge = mu_star(params, symbol, a, coeffs=co)
    geo = lemniscate(params, symbol, a, samples=3, coeffs=co)
    config = HillConfig(fourier_modes, -1.2 * edge, 1.2 * edge, mu_count, stokes_order, a)
    hill = spectrum(expand(params, symbol, stokes_order), symbol, config, threads=threads)
    cloud = off_axis(hill, RE_FRACTION * geo.width / 2.0, 10.0 * geo.q_max)
    return cloud_size(cloud)


def scaling_check(
    params: WaveParams,
    symbol: DispersionSymbol,
    a: float,
    factor: float = 2.0,
    **hill_options,
) -> tuple[float, float]:
    """Measured (height, width) ratios between amplitudes a and a/factor."""
    if coefficients(params, symbol).growth[0] <= 0:
        raise StableCaseError("scaling laws need an unstable wave")
    h1, w1 = measured_size(params, symbol, a, **hill_options)
    h2, w2 = measured_size(params, symbol, a / factor, **hill_options)
    return h1 / h2, w1 / w2


def expected_scaling(params: WaveParams, factor: float = 2.0) -> tuple[float, float]:
    """Predicted (height, width) ratios from the closed-form power laws."""
    kappa = 2 * params.N - 2 if params.even else params.N - 1
    return factor ** (kappa / 2), factor**kappa
