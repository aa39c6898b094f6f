"""Command-line front end: ``mi-spectra <subcommand> --config <path>``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import io
from .analytic import (
    coefficients,
    critical_rho,
    eigencurves,
    lemniscate,
    mu_star,
    stability_report,
)
from .errors import ConfigError, MiSpectraError, NoSignChangeError, StableCaseError
from .hill import HillConfig, spectrum
from .stokes import WaveParams, expand
from .symbols import DispersionSymbol, check_hypotheses, resolve_symbol
from .verify import RE_FRACTION, compare, off_axis

log = logging.getLogger("mi_spectra")

SUBCOMMANDS = ("check", "stokes", "wb", "spectrum", "hill", "compare", "sweep")
EMIT_KINDS = {"csv", "json", "svg"}


@dataclass
class RunConfig:
    symbol: str
    N: int | list[int]
    alpha: int = 1
    rho: float = 1.5
    a: float = 0.02
    stokes_order: int = 9
    hill: HillConfig = field(default_factory=HillConfig)
    outputs: str = "out"
    emit: list[str] = field(default_factory=lambda: ["csv", "json", "svg"])
    symbol_params: dict = field(default_factory=dict)
    n_max: int = 16
    tol: float = 1e-10
    samples: int = 401
    sweep: dict = field(default_factory=lambda: {"rho_min": 0.5, "rho_max": 2.0, "count": 61})

    @classmethod
    def from_dict(cls, raw: dict) -> RunConfig:
        raw = dict(raw)
        known = {
            "symbol", "symbol_params", "N", "alpha", "rho", "a", "stokes_order", "hill",
            "outputs", "emit", "n_max", "tol", "samples", "sweep", "description",
        }
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "symbol" not in raw or "N" not in raw:
            raise ConfigError("config needs at least 'symbol' and 'N'")
        raw.pop("description", None)
        order = int(raw.get("stokes_order", 9))
        hill_raw = dict(raw.pop("hill", {}))
        hill_raw.setdefault("stokes_order", order)
        hill_raw.setdefault("amplitude", float(raw.get("a", 0.02)))
        try:
            raw["hill"] = HillConfig(**hill_raw)
        except TypeError as exc:
            raise ConfigError(f"bad hill section: {exc}") from None
        cfg = cls(**raw)
        bad = set(cfg.emit) - EMIT_KINDS
        if bad:
            raise ConfigError(f"unknown emit kinds {sorted(bad)}")
        for n in cfg.n_values:
            WaveParams(n, cfg.alpha, cfg.rho)
        return cfg

    @property
    def n_values(self) -> list[int]:
        return list(self.N) if isinstance(self.N, list) else [self.N]

    def params(self, N: int | None = None, rho: float | None = None) -> WaveParams:
        if N is None:
            if isinstance(self.N, list):
                raise ConfigError("this subcommand needs a single N")
            N = self.N
        return WaveParams(int(N), int(self.alpha), float(self.rho if rho is None else rho))

    def dispersion(self) -> DispersionSymbol:
        return resolve_symbol(self.symbol, self.symbol_params or None)


def load_config(path: str) -> RunConfig:
    """Read a config file, or a bundled one by name (e.g. ``fig1_mkdv``)."""
    p = Path(path)
    if not p.exists():
        name = path if path.endswith(".json") else f"{path}.json"
        bundled = resources.files("mi_spectra") / "configs" / name
        if not bundled.is_file():
            raise ConfigError(f"config file {path!r} not found")
        text = bundled.read_text(encoding="utf-8")
    else:
        text = p.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return RunConfig.from_dict(raw)


def bundled_configs() -> list[str]:
    folder = resources.files("mi_spectra") / "configs"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


class Runner:
    def __init__(self, cfg: RunConfig, out: Path, threads: int):
        self.cfg = cfg
        self.out = out
        self.threads = threads
        self.written: list[Path] = []

    def emits(self, kind: str) -> bool:
        return kind in self.cfg.emit

    def json(self, name: str, payload):
        self.written.append(io.write_json(self.out / name, payload))

    def csv(self, name: str, header, rows):
        self.written.append(io.write_csv(self.out / name, header, rows))

    # subcommands

    def check(self) -> int:
        report = check_hypotheses(self.cfg.dispersion(), self.cfg.rho, self.cfg.n_max, self.cfg.tol)
        self.json("hypotheses.json", {"symbol": self.cfg.dispersion().label(), **report.to_dict()})
        if not report.ok:
            failed = [n for n, _ in report.h3_resonances]
            _error("hypotheses", "dispersion hypotheses fail", resonant_modes=failed)
            return 1
        return 0

    def stokes(self) -> int:
        symbol = self.cfg.dispersion()
        exp = expand(self.cfg.params(), symbol, self.cfg.stokes_order)
        self.json("stokes.json", exp.to_dict())
        if self.emits("csv"):
            z = np.linspace(0.0, 2 * np.pi, 257)
            eta = exp.evaluate(self.cfg.a, z)
            self.csv("wave.csv", ["z", "eta"], zip(z, eta))
        return 0

    def wb(self) -> int:
        report = stability_report(self.cfg.params(), self.cfg.dispersion(), self.cfg.a)
        self.json("wb.json", report.to_dict())
        return 0

    def spectrum(self) -> int:
        symbol = self.cfg.dispersion()
        combo = isinstance(self.cfg.N, list)
        paths = {}
        for N in self.cfg.n_values:
            params = self.cfg.params(N)
            suffix = f"_N{N}" if combo else ""
            co = coefficients(params, symbol)
            try:
                edge = mu_star(params, symbol, self.cfg.a, coeffs=co)
            except StableCaseError:
                edge = None
            span = edge if edge else (self.cfg.hill.mu_max or 0.01)
            mu = np.linspace(-span, span, self.cfg.samples)
            curve = eigencurves(params, symbol, self.cfg.a, mu, coeffs=co)
            if self.emits("csv"):
                self.csv(f"spectrum{suffix}.csv", ["mu", "re", "im", "branch"], curve.rows())
            if self.emits("json"):
                self.json(f"spectrum{suffix}.json", curve.to_dict())
            if edge is None:
                log.warning("N=%d is modulationally stable at this order; no lemniscate", N)
                continue
            geo = lemniscate(params, symbol, self.cfg.a, self.cfg.samples, coeffs=co)
            if self.emits("csv"):
                self.csv(f"lemniscate{suffix}.csv", ["q", "p", "branch"], geo.rows())
            if self.emits("json"):
                self.json(f"lemniscate{suffix}.json", geo.to_dict())
            paths[f"N={N}"] = _figure_eight_path(curve)
        if self.emits("svg") and paths:
            name = "combo.svg" if combo else "spectrum.svg"
            self.written.append(io.curves_svg(self.out / name, paths, title=symbol.label()))
        return 0

    def hill(self) -> int:
        symbol = self.cfg.dispersion()
        params = self.cfg.params()
        exp = expand(params, symbol, self.cfg.hill.stokes_order)
        spec = spectrum(exp, symbol, self.cfg.hill, threads=self.threads)
        if self.emits("csv"):
            self.csv("hill.csv", ["mu", "re", "im"], spec.rows())
        if self.emits("json"):
            self.json("hill.json", spec.to_dict())
        return 0 if not spec.failures else 1

    def compare(self) -> int:
        symbol = self.cfg.dispersion()
        params = self.cfg.params()
        result = compare(params, symbol, self.cfg.hill, threads=self.threads)
        self.json("compare.json", result.report.to_dict())
        print(result.report.summary())
        if self.emits("svg"):
            edge = result.report.mu_star
            mu = np.linspace(-edge, edge, self.cfg.samples)
            curve = eigencurves(params, symbol, self.cfg.a, mu)
            rep = result.report
            dots = off_axis(result.hill, RE_FRACTION * rep.growth_rate_analytic, 10.0 * rep.q_max)
            title = f"{symbol.label()}, N={params.N}, a={self.cfg.a:g}, rho={params.rho:g}"
            self.written.append(io.overlay_svg(self.out / "overlay.svg", _figure_eight_path(curve), dots, title))
        return 0 if result.report.ok else 1

    def sweep(self) -> int:
        symbol = self.cfg.dispersion()
        sw = self.cfg.sweep
        rhos = np.linspace(float(sw["rho_min"]), float(sw["rho_max"]), int(sw["count"]))
        N, alpha = self.cfg.params().N, self.cfg.alpha
        deltas = []
        for rho in rhos:
            try:
                deltas.append(coefficients(WaveParams(N, alpha, rho), symbol, cap=1).delta)
            except MiSpectraError as exc:
                log.warning("rho=%g skipped: %s", rho, exc)
                deltas.append(float("nan"))
        roots = []
        scale = np.nanmax(np.abs(deltas)) if np.any(np.isfinite(deltas)) else 1.0
        for i in range(len(rhos) - 1):
            d0, d1 = deltas[i], deltas[i + 1]
            if not (np.isfinite(d0) and np.isfinite(d1)) or np.sign(d0) == np.sign(d1):
                continue
            try:
                root = critical_rho(symbol, N, alpha, (rhos[i], rhos[i + 1]))
            except NoSignChangeError:
                continue
            value = coefficients(WaveParams(N, alpha, root), symbol, cap=1).delta
            kind = "root" if abs(value) < 1e-4 * scale else "pole"
            roots.append({"rho": root, "kind": kind, "unstable_above": bool(d1 > 0)})
        if self.emits("csv"):
            rows = [(r, d, "unstable" if d > 0 else "stable-at-this-order") for r, d in zip(rhos, deltas)]
            self.csv("sweep.csv", ["rho", "delta", "verdict"], rows)
        self.json(
            "sweep.json",
            {"symbol": symbol.label(), "N": N, "alpha": alpha, "rho": rhos, "delta": deltas, "sign_changes": roots},
        )
        for r in roots:
            print(f"sign change ({r['kind']}) at rho = {r['rho']:.6f}")
        return 0


def _figure_eight_path(curve) -> np.ndarray:
    """lambda^+ along increasing mu then lambda^- back: one closed figure eight."""
    return np.concatenate([curve.lambda_plus, curve.lambda_minus[::-1]])


def _error(code: str, message: str, **extra) -> None:
    print(json.dumps({"error": code, "message": message, **extra}, sort_keys=True), file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mi-spectra", description=__doc__)
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", required=True, help="JSON config file or bundled config name")
    parser.add_argument("--out", help="output directory (overrides config and MI_SPECTRA_OUT)")
    parser.add_argument("--threads", type=int, help="worker threads for Hill slices")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def run(subcommand: str, config_path: str, out: str | None = None, threads: int | None = None) -> int:
    """Execute one subcommand; returns the process exit status."""
    try:
        cfg = load_config(config_path)
        out_dir = Path(out or os.environ.get("MI_SPECTRA_OUT") or cfg.outputs)
        n_threads = threads or int(os.environ.get("MI_SPECTRA_THREADS", "1"))
        out_dir.mkdir(parents=True, exist_ok=True)
        runner = Runner(cfg, out_dir, n_threads)
        return getattr(runner, subcommand)()
    except MiSpectraError as exc:
        _error(exc.code, str(exc), subcommand=subcommand)
        return 2
    except (OSError, ValueError) as exc:
        _error("runtime", str(exc), subcommand=subcommand)
        return 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return run(args.subcommand, args.config, args.out, args.threads)


if __name__ == "__main__":
    sys.exit(main())
