"""Deterministic CSV/JSON writers and the SVG figures."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np


def _clean(obj):
    """Make numpy scalars/arrays and non-finite floats JSON friendly."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def dumps(payload) -> str:
    return json.dumps(_clean(payload), indent=2, sort_keys=True) + "\n"


def write_json(path: Path, payload) -> Path:
    path = Path(path)
    path.write_text(dumps(payload), encoding="utf-8")
    return path


def write_csv(path: Path, header: list[str], rows) -> Path:
    """RFC-4180 CSV (CRLF line ends) with floats written by repr."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return path


def _figure():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "mi-spectra"
    fig, ax = plt.subplots(figsize=(6, 5))
    ax.set_xlabel(r"Re $\lambda$")
    ax.set_ylabel(r"Im $\lambda$")
    ax.axhline(0, color="0.85", lw=0.5)
    ax.axvline(0, color="0.85", lw=0.5)
    return plt, fig, ax


def _save(plt, fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return Path(path)


def overlay_svg(path: Path, analytic, hill_points, title: str = "") -> Path:
    """Analytic curve (blue line) under the Hill eigenvalues (red dots)."""
    plt, fig, ax = _figure()
    analytic = np.asarray(analytic)
    if analytic.size:
        ax.plot(analytic.real, analytic.imag, color="tab:blue", lw=1.2, label="analytic")
    hill_points = np.asarray(hill_points)
    if hill_points.size:
        ax.plot(hill_points.real, hill_points.imag, ".", color="tab:red", ms=3, label="Hill")
    ax.set_title(title)
    ax.legend(loc="upper right")
    return _save(plt, fig, path)


def curves_svg(path: Path, curves: dict, title: str = "") -> Path:
    """Several closed curves, one per label."""
    plt, fig, ax = _figure()
    for label, pts in curves.items():
        pts = np.asarray(pts)
        ax.plot(pts.real, pts.imag, lw=1.2, label=str(label))
    ax.set_title(title)
    if curves:
        ax.legend(loc="upper right")
    return _save(plt, fig, path)
