import json
import subprocess
import sys

import pytest

from mi_spectra.cli import bundled_configs, load_config, main, run
from mi_spectra.errors import ConfigError


def _write(tmp_path, **cfg):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def test_bundled_configs_present():
    names = bundled_configs()
    for name in ["fig1_mkdv", "fig2_whitham_N2", "fig2_whitham_N3", "fig2_whitham_N4", "fig2_whitham_N5", "fig3_combo"]:
        assert name in names


def test_fig2_windows():
    windows = {2: 0.5, 3: 0.06, 4: 1e-4, 5: 0.002}
    for N, win in windows.items():
        cfg = load_config(f"fig2_whitham_N{N}")
        assert (cfg.hill.mu_min, cfg.hill.mu_max, cfg.hill.mu_count) == (-win, win, 210)
        assert cfg.hill.fourier_modes == 5 and cfg.a == 0.02 and cfg.rho == 1.5


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, symbol="kdv", N=3, bogus=1))
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, symbol="kdv"))
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, symbol="kdv", N=2, alpha=-1))
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, symbol="kdv", N=3, emit=["png"]))


def test_compare_writes_overlay(tmp_path, capsys):
    assert run("compare", "fig1_mkdv", str(tmp_path)) == 0
    report = json.loads((tmp_path / "compare.json").read_text())
    assert report["ok"]
    svg = (tmp_path / "overlay.svg").read_text()
    assert "<svg" in svg
    assert "#1f77b4" in svg and "#d62728" in svg  # blue curve, red dots
    assert "PASS" in capsys.readouterr().out


@pytest.mark.parametrize(
    "sub, files",
    [
        ("check", ["hypotheses.json"]),
        ("stokes", ["stokes.json", "wave.csv"]),
        ("wb", ["wb.json"]),
        ("spectrum", ["spectrum.csv", "lemniscate.csv", "spectrum.svg"]),
        ("hill", ["hill.csv", "hill.json"]),
    ],
)
def test_subcommand_outputs(tmp_path, sub, files):
    assert run(sub, "fig1_mkdv", str(tmp_path)) == 0
    for name in files:
        assert (tmp_path / name).stat().st_size > 0


def test_csv_format_and_determinism(tmp_path):
    run("hill", "fig1_mkdv", str(tmp_path / "a"))
    run("hill", "fig1_mkdv", str(tmp_path / "b"))
    first = (tmp_path / "a" / "hill.csv").read_bytes()
    assert first == (tmp_path / "b" / "hill.csv").read_bytes()
    assert first.startswith(b"mu,re,im\r\n")


def test_svg_does_not_touch_numbers(tmp_path):
    cfg = {"symbol": "kdv", "N": 3, "alpha": -1, "rho": 1.5, "a": 0.02,
           "hill": {"fourier_modes": 5, "mu_min": -0.01, "mu_max": 0.01, "mu_count": 201}}
    with_svg = _write(tmp_path, **cfg, emit=["csv", "json", "svg"])
    run("compare", with_svg, str(tmp_path / "svg"))
    (tmp_path / "svg" / "overlay.svg").unlink()
    without = tmp_path / "plain.json"
    without.write_text(json.dumps({**cfg, "emit": ["csv", "json"]}))
    run("compare", str(without), str(tmp_path / "plain"))
    assert (tmp_path / "svg" / "compare.json").read_bytes() == (tmp_path / "plain" / "compare.json").read_bytes()


def test_sweep_reports_critical_rho(tmp_path):
    assert run("sweep", "fig2_whitham_N2", str(tmp_path)) == 0
    data = json.loads((tmp_path / "sweep.json").read_text())
    roots = [r for r in data["sign_changes"] if r["kind"] == "root"]
    assert len(roots) == 1
    assert roots[0]["rho"] == pytest.approx(1.146, abs=1e-3)


def test_combo_spectrum(tmp_path):
    assert run("spectrum", "fig3_combo", str(tmp_path)) == 0
    for N in (2, 3, 4, 5):
        assert (tmp_path / f"lemniscate_N{N}.csv").exists()
    assert (tmp_path / "combo.svg").exists()


def test_check_constant_symbol(tmp_path, capsys):
    path = _write(tmp_path, symbol="1", N=2, n_max=4)
    assert run("check", path, str(tmp_path / "out")) != 0
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["resonant_modes"] == [0, 2, 3, 4]


def test_missing_config_reports_json(tmp_path, capsys):
    assert main(["wb", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path)]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "config"


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("MI_SPECTRA_OUT", str(tmp_path / "env"))
    monkeypatch.setenv("MI_SPECTRA_THREADS", "2")
    assert run("wb", "fig1_mkdv") == 0
    assert (tmp_path / "env" / "wb.json").exists()


def test_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "mi_spectra.cli", "wb", "--config", "fig1_mkdv", "--out", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads((tmp_path / "wb.json").read_text())["verdict"] == "unstable"
