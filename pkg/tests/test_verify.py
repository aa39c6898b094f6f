import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mi_spectra.errors import EmptyCloudError, StableCaseError
from mi_spectra.hill import HillConfig, HillSpectrum
from mi_spectra.stokes import WaveParams
from mi_spectra.symbols import builtin
from mi_spectra.verify import (
    cloud_size,
    compare,
    expected_scaling,
    hausdorff,
    scaling_check,
    symmetry_residual,
)

KDV = builtin("kdv")
WHITHAM = builtin("whitham")
MKDV = WaveParams(3, -1, 1.5)
FIG1 = HillConfig(5, -0.01, 0.01, 201, 9, 0.02)

points = st.lists(
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=1, max_size=12
)


def test_hausdorff_examples():
    cloud = np.array([0.1 + 0.2j, -0.3j, 0.5])
    assert hausdorff(cloud, cloud) == 0.0
    assert hausdorff(cloud, cloud + 1e-3) == pytest.approx(1e-3, rel=1e-9)
    with pytest.raises(EmptyCloudError):
        hausdorff([], cloud)


@settings(max_examples=100, deadline=None)
@given(points, points, points)
def test_hausdorff_is_metric(a, b, c):
    dab, dba = hausdorff(a, b), hausdorff(b, a)
    assert dab == dba
    assert hausdorff(a, c) <= dab + hausdorff(b, c) + 1e-12


def _fake_spectrum(rows):
    rows = np.asarray(rows, dtype=complex)
    return HillSpectrum(np.zeros(len(rows)), rows, HillConfig())


def test_symmetry_residual_flat():
    n = np.arange(-5, 6) + 0.01
    flat = 1j * n * (KDV(1.5) - KDV(1.5 * n))
    assert symmetry_residual(_fake_spectrum([flat])) <= 1e-12


def test_symmetry_residual_detects_defect():
    vals = np.array([1e-4 + 0.1j, -1e-4 + 0.1j, 0.5j])
    assert symmetry_residual(_fake_spectrum([vals])) == 0.0
    vals[0] += 1e-6
    assert symmetry_residual(_fake_spectrum([vals])) >= 5e-7


def test_cloud_size():
    assert cloud_size([1 + 2j, -1 - 3j]) == (3.0, 2.0)
    with pytest.raises(EmptyCloudError):
        cloud_size([])


@pytest.fixture(scope="module")
def fig1():
    return compare(MKDV, KDV, FIG1)


def test_fig1_report(fig1):
    rep = fig1.report
    assert rep.ok
    assert rep.hill_points > 0
    assert rep.hausdorff_abs <= 0.05 * rep.q_max
    assert rep.symmetry_residual <= 1e-8
    assert rep.q_max == pytest.approx(4.24e-2, rel=1e-3)
    assert rep.growth_rate_analytic == pytest.approx(3.0e-4, rel=1e-12)


def test_report_is_deterministic(fig1):
    again = compare(MKDV, KDV, FIG1)
    assert again.report.to_json() == fig1.report.to_json()


def test_summary_mentions_verdict(fig1):
    assert "PASS" in fig1.report.summary()


def test_expected_scaling():
    assert expected_scaling(MKDV) == (2.0, 4.0)
    assert expected_scaling(WaveParams(2, 1, 1.5)) == (2.0, 4.0)
    assert expected_scaling(WaveParams(5, 1, 1.5)) == (4.0, 16.0)


@pytest.mark.parametrize(
    "params, sym, tol",
    [(MKDV, KDV, 0.05), (WaveParams(2, 1, 1.5), WHITHAM, 0.05), (WaveParams(5, 1, 1.5), WHITHAM, 0.10)],
    ids=["mkdv", "whitham-N2", "whitham-N5"],
)
def test_scaling_check(params, sym, tol):
    height, width = scaling_check(params, sym, 0.02)
    exp_h, exp_w = expected_scaling(params)
    assert height == pytest.approx(exp_h, rel=tol)
    assert width == pytest.approx(exp_w, rel=tol)


def test_scaling_check_stable():
    with pytest.raises(StableCaseError):
        scaling_check(WaveParams(3, 1, 1.5), KDV, 0.02)
