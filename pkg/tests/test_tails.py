import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from photonloc import Grid, from_function, zeros
from photonloc.localization import (RadialProfile, TailModel, fit_tail, local_maxima, radial_profile,
                                    sample_profile)


def test_profile_validation():
    with pytest.raises(ValueError):
        RadialProfile((0, 0, 0), np.array([1.0, 1.0]), np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        RadialProfile((0, 0, 0), np.array([1.0, 2.0]), np.array([1.0, -2.0]))


def test_spherical_input_matches_at_bin_centres():
    g = Grid(96, 12.0)
    r = g.radius_from()
    f = from_function(g, lambda X, Y, Z: (np.exp(-r / 2), 0 * X, 0 * X))
    prof = radial_profile(f, bins=12)
    mid = prof.radii > 0.5
    assert np.allclose(prof.amplitude[mid], np.exp(-prof.radii[mid] / 2), rtol=0.01)
    assert prof.radii[-1] < g.trusted_radius


def test_zero_field_and_bin_count(small_grid):
    prof = radial_profile(zeros(small_grid), bins=4)
    assert not prof.amplitude.any()
    with pytest.raises(ValueError):
        radial_profile(zeros(small_grid), bins=3)
    with pytest.raises(ValueError):
        radial_profile(np.zeros(small_grid.shape))


def test_csv_format(tmp_path):
    p = sample_profile(lambda r: 1 / r, [1.0, 2.0])
    p.to_csv(tmp_path / "p.csv")
    lines = (tmp_path / "p.csv").read_text().splitlines()
    assert lines[0] == "r,amplitude" and len(lines) == 3


@given(p=st.floats(1.0, 6.0), A=st.floats(0.1, 10.0))
def test_power_law_recovers_exponent(p, A):
    r = np.geomspace(1, 10, 40)
    fit = fit_tail(sample_profile(lambda x: A * x ** -p, r), TailModel.POWER_LAW)
    assert fit.p_or_l == pytest.approx(p, abs=0.01)
    assert fit.residual < 1e-10


def test_synthetic_inverse_square():
    r = np.geomspace(1, 10, 40)
    fit = fit_tail(sample_profile(lambda x: 3 / x ** 2, r), "power_law")
    assert fit.p_or_l == pytest.approx(2.0, abs=0.01)


def test_sqrt_exp_recovers_scale():
    r = np.linspace(5, 100, 200)
    fit = fit_tail(sample_profile(lambda x: 2 * np.exp(-np.sqrt(2 * x / 0.5)) / x, r), TailModel.SQRT_EXP)
    assert fit.p_or_l == pytest.approx(0.5, rel=0.01)
    assert fit.A == pytest.approx(2.0, rel=1e-6)


def test_sqrt_exp_uses_envelope_of_oscillating_data():
    l = 0.5
    r = np.linspace(5, 100, 40000)
    amp = np.exp(-np.sqrt(2 * r / l)) / r * np.abs(np.sin(25 * r))
    fit = fit_tail(sample_profile(lambda x: amp, r), TailModel.SQRT_EXP)
    assert fit.p_or_l == pytest.approx(l, rel=0.01)


def test_fit_window_rules():
    r = np.linspace(0.1, 2.0, 20)
    p = RadialProfile((0, 0, 0), r, 1 / r ** 2, trusted_radius=2.0)
    with pytest.raises(ValueError, match="trusted radius"):
        fit_tail(p, TailModel.POWER_LAW, window=(0.5, 3.0))
    with pytest.raises(ValueError, match="bins"):
        fit_tail(p, TailModel.POWER_LAW, window=(1.0, 1.3))
    z = RadialProfile((0, 0, 0), r, np.where(r > 1, 0.0, 1.0))
    with pytest.raises(ValueError, match="zero amplitudes"):
        fit_tail(z, TailModel.POWER_LAW)
    with pytest.raises(ValueError, match="maxima"):
        fit_tail(sample_profile(lambda x: 1 + 0 * x, r), TailModel.SQRT_EXP)


def test_tail_fit_json(tmp_path):
    r = np.geomspace(1, 10, 20)
    fit = fit_tail(sample_profile(lambda x: x ** -3, r), TailModel.POWER_LAW)
    fit.to_json(tmp_path / "f.json")
    data = json.loads((tmp_path / "f.json").read_text())
    assert set(data) == {"model", "A", "p_or_l", "r_min", "r_max", "residual"}
    assert data["model"] == "power_law"


def test_local_maxima():
    assert list(local_maxima(np.array([0, 2, 1, 3, 0]))) == [1, 3]
