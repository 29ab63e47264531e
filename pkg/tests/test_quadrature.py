import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from photonloc.quadrature import (NAMED_IDENTITIES, QuadratureResult, convolution_closed_form,
                                  convolution_identity, convolve_point_oracle, cube_mean_power, dump_report,
                                  gaussian_norm_oracle, gr_closed_form, gr_integral, identity_lattice, sqrt_split,
                                  verify_identities)


@pytest.mark.parametrize("key, exact", [("a1", math.pi ** 3), ("a2", 16 * math.pi), ("a3", 4 * math.pi ** 2)])
def test_named_identities(key, exact):
    params, value = NAMED_IDENTITIES[key]
    assert value == pytest.approx(exact, rel=1e-15)
    res, _ = convolution_identity(*params)
    assert res.value == pytest.approx(exact, rel=1e-10)
    assert res.est_error / exact < 1e-10


def test_degenerate_points_have_no_closed_form():
    assert convolution_closed_form(2.0, 2.0) is None
    assert convolution_closed_form(2.5, 2.0) is None
    assert convolution_closed_form(1.7, 2.3) is None
    assert convolution_closed_form(1.5, 2.2) is not None


@pytest.mark.parametrize("a, b", [(1.0, 1.5), (3.0, 1.5), (1.5, 0.0)])
def test_invalid_pairs(a, b):
    with pytest.raises(ValueError):
        convolution_identity(a, b)


def test_lattice_within_estimates():
    pts = identity_lattice()
    assert len(pts) == 25 and all(a + b > 3 for a, b in pts)
    for a, b in pts[::4]:
        res, cf = convolution_identity(a, b)
        assert abs(res.value - cf) <= max(1e-4 * abs(cf), 10 * res.est_error)


@given(s=st.floats(0.3, 3.0))
def test_scaling_law(s):
    a, b = 1.6, 2.3
    r1, _ = convolution_identity(a, b, 1.0)
    r2, _ = convolution_identity(a, b, s)
    assert r2.value / r1.value == pytest.approx(s ** (3 - a - b), rel=1e-6)


def test_verify_identities_report(tmp_path):
    entries = verify_identities(1e-4, lattice=[(1.7, 2.2)])
    assert [e["id"] for e in entries][:3] == ["a1", "a2", "a3"]
    assert all(e["pass"] for e in entries)
    assert set(entries[0]) >= {"id", "params", "numeric", "closed_form", "rel_err", "pass"}
    dump_report(entries, tmp_path / "r.json")
    assert (tmp_path / "r.json").read_text().startswith("[")


def test_certified_identities_fail_below_estimate():
    entries = verify_identities(1e-15, lattice=[])
    assert not all(e["pass"] for e in entries)


def test_gr_example():
    res, cf = gr_integral(0, 1.0, 1.0)
    assert cf == pytest.approx(0.2398755, abs=1e-7)
    assert res.value == pytest.approx(cf, rel=1e-12)


@given(n=st.integers(0, 2), p=st.floats(0.1, 10), q=st.floats(0.1, 10))
def test_gr_integral_matches_closed_form(n, p, q):
    res, cf = gr_integral(n, p, q)
    assert res.value == pytest.approx(cf, rel=1e-8)
    assert gr_closed_form(n, p, q) == cf


def test_gr_rejects_bad_arguments():
    with pytest.raises(ValueError):
        gr_integral(3, 1.0, 1.0)
    with pytest.raises(ValueError):
        gr_integral(0, -1.0, 1.0)


@given(a=st.floats(-1e3, 1e3), b=st.floats(-1e3, 1e3).filter(lambda b: abs(b) > 1e-300))
def test_sqrt_split_is_principal_root(a, b):
    re, im = sqrt_split(a, b)
    z = complex(re, im)
    assert abs(z * z - complex(a, b)) <= 1e-13 * abs(complex(a, b))
    assert abs(z - cmath.sqrt(complex(a, b))) <= 1e-13 * abs(z)


def test_sqrt_split_branch_cut():
    assert sqrt_split(4.0, 0.0) == (2.0, 0.0)
    with pytest.raises(ValueError):
        sqrt_split(-1.0, 0.0)


def test_point_oracle_zero_and_range():
    zero = convolve_point_oracle(2.0, lambda p: np.zeros(len(p)), np.zeros(3))
    assert zero.value == 0.0
    with pytest.raises(ValueError):
        convolve_point_oracle(3.0, lambda p: np.zeros(len(p)), np.zeros(3))


def test_point_oracle_gaussian_at_centre():
    # int G/r^2 for a unit-mass Gaussian of width s is 1/s^2
    s = 0.7
    G = lambda p: np.exp(-np.sum(np.asarray(p) ** 2, -1) / (2 * s * s)) / (2 * np.pi * s * s) ** 1.5
    res = convolve_point_oracle(2.0, G, np.zeros(3), scale=s)
    assert res.value == pytest.approx(1 / s ** 2, rel=1e-9)


def test_quadrature_result_validates():
    with pytest.raises(ValueError):
        QuadratureResult(1.0, -1.0, 3)


def test_cube_mean_power():
    # midpoint rule on a staggered lattice avoids the origin
    m = 80
    u = (np.arange(m) + 0.5) / m - 0.5
    X, Y, Z = np.meshgrid(u, u, u, indexing="ij")
    approx = np.mean((X * X + Y * Y + Z * Z) ** -0.25)
    assert cube_mean_power(0.5) == pytest.approx(approx, rel=1e-3)
    with pytest.raises(ValueError):
        cube_mean_power(3.0)


def test_gaussian_norm_oracle_closed_form():
    # phi = curl(G z) has norm functional 8 pi / 3 for every width
    s = 0.8

    def c(p):
        x, y, z = p[..., 0], p[..., 1], p[..., 2]
        G = np.exp(-(x * x + y * y + z * z) / (2 * s * s))
        return np.stack([x * z * G, y * z * G, G * (2 * s * s - x * x - y * y)], -1) / s ** 4

    assert gaussian_norm_oracle(c, s).value == pytest.approx(8 * math.pi / 3, rel=1e-9)
