import numpy as np
import pytest

from photonloc import NATURAL, Grid, PhysicalConstants, RegionSpec, random_transverse_field
from photonloc.localization import (FootprintFlavor, bump_wavefunction, destruction_demo, footprints,
                                    localization_destruction_demo, wavefunction)
from photonloc.maxwell import region_leakage


@pytest.fixture(scope="module")
def setup():
    g = Grid(64, 4.0)
    region = RegionSpec((0, 0, 0), 1.0)
    return region, bump_wavefunction(region, (0, 0, 1), g)


def test_magnetic_localization(setup):
    region, w = setup
    pair = footprints(w, FootprintFlavor.MAGNETICALLY_LOCALIZED)
    assert region_leakage(pair.b_fp, region) <= 1e-10
    assert region_leakage(pair.e_fp, region) >= 1e-2
    assert pair.localized is pair.b_fp and pair.delocalized is pair.e_fp


def test_electric_localization_mirrors(setup):
    region, w = setup
    pair = footprints(w, "electric")
    assert region_leakage(pair.e_fp, region) <= 1e-10
    assert region_leakage(pair.b_fp, region) >= 1e-2


@pytest.mark.parametrize("pc", [NATURAL, PhysicalConstants(hbar=2.0, c=3.0, epsilon=0.5, mu=4.0)])
def test_duality_factor_map(setup, pc):
    _, w = setup
    m = footprints(w, FootprintFlavor.MAGNETICALLY_LOCALIZED, pc)
    e = footprints(w, FootprintFlavor.ELECTRICALLY_LOCALIZED, pc)
    assert np.allclose(e.e_fp.data, -np.sqrt(pc.epsilon / pc.mu) * m.b_fp.data, atol=1e-14)
    assert np.allclose(e.b_fp.data, np.sqrt(pc.mu / pc.epsilon) * m.e_fp.data, atol=1e-14)


def test_footprints_need_compact_input(setup):
    region, _ = setup
    w = wavefunction(random_transverse_field(Grid(64, 8.0), 0))
    with pytest.raises(ValueError, match="not supported"):
        footprints(w, FootprintFlavor.MAGNETICALLY_LOCALIZED, region=region)


def test_footprints_need_region():
    w = wavefunction(random_transverse_field(Grid(16, 4.0), 0))
    with pytest.raises(ValueError, match="region"):
        footprints(w, FootprintFlavor.MAGNETICALLY_LOCALIZED)


def test_destruction(setup):
    region, w = setup
    report = destruction_demo(w, [0.0, 0.15, 0.3], region=region)
    leaks = [e["leakage"] for e in report]
    assert leaks[0] <= 1e-10
    assert leaks[1] >= 1e-3
    assert leaks[1] < leaks[2]
    assert localization_destruction_demo is destruction_demo
