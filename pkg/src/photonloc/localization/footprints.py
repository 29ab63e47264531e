"""Electric and magnetic footprints of compactly built one-photon states."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..helicity import apply_helicity, curl
from ..lattice import NATURAL, ComplexField3, PhysicalConstants, RegionSpec
from ..maxwell import evolve_db, region_leakage
from .wavefunction import WaveFunction


class FootprintFlavor(enum.Enum):
    MAGNETICALLY_LOCALIZED = "magnetic"
    ELECTRICALLY_LOCALIZED = "electric"


@dataclass(frozen=True, eq=False)
class FootprintPair:
    """Electric (D) and magnetic (B) first-order correlation fields of a state.

    ``localized``/``delocalized`` name the sharp and the spreading member.
    """

    e_fp: ComplexField3
    b_fp: ComplexField3
    flavor: FootprintFlavor
    region: RegionSpec

    @property
    def localized(self) -> ComplexField3:
        return self.b_fp if self.flavor is FootprintFlavor.MAGNETICALLY_LOCALIZED else self.e_fp

    @property
    def delocalized(self) -> ComplexField3:
        return self.e_fp if self.flavor is FootprintFlavor.MAGNETICALLY_LOCALIZED else self.b_fp

    def evolve(self, t: float, pc: PhysicalConstants = NATURAL) -> "FootprintPair":
        """Both members obey the free Maxwell equations as a (D, B) pair."""
        D, B = evolve_db(self.e_fp, self.b_fp, t, pc)
        return FootprintPair(D, B, self.flavor, self.region)


def footprints(w: WaveFunction, flavor: FootprintFlavor | str, pc: PhysicalConstants = NATURAL,
               region: RegionSpec | None = None, tol: float = 1e-12) -> FootprintPair:
    """Footprints of the state created from the compact amplitude ``w.phi = psi_R``.

    Magnetically localized:  b = -i sqrt(hbar c mu/2) curl psi,  e = sqrt(hbar c eps/2) curl chi psi
    Electrically localized:  e =  i sqrt(hbar c eps/2) curl psi, b = sqrt(hbar c mu/2) curl chi psi
    """
    flavor = FootprintFlavor(flavor)
    region = region or w.region
    if region is None:
        raise ValueError("footprints need a region (pass one or build w with bump_wavefunction)")
    psi = w.phi.position()
    if region_leakage(psi, region, 0.0) > tol:
        raise ValueError("input wave function is not supported inside the region")
    local = curl(psi)
    spread = curl(apply_helicity(psi))
    he, hm = pc.hbar * pc.c * pc.epsilon / 2, pc.hbar * pc.c * pc.mu / 2
    if flavor is FootprintFlavor.MAGNETICALLY_LOCALIZED:
        return FootprintPair(spread * np.sqrt(he), local * (-1j * np.sqrt(hm)), flavor, region)
    return FootprintPair(local * (1j * np.sqrt(he)), spread * np.sqrt(hm), flavor, region)


def destruction_demo(psi_R: WaveFunction, t_values, pc: PhysicalConstants = NATURAL,
                     region: RegionSpec | None = None):
    """Exterior leakage of the magnetic footprint of a magnetically localized state vs t.

    Returns a list of {t, leakage} in the order of ``t_values``.
    """
    pair = footprints(psi_R, FootprintFlavor.MAGNETICALLY_LOCALIZED, pc, region)
    report = []
    for t in t_values:
        b = pair.evolve(float(t), pc).b_fp
        report.append({"t": float(t), "leakage": region_leakage(b, pair.region, 0.0)})
    return report


localization_destruction_demo = destruction_demo
