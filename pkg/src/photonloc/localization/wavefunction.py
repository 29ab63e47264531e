"""One-photon wave functions: construction, normalization, duality, densities."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from ..helicity import COOK, NLOC, _cross_kappa, _helicity, _transverse, curl, riesz_multiplier
from ..lattice import NATURAL, ComplexField3, Domain, Grid, PhysicalConstants, RegionSpec


class Flavor(enum.Enum):
    ELECTRIC = "electric"
    MAGNETIC = "magnetic"

    def flipped(self) -> "Flavor":
        return Flavor.MAGNETIC if self is Flavor.ELECTRIC else Flavor.ELECTRIC


@dataclass(frozen=True)
class BumpSource:
    """Radial profile ``f`` with ``psi = curl(f m)``; kept for moment tuning."""

    region: RegionSpec
    m: tuple
    support: float  # radius of supp f, inside region.radius by the stencil margin
    components: tuple = ((1.0, 1.0),)  # (weight, radius fraction) pairs


@dataclass(frozen=True, eq=False)
class WaveFunction:
    phi: ComplexField3
    flavor: Flavor = Flavor.ELECTRIC
    norm: float = float("nan")
    region: RegionSpec | None = None
    source: BumpSource | None = field(default=None, repr=False)

    def with_phi(self, phi: ComplexField3, **kw) -> "WaveFunction":
        return replace(self, phi=phi, norm=norm_functional(phi), **kw)


def norm_functional(phi: ComplexField3) -> float:
    """int d^3k/(2pi)^3 |k| |phi~(k)|^2, equal to the double-integral form with the
    1/(2 pi^2 |r - r'|^2) kernel between curls of phi."""
    s = phi.spectral()
    g = s.grid
    t = _transverse(s.data, g)
    return float(np.sum(g.kappa_abs * np.sum(np.abs(t) ** 2, axis=0)) * g.dx ** 3)


def wavefunction(phi: ComplexField3, flavor: Flavor = Flavor.ELECTRIC, **kw) -> WaveFunction:
    return WaveFunction(phi, flavor, norm_functional(phi), **kw)


def normalize(w: WaveFunction) -> WaveFunction:
    n = norm_functional(w.phi)
    if not n > 0:
        raise ValueError("cannot normalize a zero wave function")
    phi = w.phi * (1.0 / np.sqrt(n))
    return replace(w, phi=phi, norm=norm_functional(phi))


def dual_wavefunction(w: WaveFunction) -> WaveFunction:
    """phi -> -i chi phi with the flavor flipped; applying it twice gives -w."""
    s = w.phi.spectral()
    phi = s.with_data(-1j * _helicity(s.data, s.grid)).to(w.phi.domain)
    return replace(w, phi=phi, flavor=w.flavor.flipped(), norm=norm_functional(phi))


def electric_phi(w: WaveFunction) -> ComplexField3:
    """The electric-flavor amplitude phi of ``w`` (phi = i chi phi~ for magnetic input)."""
    if w.flavor is Flavor.ELECTRIC:
        return w.phi
    s = w.phi.spectral()
    return s.with_data(1j * _helicity(s.data, s.grid)).to(w.phi.domain)


# ---------------------------------------------------------------------------
# compact bumps


def bump_profile(r, radius: float):
    """exp(-1/(1 - (r/R)^2)) inside r < R, 0 outside."""
    r = np.asarray(r, dtype=float)
    s2 = (r / radius) ** 2
    inside = s2 < 1.0
    out = np.zeros_like(r)
    out[inside] = np.exp(-1.0 / (1.0 - s2[inside]))
    return out


def stencil_margin(grid: Grid) -> float:
    """Distance by which curl(curl(.)) can spread support on this grid."""
    return 2 * grid.stencil_reach * grid.dx


def _radial_source(grid: Grid, source: BumpSource) -> np.ndarray:
    r = grid.radius_from(source.region.center)
    return sum(w * bump_profile(r, source.support * frac) for w, frac in source.components)


def _curl_of(grid: Grid, f: np.ndarray, m) -> ComplexField3:
    m = np.asarray(m, dtype=float)
    data = np.stack([f * m[0], f * m[1], f * m[2]]).astype(np.complex128)
    return curl(ComplexField3._own(grid, Domain.POSITION, data))


def bump_wavefunction(R: RegionSpec, m, g: Grid) -> WaveFunction:
    """Normalized psi_R = curl(f(|r - c|) m) with f a smooth compact bump.

    The bump radius is R minus twice the stencil reach, so that every field
    built from one further curl (the footprints) also vanishes outside R.
    """
    R.check_fits(g)
    if 2 * R.radius / g.dx < 8:
        raise ValueError("region too large for grid (fewer than 8 points across R)")
    support = R.radius - stencil_margin(g)
    if support < 2 * g.dx:
        raise ValueError(
            f"region radius {R.radius} leaves no room for the order-{g.order} stencil margin at dx={g.dx}; "
            "refine the grid or lower the derivative order")
    m = np.asarray(m, dtype=float)
    if not np.any(m):
        raise ValueError("m must be nonzero")
    source = BumpSource(R, tuple(m), support)
    psi = _curl_of(g, _radial_source(g, source), m)
    return normalize(WaveFunction(psi, Flavor.ELECTRIC, norm_functional(psi), region=R, source=source))


# ---------------------------------------------------------------------------


def rs_wavefunction(w: WaveFunction, pc: PhysicalConstants = NATURAL):
    """(F+, F-) from F+ + F- = -i sqrt(hbar c) curl phi~ and F+ - F- = sqrt(hbar c) curl phi."""
    phi = electric_phi(w)
    phit = dual_wavefunction(replace(w, phi=phi, flavor=Flavor.ELECTRIC)).phi
    a = curl(phit) * (-1j * np.sqrt(pc.hbar * pc.c))
    b = curl(phi) * np.sqrt(pc.hbar * pc.c)
    return (a + b) * 0.5, (a - b) * 0.5


def nloc_wavefunction(psi_R: WaveFunction, g: Grid | None = None) -> WaveFunction:
    """phi = curl(NLOC psi_R), normalized.

    Its Cook densities are n_mag = |psi|^2 and n_el = |chi psi|^2 for
    psi = psi_R scaled so that int |psi|^2 = 1/2.
    """
    f = psi_R.phi.spectral()
    if g is not None and g != f.grid:
        raise ValueError("psi_R lives on a different grid")
    grid = f.grid
    smoothed = f.with_data(f.data * riesz_multiplier(grid, NLOC.s, NLOC.prefactor))
    phi = curl(smoothed).to(psi_R.phi.domain)
    return normalize(WaveFunction(phi, Flavor.ELECTRIC, norm_functional(phi), region=psi_R.region))


def number_density(w: WaveFunction, tol: float = 1e-8):
    """(n_electric, n_magnetic) as real position-domain arrays.

    Magnetic part: |COOK(-i curl phi)|^2.  Electric part: |COOK(|k| phi)|^2.
    Each integrates to 1/2 for a normalized state.
    """
    n = norm_functional(w.phi)
    if abs(n - 1.0) > tol:
        raise ValueError(f"wave function is not normalized (norm functional {n})")
    s = electric_phi(w).spectral()
    g = s.grid
    t = _transverse(s.data, g)
    cook = riesz_multiplier(g, COOK.s, COOK.prefactor)
    mag = s.with_data(cook * (-1j) * _cross_kappa(t, g)).position().data
    el = s.with_data(cook * g.kappa_abs * t).position().data
    return (np.sum(np.abs(el) ** 2, axis=0), np.sum(np.abs(mag) ** 2, axis=0))

