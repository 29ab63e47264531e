"""Mean fields of coherent states exp(i int alpha.D + beta.B)|0>."""

from __future__ import annotations

import numpy as np

from ..helicity import curl
from ..lattice import NATURAL, ComplexField3, Domain, Grid, PhysicalConstants, RegionSpec
from ..maxwell import evolve_db, region_leakage


def polynomial_bump(r, radius: float, power: int = 12):
    """(1 - (r/R)^2)^power inside R; C^(power-1) and well resolved on coarse grids."""
    r = np.asarray(r, dtype=float)
    s2 = (r / radius) ** 2
    return np.where(s2 < 1.0, np.clip(1.0 - s2, 0.0, None) ** power, 0.0)


def compact_transverse_field(grid: Grid, region: RegionSpec, m, power: int = 12) -> ComplexField3:
    """Real transverse field curl(f m) whose own curl is still supported in the region."""
    support = region.radius - 2 * grid.stencil_reach * grid.dx
    if support <= 2 * grid.dx:
        raise ValueError("region too small for the stencil margin")
    f = polynomial_bump(grid.radius_from(region.center), support, power)
    m = np.asarray(m, dtype=float)
    data = np.stack([f * m[0], f * m[1], f * m[2]]).astype(np.complex128)
    return curl(ComplexField3._own(grid, Domain.POSITION, data))


def coherent_expectation(alpha: ComplexField3, beta: ComplexField3, pc: PhysicalConstants = NATURAL,
                         region: RegionSpec | None = None, tol: float = 1e-12):
    """(D_mean, B_mean) = (-hbar curl beta, hbar curl alpha).

    With ``region`` the inputs are checked to vanish outside it.
    """
    alpha, beta = alpha.position(), beta.position()
    if not (alpha.is_real() and beta.is_real()):
        raise ValueError("alpha and beta must be real fields")
    if region is not None:
        for name, f in (("alpha", alpha), ("beta", beta)):
            if np.any(f.data) and region_leakage(f, region, 0.0) > tol:
                raise ValueError(f"{name} is not supported inside the region")
    D = curl(beta) * (-pc.hbar)
    B = curl(alpha) * pc.hbar
    return D, B


def coherent_leakage(alpha, beta, region: RegionSpec, t_values, pc: PhysicalConstants = NATURAL):
    """For each t: leakage of the evolved mean fields outside R + ct and beyond R + ct/2."""
    D0, B0 = coherent_expectation(alpha, beta, pc, region)
    report = []
    for t in t_values:
        D, B = evolve_db(D0, B0, float(t), pc)
        ct = pc.c * float(t)
        entry = {"t": float(t)}
        for name, f in (("D", D), ("B", B)):
            entry[f"leakage_{name}"] = region_leakage(f, region, ct)
            entry[f"inner_{name}"] = region_leakage(f, region, ct / 2) if t > 0 else None
        entry["leakage"] = max(entry["leakage_D"], entry["leakage_B"])
        report.append(entry)
    return report
