"""End-to-end pipelines behind ``photonloc demo``.

Each returns a dict with a ``checks`` list of
``{name, measured, expected, tolerance, pass}`` entries plus the artifacts
(fields, profiles, fits) a caller may want to write out.
"""

from __future__ import annotations

import numpy as np

from ..lattice import NATURAL, Grid, PhysicalConstants, RegionSpec
from .coherent import coherent_expectation, coherent_leakage, compact_transverse_field
from .diffuse import _vector_samples, chi_psi_D_radial, psi_D, psi_D_radial
from .footprints import FootprintFlavor, destruction_demo, footprints
from .radial import bump_function, delocalized_radial
from .tails import TailModel, fit_tail, radial_profile, sample_profile
from ..helicity import apply_helicity
from ..maxwell import region_leakage
from .wavefunction import bump_wavefunction


def check(name, measured, expected, tolerance, ok) -> dict:
    def plain(x):
        if isinstance(x, (np.floating, np.integer)):
            return x.item()
        if isinstance(x, tuple):
            return list(x)
        return x

    return {"name": name, "measured": plain(measured), "expected": expected,
            "tolerance": plain(tolerance), "pass": bool(ok)}


def _decade(lo):
    return np.geomspace(lo, 10 * lo, 64)


def footprint_demo(grid: Grid, R: float = 1.0, m=(0.0, 0.0, 1.0), pc: PhysicalConstants = NATURAL,
                   bins: int = 48, tail_start: float = 10.0) -> dict:
    """Sharp vs spreading footprints of a compact bump, and the spreading tail law.

    The tail exponent is fitted on the continuum evaluator over one decade
    starting at ``tail_start * R``; the lattice profile of e_fp is compared
    against that evaluator inside the trusted radius.
    """
    region = RegionSpec((0.0, 0.0, 0.0), R)
    w = bump_wavefunction(region, m, grid)
    mag = footprints(w, FootprintFlavor.MAGNETICALLY_LOCALIZED, pc)
    ele = footprints(w, FootprintFlavor.ELECTRICALLY_LOCALIZED, pc)
    lb, le = region_leakage(mag.b_fp, region), region_leakage(mag.e_fp, region)
    me, mb = region_leakage(ele.e_fp, region), region_leakage(ele.b_fp, region)
    # duality: e(electric) = -sqrt(eps/mu) b(magnetic), b(electric) = sqrt(mu/eps) e(magnetic)
    d1 = ele.e_fp.data + np.sqrt(pc.epsilon / pc.mu) * mag.b_fp.data
    d2 = ele.b_fp.data - np.sqrt(pc.mu / pc.epsilon) * mag.e_fp.data
    scale = max(np.abs(mag.b_fp.data).max(), np.abs(mag.e_fp.data).max())
    duality = float(max(np.abs(d1).max(), np.abs(d2).max()) / scale)

    profile = radial_profile(mag.e_fp, region.center, bins)
    support = w.source.support
    radii = _decade(tail_start * R)
    amp = np.sqrt(2.0 / 3.0) * np.abs(delocalized_radial(radii, bump_function(support), support))
    far = sample_profile(lambda r: amp, radii)
    fit = fit_tail(far, TailModel.POWER_LAW)
    # lattice vs continuum, shape only, over the exterior part of the trusted range
    sel = (profile.radii > 1.5 * R) & (profile.radii < grid.trusted_radius)
    shape_err = None
    if sel.sum() >= 2:
        cont = np.sqrt(2.0 / 3.0) * np.abs(delocalized_radial(profile.radii[sel], bump_function(support), support))
        lat = profile.amplitude[sel]
        c = np.exp(np.mean(np.log(lat / cont)))
        shape_err = float(np.max(np.abs(lat / (c * cont) - 1.0)))

    checks = [
        check("magnetic localization: b_fp exterior leakage", lb, "<= 1e-10", 1e-10, lb <= 1e-10),
        check("magnetic localization: e_fp exterior leakage", le, ">= 1e-2", 1e-2, le >= 1e-2),
        check("electric localization: e_fp exterior leakage", me, "<= 1e-10", 1e-10, me <= 1e-10),
        check("electric localization: b_fp exterior leakage", mb, ">= 1e-2", 1e-2, mb >= 1e-2),
        check("duality map between flavors", duality, "<= 1e-12", 1e-12, duality <= 1e-12),
        check("e_fp tail power over one decade", fit.p_or_l, "in [2, 4]", [2, 4], 2 <= fit.p_or_l <= 4),
        check("e_fp tail log residual", fit.residual, "<= 0.05", 0.05, fit.residual <= 0.05),
    ]
    return {"checks": checks, "tail_fit": fit, "profile": profile, "far_profile": far,
            "lattice_vs_continuum_shape": shape_err, "support": support,
            "fields": {"b_fp": mag.b_fp, "e_fp": mag.e_fp, "psi_R": w.phi}}


def destroy_demo(grid: Grid, R: float = 1.0, t_values=(0.0, 0.05, 0.1, 0.2), m=(0.0, 0.0, 1.0),
                 pc: PhysicalConstants = NATURAL) -> dict:
    region = RegionSpec((0.0, 0.0, 0.0), R)
    w = bump_wavefunction(region, m, grid)
    report = destruction_demo(w, t_values, pc, region)
    leaks = [e["leakage"] for e in report]
    checks = []
    if t_values[0] == 0:
        checks.append(check("leakage at t=0", leaks[0], "<= 1e-10", 1e-10, leaks[0] <= 1e-10))
    positive = [e for e in report if e["t"] > 0]
    if positive:
        first = positive[0]["leakage"]
        checks.append(check(f"leakage at first t>0 (t={positive[0]['t']})", first, ">= 1e-3", 1e-3, first >= 1e-3))
    inc = all(b > a for a, b in zip(leaks, leaks[1:]))
    checks.append(check("leakage strictly increasing in t", leaks, "increasing", None, inc))
    pair = footprints(w, FootprintFlavor.MAGNETICALLY_LOCALIZED, pc, region)
    fields = {"psi_R": w.phi, "b_fp_t0": pair.b_fp}
    if t_values:
        fields[f"b_fp_t{t_values[-1]:g}"] = pair.evolve(float(t_values[-1]), pc).b_fp
    return {"checks": checks, "report": report, "fields": fields}


def coherent_demo(grid: Grid, R: float = 1.0, t_values=(0.0, 1.0, 1.5), pc: PhysicalConstants = NATURAL) -> dict:
    region = RegionSpec((0.0, 0.0, 0.0), R)
    alpha = compact_transverse_field(grid, region, (1.0, 0.0, 0.0))
    beta = compact_transverse_field(grid, region, (0.0, 0.0, 1.0))
    report = coherent_leakage(alpha, beta, region, t_values, pc)
    checks = []
    for e in report:
        t = e["t"]
        checks.append(check(f"t={t}: leakage outside R+ct", e["leakage"], "<= 1e-6", 1e-6, e["leakage"] <= 1e-6))
        if t > 0:
            inner = max(e["inner_D"], e["inner_B"])
            checks.append(check(f"t={t}: signal beyond R+ct/2", inner, ">= 1e-3", 1e-3, inner >= 1e-3))
    D, B = coherent_expectation(alpha, beta, pc, region)
    return {"checks": checks, "report": report, "fields": {"D_mean": D, "B_mean": B}}


def diffuse_demo(l: float, grid: Grid | None = None, m=(0.0, 0.0, 1.0), window=(50.0, 500.0),
                 samples: int = 4000, bins: int = 48) -> dict:
    """SqrtExp fits of psi_D and chi psi_D from the radial evaluators, plus an
    optional lattice cross-check when ``grid`` resolves l by at least 4 cells."""
    radii = np.geomspace(window[0] * l, window[1] * l, samples)
    fits, checks, profiles, tails = {}, [], {}, {}
    for name, fn in (("psi_D", lambda r: psi_D_radial(r, l)), ("chi_psi_D", lambda r: chi_psi_D_radial(r, l))):
        prof = sample_profile(fn, radii)
        tails[name] = prof
        fit = fit_tail(prof, TailModel.SQRT_EXP)
        fits[name] = fit
        rel = abs(fit.p_or_l - l) / l
        checks.append(check(f"{name}: fitted l (true {l})", fit.p_or_l, l, 0.02, rel <= 0.02))
    out = {"checks": checks, "fits": fits, "tail_profiles": tails, "profiles": profiles, "fields": {}}
    if grid is not None:
        if l / grid.dx < 4:
            out["grid_check"] = f"skipped: l/dx = {l / grid.dx:g} < 4"
            return out
        w = psi_D(l, m, grid)
        chi_grid = apply_helicity(w.phi)
        p_psi = radial_profile(w.phi, (0.0, 0.0, 0.0), bins)
        p_chi = radial_profile(chi_grid, (0.0, 0.0, 0.0), bins)
        profiles.update({"psi_D": p_psi, "chi_psi_D": p_chi})
        out["fields"] = {"psi_D": w.phi, "chi_psi_D": chi_grid}
        ref_psi = np.abs(psi_D_radial(p_psi.radii, l)) * np.linalg.norm(m)
        ref_chi = _shell_rms(grid, lambda r: chi_psi_D_radial(r, l), m, cross=True, bins=bins)
        e_psi = float(np.max(np.abs(p_psi.amplitude - ref_psi)) / ref_psi.max())
        e_chi = float(np.max(np.abs(p_chi.amplitude - ref_chi)) / ref_chi.max())
        checks.append(check("lattice |psi_D| profile vs radial evaluator", e_psi, "<= 0.02", 0.02, e_psi <= 0.02))
        checks.append(check("lattice chi psi_D profile vs closed form", e_chi, "<= 0.02", 0.02, e_chi <= 0.02))
    return out


def _shell_rms(grid, radial, m, cross, bins):
    """Profile of the analytic field sampled on the same lattice and bins."""
    f = _vector_samples(grid, (0.0, 0.0, 0.0), m, radial, cross)
    return radial_profile(f, (0.0, 0.0, 0.0), bins).amplitude
