"""One test per acceptance criterion; each records a PASS/FAIL summary line."""

import math
import time

import numpy as np
import pytest

from photonloc.lattice import Grid, RegionSpec, random_transverse_field
from photonloc.localization.demos import coherent_demo, diffuse_demo, footprint_demo
from photonloc.localization.diffuse import ChiMethod, chi_psi_D
from photonloc.localization.wavefunction import (bump_wavefunction, dual_wavefunction, nloc_wavefunction,
                                                 normalize, number_density, wavefunction)
from photonloc.helicity import transverse_project
from photonloc.quadrature import gr_integral, verify_identities
from photonloc.suites import evolution_suite, helicity_suite


def _line(ok, n, text):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}"


@pytest.fixture(scope="module")
def helicity_checks():
    return {c["name"]: c for c in helicity_suite(n=64, L=16.0, seed=0, count=100)}


def test_criterion_1_convolution_identities(record):
    t0 = time.perf_counter()
    entries = verify_identities(1e-4)
    elapsed = time.perf_counter() - t0
    named = [e for e in entries if not e["id"].startswith("general")]
    lattice = [e for e in entries if e["id"].startswith("general")]
    worst_named = max(e["rel_err"] for e in named)
    worst_lattice = max(e["rel_err"] for e in lattice)
    refs = sorted(e["closed_form"] for e in named)
    ok = (len(named) == 3 and len(lattice) == 25 and worst_named <= 1e-4 and worst_lattice <= 1e-4
          and elapsed < 60 and np.allclose(refs, sorted([math.pi ** 3, 16 * math.pi, 4 * math.pi ** 2]), rtol=1e-15))
    record(_line(ok, 1, f"pi^3, 16pi, 4pi^2 max rel {worst_named:.2e}; 5x5 lattice max rel {worst_lattice:.2e} "
                        f"(tol 1e-4); runtime {elapsed:.2f} s (< 60 s)"))
    assert ok


def test_criterion_2_helicity_algebra(record, helicity_checks):
    keys = ["involution", "p+ idempotent", "p- idempotent", "p+ p- = 0", "p+ + p- = identity"]
    vals = {k: helicity_checks[f"{k} (100 random transverse fields, n=64)"]["measured"] for k in keys}
    worst = max(vals.values())
    ok = worst <= 1e-12
    record(_line(ok, 2, f"100 random transverse fields n=64, worst algebra deviation {worst:.2e} (tol 1e-12)"))
    assert ok


def test_criterion_3_kernel_eigenvalues(record, helicity_checks):
    worst = helicity_checks["kernel_matrix eigenvalues {|k|,0,0} (100 random k, relative to |k|)"]["measured"]
    ok = worst <= 1e-12
    record(_line(ok, 3, f"100 random k, eigenvalues vs {{|k|,0,0}} max {worst:.2e}*|k| (tol 1e-12*|k|)"))
    assert ok


def test_criterion_4_footprint_localization(record):
    res = footprint_demo(Grid(128, 8.0), 1.0)
    c = {x["name"]: x for x in res["checks"]}
    lb = c["magnetic localization: b_fp exterior leakage"]["measured"]
    le = c["magnetic localization: e_fp exterior leakage"]["measured"]
    me = c["electric localization: e_fp exterior leakage"]["measured"]
    mb = c["electric localization: b_fp exterior leakage"]["measured"]
    fit = res["tail_fit"]
    ok = (lb <= 1e-10 and le >= 1e-2 and me <= 1e-10 and mb >= 1e-2
          and 2 <= fit.p_or_l <= 4 and fit.residual <= 0.05)
    record(_line(ok, 4, f"leakage sharp {max(lb, me):.1e} (<= 1e-10), spreading {min(le, mb):.2e} (>= 1e-2); "
                        f"tail power {fit.p_or_l:.3f} (in [2,4]), log residual {fit.residual:.1e} (<= 0.05)"))
    assert ok


def test_criterion_5_diffuse_state(record):
    rng = np.random.default_rng(5)
    worst_closed = worst_quad = 0.0
    for _ in range(20):
        l = float(rng.uniform(0.2, 2.0))
        r = float(rng.uniform(0.05, 5.0)) * l
        ref = chi_psi_D(r, l, ChiMethod.REAL_FORM)
        scale = abs(ref)
        worst_closed = max(worst_closed, abs(chi_psi_D(r, l, ChiMethod.CLOSED_FORM) - ref) / scale)
        worst_quad = max(worst_quad, abs(chi_psi_D(r, l, ChiMethod.RADIAL_QUADRATURE) - ref) / scale)
    fits = {}
    for l in (0.25, 0.5, 1.0):
        res = diffuse_demo(l)
        fits[l] = max(abs(f.p_or_l - l) / l for f in res["fits"].values())
    worst_fit = max(fits.values())
    ok = worst_closed <= 1e-12 and worst_quad <= 1e-6 and worst_fit <= 0.02
    record(_line(ok, 5, f"chi psi_D closed vs real form {worst_closed:.1e} (1e-12), quadrature {worst_quad:.1e} "
                        f"(1e-6) at 20 points; SqrtExp l error max {worst_fit:.2%} (<= 2%) for l in 0.25, 0.5, 1"))
    assert ok


def test_criterion_6_evolution(record):
    checks = evolution_suite(n=64, L=16.0, seed=0)
    c = {x["name"]: x for x in checks}
    cons = max(x["measured"] for x in checks if "conserved" in x["name"])
    db = c["evolve vs evolve_db"]["measured"]
    kirch = c["kirchhoff_point vs evolve_db at 4 probes (relative to peak)"]["measured"]
    l0 = c["destruction: leakage at t=0"]["measured"]
    l1 = c["destruction: leakage at t=0.1 R/c"]["measured"]
    ok = cons <= 1e-12 and db <= 1e-12 and kirch <= 1e-2 and l0 <= 1e-10 and l1 >= 1e-3
    record(_line(ok, 6, f"conservation {cons:.1e}, evolve vs evolve_db {db:.1e} (1e-12); kirchhoff {kirch:.1e} "
                        f"(1e-2); destruction leakage t=0 {l0:.1e} (<= 1e-10), t=0.1R/c {l1:.2e} (>= 1e-3)"))
    assert ok


def test_criterion_7_causality(record):
    res = coherent_demo(Grid(128, 5.0, 8), 1.0, (0.0, 1.0, 1.5))
    outer = max(e["leakage"] for e in res["report"])
    inner = min(max(e["inner_D"], e["inner_B"]) for e in res["report"] if e["t"] > 0)
    ok = outer <= 1e-6 and inner >= 1e-3
    record(_line(ok, 7, f"coherent mean fields t in (0, 1, 1.5): outside R+ct {outer:.1e} (<= 1e-6), "
                        f"beyond R+ct/2 {inner:.2e} (>= 1e-3)"))
    assert ok


def test_criterion_8_number_density(record):
    g = Grid(64, 8.0)
    region = RegionSpec((0.0, 0.0, 0.0), 1.5)
    psi = bump_wavefunction(region, (0.0, 0.0, 1.0), g)
    states = [psi, dual_wavefunction(psi),
              normalize(wavefunction(transverse_project(random_transverse_field(g, 8))))]
    halves = 0.0
    for w in states:
        ne, nm = number_density(w)
        halves = max(halves, abs(ne.sum() * g.dx ** 3 - 0.5), abs(nm.sum() * g.dx ** 3 - 0.5))
    _, nm = number_density(nloc_wavefunction(psi))
    p = psi.phi.position().data
    dens = np.sum(np.abs(p) ** 2, axis=0)
    ref = dens / (2 * dens.sum() * g.dx ** 3)
    inside = g.radius_from(region.center) <= region.radius
    e_in = float(np.abs(nm - ref)[inside].max() / ref.max())
    e_out = float(nm[~inside].max() / ref.max())
    ok = halves <= 1e-10 and e_in <= 1e-3 and e_out <= 1e-8
    record(_line(ok, 8, f"number integrals vs 1/2 max {halves:.1e} (1e-10); nloc n_magnetic vs |psi_R|^2 "
                        f"inside {e_in:.1e} (1e-3), outside {e_out:.1e} (1e-8)"))
    assert ok


def test_criterion_9_gr_integral(record):
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(0, 3))
        p, q = (float(x) for x in rng.uniform(0.2, 5.0, 2))
        res, cf = gr_integral(n, p, q)
        worst = max(worst, abs(res.value - cf) / abs(cf))
    ok = worst <= 1e-8
    record(_line(ok, 9, f"20 random (n,p,q): max relative error {worst:.1e} (tol 1e-8)"))
    assert ok
