"""Verification suites behind ``photonloc verify``.

Every suite returns a list of check dicts ``{name, measured, expected,
tolerance, pass}``.  ``rel_tol=None`` keeps each check's own default
tolerance; a number overrides the tolerance of the accuracy checks.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .helicity import (COOK, INV_K, NLOC, apply_helicity, curl, helicity_project, kernel_matrix,
                       riesz_smooth, transverse_project)
from .lattice import (NATURAL, Domain, Grid, RegionSpec, from_function, plane_wave, random_real_transverse_field,
                      random_transverse_field)
from .localization.demos import check, destroy_demo
from .localization.wavefunction import (bump_wavefunction, dual_wavefunction, nloc_wavefunction, norm_functional,
                                        normalize, number_density, wavefunction)
from .maxwell import RSField, evolve, evolve_db, kirchhoff_point, observables, rs_compose, rs_split
from .quadrature import (convolution_identity, convolve_point_oracle, cube_mean_power, gaussian_norm_oracle,
                         gr_integral, sqrt_split, verify_identities)

SUITES = ("quad", "helicity", "evolution", "cook")


def _tol(rel_tol, default):
    return default if rel_tol is None else rel_tol


def _le(name, measured, tol):
    return check(name, measured, f"<= {tol:g}", tol, measured <= tol)


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


# ---------------------------------------------------------------------------


def quad_suite(rel_tol=None, seed: int = 0) -> list:
    tol = _tol(rel_tol, 1e-4)
    out = []
    for e in verify_identities(tol):
        lattice = e["id"].startswith("general")
        bound = max(tol, 10 * e["est_error"] / abs(e["closed_form"])) if lattice else tol
        if lattice:
            out.append(check(f"convolution {e['id']}", e["rel_err"], f"<= {bound:g}", bound, e["pass"]))
        else:
            # certified: the observed error and the error estimate both count
            worst = max(e["rel_err"], e["est_error"] / abs(e["closed_form"]))
            out.append(check(f"convolution {e['id']} = {e['closed_form']:.12g}, max(rel_err, est_error/ref)",
                             worst, f"<= {tol:g}", tol, e["pass"]))
    # scaling with separation
    a, b = 1.7, 2.2
    r1, _ = convolution_identity(a, b, 1.0)
    r2, _ = convolution_identity(a, b, 2.0)
    err = abs(r2.value / r1.value / 2.0 ** (3 - a - b) - 1)
    out.append(_le(f"scaling law s^(3-a-b) at (a,b)=({a},{b})", err, _tol(rel_tol, 1e-6)))
    # GR integral
    gtol = _tol(rel_tol, 1e-8)
    rng = np.random.default_rng(seed)
    res, cf = gr_integral(0, 1.0, 1.0)
    out.append(_le("gr_integral(0,1,1) vs sqrt(pi) e^-2", abs(res.value - math.sqrt(math.pi) * math.exp(-2)) / cf, gtol))
    worst, worst_est = 0.0, 0.0
    for _ in range(20):
        n = int(rng.integers(0, 3))
        p, q = (float(x) for x in rng.uniform(0.2, 5.0, 2))
        res, cf = gr_integral(n, p, q)
        worst = max(worst, abs(res.value - cf) / abs(cf))
        worst_est = max(worst_est, res.est_error / abs(cf))
    worst = max(worst, worst_est)
    out.append(_le("gr_integral: 20 random (n,p,q) vs closed form, max(rel_err, est_error/ref)", worst, gtol))
    # square-root split
    serr = 0.0
    for a_, b_ in rng.normal(size=(50, 2)) * np.array([10.0, 10.0]):
        re, im = sqrt_split(float(a_), float(b_))
        ref = cmath.sqrt(complex(a_, b_))
        serr = max(serr, abs(complex(re, im) - ref) / abs(ref))
    out.append(_le("sqrt_split vs principal complex root (50 samples)", serr, 1e-14))
    return out


# ---------------------------------------------------------------------------


def helicity_suite(n: int = 64, L: float = 16.0, seed: int = 0, count: int = 100, rel_tol=None) -> list:
    tol = _tol(rel_tol, 1e-12)
    g = Grid(n, L)
    worst = dict.fromkeys(("involution", "p+ idempotent", "p- idempotent", "p+ p- = 0", "p+ + p- = identity",
                           "norm preserved", "pythagoras"), 0.0)
    for i in range(count):
        f = random_transverse_field(g, seed + i)
        scale = np.abs(f.data).max()
        chi = apply_helicity(f)
        pp, pm = helicity_project(f, +1), helicity_project(f, -1)

        def dev(a, b):
            return float(np.abs(a.data - b.data).max() / scale)

        worst["involution"] = max(worst["involution"], dev(apply_helicity(chi), f))
        worst["p+ idempotent"] = max(worst["p+ idempotent"], dev(helicity_project(pp, +1), pp))
        worst["p- idempotent"] = max(worst["p- idempotent"], dev(helicity_project(pm, -1), pm))
        worst["p+ p- = 0"] = max(worst["p+ p- = 0"], float(np.abs(helicity_project(pm, +1).data).max() / scale))
        worst["p+ + p- = identity"] = max(worst["p+ + p- = identity"], dev(pp + pm, f))
        n2 = f.norm2()
        worst["norm preserved"] = max(worst["norm preserved"], abs(chi.norm2() - n2) / n2)
        worst["pythagoras"] = max(worst["pythagoras"], abs(pp.norm2() + pm.norm2() - n2) / n2)
    out = [_le(f"{k} ({count} random transverse fields, n={n})", v, tol) for k, v in worst.items()]

    f = random_transverse_field(g, seed + count).position()
    lhs, rhs = apply_helicity(curl(f)), curl(apply_helicity(f))
    out.append(_le("helicity commutes with curl", _rel(lhs.data, rhs.data), tol))
    ep = np.array([1.0, 1j, 0.0]) / np.sqrt(2)
    w = plane_wave(g, (0, 0, 3), ep)
    out.append(_le("e+ plane wave is a +1 eigenmode", _rel(apply_helicity(w).data, w.data), tol))
    out.append(_le("P- annihilates e+ plane wave", float(np.abs(helicity_project(w, -1).data).max()), 1e-13))

    rng = np.random.default_rng(seed)
    e_err = tr_err = herm_err = sum_err = 0.0
    for _ in range(100):
        k = rng.normal(size=3) * rng.uniform(0.1, 10.0)
        kk = float(np.linalg.norm(k))
        ref = (kk * kk * np.eye(3) - np.outer(k, k)) / kk
        kp, km = kernel_matrix(k, +1), kernel_matrix(k, -1)
        for km_ in (kp, km):
            ev = np.sort(km_.eigenvalues())
            e_err = max(e_err, float(np.abs(ev - [0.0, 0.0, kk]).max()) / kk)
            tr_err = max(tr_err, abs(np.trace(km_.entries) - kk) / kk)
            herm_err = max(herm_err, float(np.abs(km_.entries - km_.entries.conj().T).max()) / kk)
        sum_err = max(sum_err, float(np.abs(kp.entries + km.entries - ref).max()) / kk)
    out += [
        _le("kernel_matrix eigenvalues {|k|,0,0} (100 random k, relative to |k|)", e_err, tol),
        _le("kernel_matrix trace = |k|", tr_err, tol),
        _le("kernel_matrix Hermitian", herm_err, tol),
        _le("kernel_matrix(+) + kernel_matrix(-) = transverse kernel", sum_err, tol),
    ]
    z = kernel_matrix((0.0, 0.0, 1.0), +1).entries
    expected = np.array([[0.5, -0.5j, 0], [0.5j, 0.5, 0], [0, 0, 0]])
    out.append(_le("kernel_matrix(z, +) explicit entries", float(np.abs(z - expected).max()), 1e-15))
    vals, vecs = np.linalg.eigh(z)
    v = vecs[:, np.argmax(vals)]
    target = np.array([1.0, 1j, 0.0]) / np.sqrt(2)
    out.append(_le("unit-eigenvalue eigenvector along z is (1,i,0)", 1 - abs(np.vdot(target, v)), 1e-14))
    return out


# ---------------------------------------------------------------------------


def gaussian_curl_pair(grid: Grid, sigma: float):
    """D0 = curl(G z), a transverse Gaussian-envelope field, and B0 = 0."""
    X, Y, Z = grid.mesh()
    G = np.exp(-(X * X + Y * Y + Z * Z) / (2 * sigma ** 2))
    D0 = from_function(grid, lambda X, Y, Z: (-Y * G / sigma ** 2, X * G / sigma ** 2, 0 * G))
    return D0, D0 * 0.0


def evolution_suite(n: int = 64, L: float = 16.0, seed: int = 0, t_values=(0.3, 1.1), rel_tol=None,
                    kirchhoff_grid: Grid | None = None) -> list:
    tol = _tol(rel_tol, 1e-12)
    g = Grid(n, L)
    pc = NATURAL
    F = RSField(random_transverse_field(g, seed))
    o0 = observables(F)
    out = []
    for t in t_values:
        o = observables(evolve(F, t))
        for key in ("energy", "photon_number", "n_plus", "n_minus"):
            a, b = getattr(o, key), getattr(o0, key)
            out.append(_le(f"{key} conserved at t={t}", abs(a - b) / abs(b), tol))
    t1, t2 = t_values[0], t_values[-1]
    lhs = evolve(evolve(F, t1), t2).F.spectral().data
    rhs = evolve(F, t1 + t2).F.spectral().data
    out.append(_le(f"group property evolve({t1:g})evolve({t2:g}) = evolve({t1 + t2:g})", _rel(lhs, rhs), tol))

    D0 = random_real_transverse_field(g, seed + 1)
    B0 = random_real_transverse_field(g, seed + 2)
    worst = 0.0
    for t in t_values:
        Da, Ba = rs_split(evolve(rs_compose(D0, B0, pc), t))
        Db, Bb = evolve_db(D0, B0, t, pc)
        worst = max(worst, _rel(Da.data, Db.position().data), _rel(Ba.data, Bb.position().data))
    out.append(_le("evolve vs evolve_db", worst, tol))

    # centred difference in time against -i c curl F
    h, t = 1e-3, t_values[0]
    fd = (evolve(F, t + h).F.position().data - evolve(F, t - h).F.position().data) / (2 * h)
    Ft = evolve(F, t).F.position()
    rhs = -1j * pc.c * curl(Ft).data
    err = float(np.sqrt(np.sum(np.abs(fd - rhs) ** 2) / np.sum(np.abs(rhs) ** 2)))
    kmax = float(g.kappa_abs.max())
    bound = (pc.c * kmax * h) ** 2 / 6
    out.append(check("finite-difference time derivative, relative", err, f"<= (c kmax h)^2/6 = {bound:.3g}", bound,
                     err <= bound))

    kg = kirchhoff_grid or Grid(64, 8.0, 8)
    D0, B0 = gaussian_curl_pair(kg, 0.4)
    tk = 1.0
    Dt, Bt = evolve_db(D0, B0, tk, pc)
    Dt = Dt.position().data
    peak = np.abs(Dt).max()
    kerr = 0.0
    for p in ((1.0, 0.0, 0.0), (0.5, 0.5, 0.5), (0.0, 1.25, 0.25), (-1.25, 0.0, 0.0)):
        idx = tuple(int(round((c + kg.L / 2) / kg.dx)) for c in p)
        pt = np.array([-kg.L / 2 + i * kg.dx for i in idx])
        Dk, _ = kirchhoff_point(D0, B0, pt, tk, pc, grid=kg)
        kerr = max(kerr, float(np.abs(Dk - Dt[(slice(None),) + idx]).max() / peak))
    out.append(_le("kirchhoff_point vs evolve_db at 4 probes (relative to peak)", kerr, max(tol, 1e-2)))

    demo = destroy_demo(Grid(128, 8.0), 1.0, (0.0, 0.05, 0.1, 0.2))
    out += [dict(c, name="destruction: " + c["name"]) for c in demo["checks"]]
    at = next(e["leakage"] for e in demo["report"] if e["t"] == 0.1)
    out.append(check("destruction: leakage at t=0.1 R/c", at, ">= 1e-3", 1e-3, at >= 1e-3))
    return out


# ---------------------------------------------------------------------------


def azimuthal_gaussian(sigma: float):
    """(-y, x, 0) exp(-r^2/2 sigma^2): zero-mean and transverse; as (N,3) -> (N,3)."""
    def f(pts):
        pts = np.asarray(pts, dtype=float)
        G = np.exp(-np.sum(pts * pts, axis=-1) / (2 * sigma ** 2))
        return np.stack([-pts[..., 1] * G, pts[..., 0] * G, 0 * G], axis=-1)
    return f


def _on_grid(grid, fn):
    def comps(X, Y, Z):
        v = fn(np.stack(np.broadcast_arrays(X, Y, Z), axis=-1))
        return tuple(np.moveaxis(v, -1, 0))
    return from_function(grid, comps)


def _snap(grid, p):
    idx = tuple(int(round((c + grid.L / 2) / grid.dx)) for c in p)
    return idx, np.array([-grid.L / 2 + i * grid.dx for i in idx])


def cook_suite(n: int = 128, L: float = 24.0, seed: int = 0, rel_tol=None) -> list:
    """Riesz presets against position-space quadrature, the normalization
    functional against its double-integral form, and Cook densities."""
    tol = _tol(rel_tol, 1e-3)
    g = Grid(n, L)
    sigma = L / 24
    out = []

    # presets on a zero-mean transverse field (no zero-mode offset)
    fa = azimuthal_gaussian(sigma)
    f = _on_grid(g, fa)
    probes = [(0.5, 0.0, 0.0), (1.0, 0.5, 0.0), (0.0, 1.5, 1.5), (-2.0, 1.0, 0.5)]
    for preset, name, pts in ((INV_K, "INV_K", probes), (COOK, "COOK", probes), (NLOC, "NLOC", probes[:2])):
        sm = riesz_smooth(f, preset).position().data.real
        worst = 0.0
        for p in pts:
            idx, pt = _snap(g, sigma * np.array(p))
            ref = np.array([r.value for r in convolve_point_oracle(preset.kernel_exponent, fa, pt, scale=sigma)])
            ref *= preset.kernel_constant
            worst = max(worst, float(np.linalg.norm(sm[(slice(None),) + idx] - ref) / np.linalg.norm(ref)))
        rmax = max(np.linalg.norm(p) for p in pts) * sigma
        out.append(_le(f"{name} preset vs |r-r'|^-{preset.kernel_exponent:g} quadrature, r <= {rmax:.2f}",
                       worst, tol))

    # scalar Gaussian at its centre; the periodic zero mode is restored by its cell average
    s0 = 0.7 * sigma
    gauss = lambda p: np.exp(-np.sum(np.asarray(p) ** 2, axis=-1) / (2 * s0 ** 2)) / (2 * np.pi * s0 ** 2) ** 1.5
    X, Y, Z = g.mesh()
    dens = gauss(np.stack(np.broadcast_arrays(X, Y, Z), axis=-1))
    scal = from_function(g, lambda X, Y, Z: (0 * X, 0 * X, dens))
    mass = float(dens.sum() * g.dx ** 3)
    c = g.shape[0] // 2
    for preset, name in ((INV_K, "INV_K"), (COOK, "COOK")):
        v = riesz_smooth(scal, preset).position().data[2, c, c, c].real
        v += preset.prefactor * cube_mean_power(preset.s) * (2 * np.pi / L) ** (-preset.s) * mass / L ** 3
        ref = convolve_point_oracle(preset.kernel_exponent, gauss, np.zeros(3), scale=s0).value * preset.kernel_constant
        out.append(_le(f"{name} on a normalized Gaussian at its centre", abs(v - ref) / ref, tol))

    # composition and plane-wave eigenmode
    r = random_transverse_field(g, seed)
    twice = riesz_smooth(riesz_smooth(r, 1.0), 1.0).data
    out.append(_le("riesz s=1 twice equals s=2", _rel(twice, riesz_smooth(r, 2.0).data), 1e-13))
    pw = plane_wave(g, (2, 0, 1), (0.0, 1.0, 0.0))
    k0 = float(np.linalg.norm(g.kappa_of(2 * np.pi / L * np.array([2, 0, 1]))))
    out.append(_le("riesz s=1 divides a plane wave by |k0|", _rel(riesz_smooth(pw, 1.0).data, pw.data / k0), 1e-13))

    # normalization functional vs double-integral quadrature
    sn = 2 * sigma / 3
    ng = Grid(min(n, 64), 12 * sn, 8)
    phi = _on_grid(ng, azimuthal_gaussian(sn))

    def curl_phi(p):
        x, y, z = p[..., 0], p[..., 1], p[..., 2]
        s2 = sn * sn
        G = np.exp(-(x * x + y * y + z * z) / (2 * s2))
        return np.stack([x * z * G, y * z * G, G * (2 * s2 - x * x - y * y)], axis=-1) / s2

    ref = gaussian_norm_oracle(curl_phi, sn).value
    out.append(_le("norm functional vs position-space double integral", abs(norm_functional(phi) - ref) / ref, tol))
    out.append(_le("normalize is idempotent", abs(norm_functional(normalize(normalize(wavefunction(phi))).phi) - 1), 1e-14))

    # Cook densities
    region = RegionSpec((0.0, 0.0, 0.0), L / 8)
    psi = bump_wavefunction(region, (0.0, 0.0, 1.0), g)
    halves = 0.0
    states = [psi, dual_wavefunction(psi),
              normalize(wavefunction(transverse_project(random_transverse_field(g, seed + 1))))]
    for w in states:
        ne, nm = number_density(w)
        halves = max(halves, abs(ne.sum() * g.dx ** 3 - 0.5), abs(nm.sum() * g.dx ** 3 - 0.5))
    out.append(_le("electric and magnetic number integrals equal 1/2 (3 states)", halves, 1e-10))

    w = nloc_wavefunction(psi)
    ne, nm = number_density(w)
    p = psi.phi.position()
    mass = float(np.sum(np.abs(p.data) ** 2) * g.dx ** 3)
    ref_m = np.sum(np.abs(p.data) ** 2, axis=0) / (2 * mass)
    ref_e = np.sum(np.abs(apply_helicity(p).position().data) ** 2, axis=0) / (2 * mass)
    inside = g.radius_from(region.center) <= region.radius
    out.append(_le("nloc state: n_magnetic = |psi_R|^2 inside R (relative to peak)",
                   float(np.abs(nm - ref_m)[inside].max() / ref_m.max()), tol))
    out.append(_le("nloc state: n_magnetic outside R (relative to peak)", float(nm[~inside].max() / ref_m.max()), 1e-8))
    out.append(_le("nloc state: n_electric = |chi psi_R|^2 (relative to peak)",
                   float(np.abs(ne - ref_e).max() / ref_e.max()), tol))
    tail = float(ne[~inside].max() / ref_e.max())
    out.append(check("nloc state: n_electric has an exterior tail", tail, ">= 1e-6", 1e-6, tail >= 1e-6))
    return out


def run_suite(name: str, **kw) -> list:
    fn = {"quad": quad_suite, "helicity": helicity_suite, "evolution": evolution_suite, "cook": cook_suite}.get(name)
    if fn is None:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return fn(**kw)
