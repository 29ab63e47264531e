"""Riemann-Silberstein fields, exact free evolution and global observables."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy import ndimage
from scipy.integrate import lebedev_rule

from .helicity import _cross_kappa, _helicity, _transverse, curl
from .lattice import NATURAL, ComplexField3, Domain, PhysicalConstants, RegionSpec


@dataclass(frozen=True, eq=False)
class RSField:
    """F = D/sqrt(2 eps) + i B/sqrt(2 mu), tagged with its evolution time."""

    F: ComplexField3
    constants: PhysicalConstants = NATURAL
    t: float = 0.0


def rs_compose(D: ComplexField3, B: ComplexField3, pc: PhysicalConstants = NATURAL,
               rtol: float = 1e-12) -> RSField:
    D, B = D.position(), B.position()
    if not (D.is_real(rtol) and B.is_real(rtol)):
        raise ValueError("rs_compose needs real-valued D and B")
    data = D.data.real / np.sqrt(2 * pc.epsilon) + 1j * B.data.real / np.sqrt(2 * pc.mu)
    return RSField(D.with_data(data), pc)


def rs_split(F: RSField):
    """Recover (D, B) as real position-domain fields."""
    f = F.F.position().data
    pc = F.constants
    D = F.F.with_data(np.sqrt(2 * pc.epsilon) * f.real, Domain.POSITION)
    B = F.F.with_data(np.sqrt(2 * pc.mu) * f.imag, Domain.POSITION)
    return D, B


def _phase_factors(grid, ct):
    k = grid.kappa_abs
    return np.cos(k * ct), np.sin(k * ct)


def evolve(F: RSField, t: float) -> RSField:
    """Exact solution of dF/dt = -i c curl F.

    Positive-helicity modes pick up exp(-i c|k| t), negative ones exp(+i c|k| t);
    written as cos(c|k|t) F - i sin(c|k|t) chi F.
    """
    if t == 0:
        return RSField(F.F, F.constants, F.t)
    f = F.F.spectral()
    cos, sin = _phase_factors(f.grid, F.constants.c * t)
    out = cos * f.data - 1j * sin * _helicity(f.data, f.grid)
    return RSField(f.with_data(out).to(F.F.domain), F.constants, F.t + t)


def evolve_db(D0: ComplexField3, B0: ComplexField3, t: float, pc: PhysicalConstants = NATURAL):
    """Propagate (D, B) directly from initial data.

        D~(t) = cos(ckt) D~0 + sqrt(eps/mu) sin(ckt)/k (i k x B~0)
        B~(t) = cos(ckt) B~0 - sqrt(mu/eps) sin(ckt)/k (i k x D~0)

    Complex input is accepted and propagated linearly (footprint pairs carry
    complex prefactors).
    """
    if t == 0:
        return D0, B0
    grid = D0.grid
    Ds, Bs = D0.spectral(), B0.spectral()
    cos, sin = _phase_factors(grid, pc.c * t)
    k = grid.kappa_abs
    sinc = np.where(grid.active, sin / np.where(grid.active, k, 1.0), 0.0)
    D = cos * Ds.data + np.sqrt(pc.epsilon / pc.mu) * sinc * _cross_kappa(Bs.data, grid)
    B = cos * Bs.data - np.sqrt(pc.mu / pc.epsilon) * sinc * _cross_kappa(Ds.data, grid)
    return Ds.with_data(D).to(D0.domain), Bs.with_data(B).to(B0.domain)


def _sampler(field, order):
    """Callable (N,3) points -> (N,3) values, periodic spline interpolation."""
    if callable(field):
        return field
    f = field.position()
    g = f.grid
    comps = []
    for i in range(3):
        re = ndimage.spline_filter(f.data[i].real, order=order, mode="grid-wrap") if order > 1 else f.data[i].real
        im = ndimage.spline_filter(f.data[i].imag, order=order, mode="grid-wrap") if order > 1 else f.data[i].imag
        comps.append((re, im))

    def sample(points):
        idx = ((np.asarray(points, dtype=float) + g.L / 2) / g.dx).T
        out = np.empty((idx.shape[1], 3), dtype=np.complex128)
        for i, (re, im) in enumerate(comps):
            kw = dict(order=order, mode="grid-wrap", prefilter=False)
            out[:, i] = ndimage.map_coordinates(re, idx, **kw) + 1j * ndimage.map_coordinates(im, idx, **kw)
        return out

    return sample


def _sphere_mean(sample, r, rho, nodes, weights):
    pts = r[None, :] + rho * nodes
    return (weights[:, None] * sample(pts)).sum(axis=0) / (4 * np.pi)


def kirchhoff_point(D0, B0, r, t: float, pc: PhysicalConstants = NATURAL, *,
                    interp_order: int = 3, lebedev_order: int = 41, grid=None):
    """Point value of (D, B) at time t from spherical means of the initial data.

    ``D0``/``B0`` are lattice fields (interpolated with periodic splines of
    ``interp_order``; 1 is trilinear) or callables mapping (N,3) points to
    (N,3) values.  For callables, ``grid`` is only used for the trusted-radius
    check and the curls must be supplied by passing fields instead.
    """
    r = np.asarray(r, dtype=float)
    ct = pc.c * t
    g = grid if grid is not None else getattr(D0, "grid", None)
    if g is not None and ct >= g.trusted_radius:
        raise ValueError(f"ct={ct} exceeds the trusted radius {g.trusted_radius}")
    sD, sB = _sampler(D0, interp_order), _sampler(B0, interp_order)
    if ct == 0:
        return sD(r[None])[0], sB(r[None])[0]
    if callable(D0) or callable(B0):
        raise TypeError("time-dependent evaluation needs lattice fields for the curls")
    # time derivatives at t=0 from the first-order system
    dD = _sampler(curl(B0) * (pc.c * np.sqrt(pc.epsilon / pc.mu)), interp_order)
    dB = _sampler(curl(D0) * (-pc.c * np.sqrt(pc.mu / pc.epsilon)), interp_order)
    nodes, weights = lebedev_rule(lebedev_order)
    nodes = nodes.T
    h = 1e-4 * max(ct, D0.grid.dx)

    def wave(u0, u1):
        m = _sphere_mean(u0, r, ct, nodes, weights)
        dm = (_sphere_mean(u0, r, ct + h, nodes, weights) - _sphere_mean(u0, r, ct - h, nodes, weights)) / (2 * h)
        return m + ct * dm + t * _sphere_mean(u1, r, ct, nodes, weights)

    return wave(sD, dD), wave(sB, dB)


@dataclass(frozen=True)
class Observables:
    energy: float
    photon_number: float
    n_plus: float
    n_minus: float
    e_energy: float
    m_energy: float

    def to_dict(self):
        return asdict(self)


def observables(F: RSField) -> Observables:
    f = F.F.spectral()
    g, pc = f.grid, F.constants
    w = g.dx ** 3
    data = f.data
    inv_k = np.where(g.active, 1.0 / np.where(g.active, g.kappa_abs, 1.0), 0.0)
    chi = _helicity(data, g)
    plus = 0.5 * (data * g.active + chi)
    minus = 0.5 * (data * g.active - chi)

    def number(a):
        return float(np.sum(np.abs(a) ** 2 * inv_k) * w / (pc.hbar * pc.c))

    energy = float(np.vdot(data, data).real * w)
    n_plus, n_minus = number(plus), number(minus)
    # d ~ F+ + conj(F-), b ~ F+ - conj(F-) in position space
    fp = f.with_data(plus).position().data
    fm = f.with_data(minus).position().data
    cross = float(np.sum(fp * fm).real * w)
    e_energy = 0.5 * (np.vdot(fp, fp).real * w + np.vdot(fm, fm).real * w) + cross
    m_energy = 0.5 * (np.vdot(fp, fp).real * w + np.vdot(fm, fm).real * w) - cross
    return Observables(energy, n_plus + n_minus, n_plus, n_minus, float(e_energy), float(m_energy))


def _min_image_radius(grid, center):
    X, Y, Z = grid.mesh(center)
    L = grid.L
    X, Y, Z = (a - L * np.round(a / L) for a in (X, Y, Z))
    return np.sqrt(X * X + Y * Y + Z * Z)


def region_leakage(f: ComplexField3, R: RegionSpec, expansion: float = 0.0) -> float:
    """max |f| outside radius + expansion, divided by the global max |f|."""
    m = f.position().magnitude()
    r = _min_image_radius(f.grid, R.center)
    exterior = r > R.radius + expansion
    if not exterior.any():
        raise ValueError("no lattice sites lie outside the expanded region")
    peak = m.max()
    if peak == 0:
        return 0.0
    return float(m[exterior].max() / peak)


def is_transverse(f: ComplexField3, tol: float = 1e-12) -> bool:
    s = f.spectral()
    d = _transverse(s.data, s.grid)
    scale = np.sqrt(np.vdot(s.data, s.data).real) or 1.0
    return bool(np.max(np.abs(d - s.data)) <= tol * scale)
