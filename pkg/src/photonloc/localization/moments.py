"""Cartesian moments of curl(psi) and moment-cancelling bump combinations."""

from __future__ import annotations

import itertools
from dataclasses import replace

import numpy as np

from ..helicity import curl
from ..lattice import ComplexField3
from .wavefunction import BumpSource, WaveFunction, _curl_of, _radial_source, normalize


def cartesian_moments(c: ComplexField3, order: int, center=(0.0, 0.0, 0.0)) -> dict:
    """{multi-index: int x^alpha c(x) d^3x} for all |alpha| = order (3-vectors)."""
    g = c.grid
    data = c.position().data
    X, Y, Z = g.mesh(center)
    axes = (X, Y, Z)
    out = {}
    for combo in itertools.combinations_with_replacement(range(3), order):
        w = np.ones(g.shape)
        for ax in combo:
            w = w * axes[ax]
        out[combo] = np.array([np.sum(w * data[i]) for i in range(3)]) * g.dx ** 3
    return out


def relative_moment(c: ComplexField3, order: int, scale: float, center=(0.0, 0.0, 0.0)) -> float:
    """Largest |moment| divided by int |c| * scale^order."""
    moments = cartesian_moments(c, order, center)
    mass = float(np.sum(c.position().magnitude()) * c.grid.dx ** 3)
    if mass == 0:
        return 0.0
    worst = max(float(np.max(np.abs(v))) for v in moments.values())
    return worst / (mass * scale ** order)


def vanish_moments(psi_R: WaveFunction, order: int, tol: float = 1e-10) -> WaveFunction:
    """Compact state whose curl has vanishing moments up to ``order``.

    Orders 0 and 1 hold for every psi = curl(f m) with radial f, so the input
    is returned after verification.  Order 2 additionally needs int f = 0,
    reached with f_R - a f_(R/2) where ``a`` matches the lattice sums.
    """
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    src = psi_R.source
    if src is None:
        raise ValueError("infeasible: psi_R carries no bump basis to combine (build it with bump_wavefunction)")
    g = psi_R.phi.grid
    out = psi_R
    if order == 2:
        if src.support / 2 < 2 * g.dx:
            raise ValueError("infeasible: the half-radius bump is narrower than two cells")
        base = _radial_source(g, replace(src, components=((1.0, 1.0),)))
        half = _radial_source(g, replace(src, components=((1.0, 0.5),)))
        a = float(base.sum() / half.sum())
        new_src = replace(src, components=((1.0, 1.0), (-a, 0.5)))
        psi = _curl_of(g, _radial_source(g, new_src), src.m)
        out = normalize(replace(psi_R, phi=psi, source=new_src))
    c = curl(out.phi.position())
    for k in range(order + 1):
        rel = relative_moment(c, k, src.support, src.region.center)
        if rel > tol:
            raise ValueError(f"moment of order {k} is {rel:.3e}, above {tol}")
    return out
