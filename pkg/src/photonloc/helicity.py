"""Helicity operator, projectors, curl and Riesz smoothing on lattice fields.

All nonlocal operators are diagonal Fourier multipliers built from the grid's
derivative symbol ``kappa``.  Results come back in the domain of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import ComplexField3, Domain


def _spectral_map(f: ComplexField3, fn) -> ComplexField3:
    g = f.spectral()
    out = g.with_data(fn(g.data, g.grid))
    return out.to(f.domain)


def _cross_kappa(data, grid, factor=1.0):
    """(i kappa x v) * factor, componentwise on spectral data."""
    kx, ky, kz = grid.kappa()
    vx, vy, vz = data
    out = np.empty_like(data)
    out[0] = 1j * (ky * vz - kz * vy) * factor
    out[1] = 1j * (kz * vx - kx * vz) * factor
    out[2] = 1j * (kx * vy - ky * vx) * factor
    return out


def _stencil_derivative(a: np.ndarray, axis: int, grid) -> np.ndarray:
    out = np.zeros_like(a)
    for shift, w in grid.stencil():
        out += w * (np.roll(a, -shift, axis=axis) - np.roll(a, shift, axis=axis))
    return out


def curl(f: ComplexField3) -> ComplexField3:
    """Discrete curl.

    Position-domain input on a finite-difference grid is differentiated with
    the stencil directly, so the output is exactly zero wherever the input
    vanishes on the whole stencil neighbourhood.
    """
    g = f.grid
    if f.domain is Domain.POSITION and g.order != 0:
        vx, vy, vz = f.data
        d = lambda a, ax: _stencil_derivative(a, ax, g)  # noqa: E731
        out = np.empty_like(f.data)
        out[0] = d(vz, 1) - d(vy, 2)
        out[1] = d(vx, 2) - d(vz, 0)
        out[2] = d(vy, 0) - d(vx, 1)
        return f.with_data(out)
    return _spectral_map(f, lambda data, grid: _cross_kappa(data, grid))


def divergence(f: ComplexField3) -> np.ndarray:
    """Spectral divergence symbol kappa.F~ (complex array over modes)."""
    s = f.spectral()
    kx, ky, kz = s.grid.kappa()
    return 1j * (kx * s.data[0] + ky * s.data[1] + kz * s.data[2])


def _transverse(data, grid):
    kx, ky, kz = grid.kappa()
    k2 = np.where(grid.active, grid.kappa2, 1.0)
    div = (kx * data[0] + ky * data[1] + kz * data[2]) / k2
    out = np.empty_like(data)
    out[0] = data[0] - kx * div
    out[1] = data[1] - ky * div
    out[2] = data[2] - kz * div
    out *= grid.active
    return out


def transverse_project(f: ComplexField3) -> ComplexField3:
    """Projector delta_ij - k_i k_j / k^2; the zero mode maps to zero."""
    return _spectral_map(f, _transverse)


def _helicity(data, grid):
    inv = np.where(grid.active, 1.0 / np.where(grid.active, grid.kappa_abs, 1.0), 0.0)
    return _cross_kappa(data, grid, inv)


def apply_helicity(f: ComplexField3, project: bool = False) -> ComplexField3:
    """chi = i k x / |k|.  With ``project`` the input is made transverse first."""
    if project:
        return _spectral_map(f, lambda d, g: _helicity(_transverse(d, g), g))
    return _spectral_map(f, _helicity)


def helicity_project(f: ComplexField3, sign: int) -> ComplexField3:
    """P+- = (1 +- chi)/2 acting on a transverse field."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return _spectral_map(f, lambda d, g: 0.5 * (d * g.active + sign * _helicity(d, g)))


@dataclass(frozen=True)
class RieszPreset:
    """Multiplier prefactor * |k|^-s, i.e. convolution with a |r|^(s-3) kernel."""

    s: float
    prefactor: float
    kernel_exponent: float
    kernel_constant: float


# kernel constants as they appear in the position-space convolutions:
#   1/(2 pi^2 r^2), 1/(8 pi^1.5 r^2.5), 1/(2 pi^1.5 r^1.5)
INV_K = RieszPreset(1.0, 1.0, 2.0, 1.0 / (2 * np.pi ** 2))
COOK = RieszPreset(0.5, 1.0 / np.sqrt(2.0), 2.5, 1.0 / (8 * np.pi ** 1.5))
NLOC = RieszPreset(1.5, np.sqrt(2.0), 1.5, 1.0 / (2 * np.pi ** 1.5))


def riesz_multiplier(grid, s: float, prefactor: float = 1.0, kabs=None) -> np.ndarray:
    kabs = grid.kappa_abs if kabs is None else kabs
    safe = np.where(kabs > 0, kabs, 1.0)
    return np.where(kabs > 0, prefactor * safe ** (-s), 0.0)


def riesz_smooth(f: ComplexField3, s: float | RieszPreset, prefactor: float = 1.0) -> ComplexField3:
    """Apply prefactor * |k|^-s (zero mode -> 0).  ``s`` may be a preset."""
    if isinstance(s, RieszPreset):
        s, prefactor = s.s, s.prefactor
    if not 0 < s < 3:
        raise ValueError(f"Riesz exponent s must lie in (0, 3), got {s}")
    return _spectral_map(f, lambda d, g: d * riesz_multiplier(g, s, prefactor))


def multiply_kabs(f: ComplexField3, power: float = 1.0) -> ComplexField3:
    """|k|^power multiplier (power >= 0), used for the d-side matrix elements."""
    return _spectral_map(f, lambda d, g: d * g.kappa_abs ** power)


@dataclass(frozen=True)
class KernelMatrix:
    k: tuple
    sign: int
    entries: np.ndarray

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)


_LEVI = np.zeros((3, 3, 3))
_LEVI[0, 1, 2] = _LEVI[1, 2, 0] = _LEVI[2, 0, 1] = 1.0
_LEVI[0, 2, 1] = _LEVI[2, 1, 0] = _LEVI[1, 0, 2] = -1.0


def kernel_matrix(k, sign: int) -> KernelMatrix:
    """c~_ij^(+-)(k) = (delta_ij k^2 - k_i k_j)/(2k) +- (i/2) eps_ilj k_l."""
    k = np.asarray(k, dtype=float)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    kk = float(np.sqrt(k @ k))
    if kk == 0.0:
        raise ValueError("kernel matrix is undefined at k = 0")
    sym = (np.eye(3) * kk * kk - np.outer(k, k)) / (2 * kk)
    anti = 0.5j * sign * np.einsum("ilj,l->ij", _LEVI, k)
    return KernelMatrix(tuple(k), sign, sym + anti)
