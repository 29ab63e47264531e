"""Diffuse states with square-root exponential tails.

    psi_D(r) = m Im[exp(-2 sqrt(1 - i r/l))] / r = m exp(-kappa_+) sin(kappa_-) / r
    kappa_+- = sqrt(2) sqrt(sqrt(1 + (r/l)^2) +- 1)

and its helicity image ``chi psi_D = (r_hat x m) g(r)`` with three independent
evaluations of the radial factor ``g``.
"""

from __future__ import annotations

import enum
import math

import numpy as np
from scipy import integrate

from ..lattice import ComplexField3, Domain, Grid
from ..quadrature import sqrt_split
from .wavefunction import Flavor, WaveFunction, norm_functional


class ChiMethod(enum.Enum):
    CLOSED_FORM = "closed_form"
    REAL_FORM = "real_form"
    RADIAL_QUADRATURE = "radial_quadrature"


def _check_l(l):
    if not l > 0:
        raise ValueError(f"scale l must be positive, got {l}")


def kappa_pm(r, l):
    """(kappa_+, kappa_-), using kappa_+ kappa_- = 2 r/l for the small one."""
    _check_l(l)
    x = np.asarray(r, dtype=float) / l
    kp = np.sqrt(2.0) * np.sqrt(np.sqrt(1.0 + x * x) + 1.0)
    return kp, 2.0 * x / kp


def psi_D_radial(r, l):
    """Scalar factor of psi_D (per unit |m|); finite at r = 0 with value e^-2 / l."""
    kp, km = kappa_pm(r, l)
    # sin(km)/r = sinc(km) * km/r and km/r = 2/(l kp)
    return np.exp(-kp) * np.sinc(km / np.pi) * 2.0 / (l * kp)


def _g_closed(r, l):
    a, b = sqrt_split(1.0, -r / l)  # sqrt(1 - i r/l)
    s = complex(a, b)
    val = (1j - l / (2 * r) - (l / r) * s) * np.exp(-2 * s)
    return val.imag / r


def _g_real(r, l):
    kp, km = kappa_pm(r, l)
    q = l / (2 * r)
    return math.exp(-kp) / r * ((1 + q * km) * math.cos(km) - q * (1 + kp) * math.sin(km))


def _g_quadrature(r, l, epsrel=1e-10):
    """h(r) = (1/r) int sin(kr) k^-5/2 w(k) dk, g = h'(r)/sqrt(pi l), w = exp(-kl - 1/(kl)).

    The oscillatory k-integrals use QUADPACK's Fourier-weight rule on a
    finite range; w decays like exp(-kl), so the cut at 60/l is far below
    round-off.
    """
    kmax = 60.0 / l

    def w(k, power):
        return k ** power * math.exp(-k * l - 1.0 / (k * l)) if k > 0 else 0.0

    kw = dict(limit=500, epsabs=0.0, epsrel=epsrel)
    i1 = integrate.quad(w, 0.0, kmax, args=(-2.5,), weight="sin", wvar=r, **kw)[0]
    i2 = integrate.quad(w, 0.0, kmax, args=(-1.5,), weight="cos", wvar=r, **kw)[0]
    h = i1 / r
    hp = -h / r + i2 / r
    return hp / math.sqrt(math.pi * l)


_METHODS = {
    ChiMethod.CLOSED_FORM: _g_closed,
    ChiMethod.REAL_FORM: _g_real,
    ChiMethod.RADIAL_QUADRATURE: _g_quadrature,
}


def chi_psi_D(r: float, l: float, method: ChiMethod | str = ChiMethod.CLOSED_FORM) -> float:
    """Radial factor g(r) of chi psi_D = (r_hat x m) g(r), per unit |m|."""
    _check_l(l)
    if not r > 0:
        raise ValueError("chi psi_D is evaluated off-centre only (r > 0)")
    return float(_METHODS[ChiMethod(method)](float(r), float(l)))


def chi_psi_D_radial(r, l):
    """Vectorized real form of g(r); g(0) = 0."""
    r = np.asarray(r, dtype=float)
    kp, km = kappa_pm(r, l)
    safe = np.where(r > 0, r, 1.0)
    q = l / (2 * safe)
    g = np.exp(-kp) / safe * ((1 + q * km) * np.cos(km) - q * (1 + kp) * np.sin(km))
    return np.where(r > 0, g, 0.0)


def psi_D_psi_quadrature(r, l, epsrel=1e-10):
    """Independent k-space evaluation of psi_D_radial: (1/(r sqrt(pi l))) int sin(kr) k^-3/2 w dk."""
    _check_l(l)
    if not r > 0:
        raise ValueError("r must be positive")
    kmax = 60.0 / l
    v = integrate.quad(lambda k: k ** -1.5 * math.exp(-k * l - 1.0 / (k * l)) if k > 0 else 0.0, 0.0, kmax, weight="sin", wvar=r, limit=500, epsabs=0.0, epsrel=epsrel)[0]
    return v / (r * math.sqrt(math.pi * l))


# ---------------------------------------------------------------------------
# lattice samples


def _vector_samples(grid, center, m, radial, cross):
    X, Y, Z = grid.mesh(center)
    r = np.sqrt(X * X + Y * Y + Z * Z)
    m = np.asarray(m, dtype=float)
    f = radial(r)
    if cross:
        safe = np.where(r > 0, r, 1.0)
        ux, uy, uz = X / safe, Y / safe, Z / safe
        comps = (uy * m[2] - uz * m[1], uz * m[0] - ux * m[2], ux * m[1] - uy * m[0])
    else:
        comps = (m[0], m[1], m[2])
    data = np.stack([np.broadcast_to(c * f, grid.shape) for c in comps]).astype(np.complex128)
    return ComplexField3._own(grid, Domain.POSITION, data)


def psi_D(l: float, m, g: Grid, center=(0.0, 0.0, 0.0)) -> WaveFunction:
    """Lattice samples of m psi_D.

    The sampled field is the literal m * scalar profile, which carries a
    longitudinal part; the normalization functional and chi see only its
    transverse part.  ``norm`` holds the functional of the raw samples.
    """
    _check_l(l)
    if l / g.dx < 4:
        raise ValueError(f"l={l} is resolved by fewer than 4 cells (dx={g.dx})")
    phi = _vector_samples(g, center, m, lambda r: psi_D_radial(r, l), cross=False)
    return WaveFunction(phi, Flavor.ELECTRIC, norm_functional(phi))


def chi_psi_D_field(l: float, m, g: Grid, center=(0.0, 0.0, 0.0)) -> ComplexField3:
    """Lattice samples of the analytic chi psi_D."""
    _check_l(l)
    return _vector_samples(g, center, m, lambda r: chi_psi_D_radial(r, l), cross=True)
