"""Continuum footprint tails of psi = curl(f(r) m) for radial compact f.

Outside the support s <= a < r,

    |grad| f = -Laplacian(K * f),   K = 1/(2 pi^2 r^2)
    r (K * f)(r) = v(r) = (1/pi) int_0^a s f(s) log((r + s)/(r - s)) ds

so h = |grad| f = -v''/r and the delocalized footprint is
``curl(h m) = h'(r) r_hat x m`` with h' = v''/r^2 - v'''/r.  Only smooth 1-D
integrals over the support remain, which lets tails be sampled decades past
any lattice box.
"""

from __future__ import annotations

import numpy as np
from scipy import integrate


def _moment_integral(f, support, kernel, r):
    # sign-changing f (zero-mean combinations) cancels to well below the
    # integrand scale, so the tolerance is absolute in that scale
    scale = abs(kernel(0.5 * support, r)) * support ** 2
    return integrate.quad(lambda s: s * f(s) * kernel(s, r), 0.0, support,
                          epsabs=1e-15 * scale, epsrel=1e-12, limit=200, full_output=1)[0]


# second and third r-derivatives of log((r+s)/(r-s)), combined to avoid cancellation
def _v2(f, a, r):
    return _moment_integral(f, a, lambda s, r: 4 * r * s / (r * r - s * s) ** 2, r) / np.pi


def _v3(f, a, r):
    return _moment_integral(f, a, lambda s, r: -4 * s * (3 * r * r + s * s) / (r * r - s * s) ** 3, r) / np.pi


def delocalized_radial(r, f, support):
    """h'(r) for r > support: the exterior radial factor of curl(|grad| f m).

    The shell RMS of the vector field over directions is sqrt(2/3) |h'| |m|.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r <= support):
        raise ValueError("the exterior evaluator needs r beyond the support")
    out = np.empty_like(r)
    for i, x in enumerate(r):
        out[i] = _v2(f, support, x) / x ** 2 - _v3(f, support, x) / x
    return out


def bump_function(support: float):
    def f(s):
        x = (s / support) ** 2
        return np.exp(-1.0 / (1.0 - x)) if x < 1.0 else 0.0
    return f


def zero_mean_bump_function(support: float, fraction: float = 0.5):
    """f_a - c f_(fraction a) with int f d^3r = 0 (continuum weights)."""
    fa, fb = bump_function(support), bump_function(support * fraction)
    ma = integrate.quad(lambda s: s * s * fa(s), 0.0, support, epsrel=1e-13)[0]
    mb = integrate.quad(lambda s: s * s * fb(s), 0.0, support * fraction, epsrel=1e-13)[0]
    c = ma / mb
    return lambda s: fa(s) - c * fb(s)
