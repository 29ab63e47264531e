"""Shell-averaged radial profiles and log-space tail fits."""

from __future__ import annotations

import csv
import enum
import json
from dataclasses import dataclass

import numpy as np

from ..lattice import ComplexField3


@dataclass(frozen=True, eq=False)
class RadialProfile:
    center: tuple
    radii: np.ndarray
    amplitude: np.ndarray
    counts: np.ndarray | None = None
    trusted_radius: float | None = None  # None for profiles of analytic functions

    def __post_init__(self):
        r, a = np.asarray(self.radii, float), np.asarray(self.amplitude, float)
        if r.shape != a.shape or r.ndim != 1:
            raise ValueError("radii and amplitude must be 1-D arrays of equal length")
        if np.any(np.diff(r) <= 0):
            raise ValueError("radii must be strictly increasing")
        if np.any(a < 0):
            raise ValueError("amplitudes must be non-negative")
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "amplitude", a)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "amplitude"])
            for r, a in zip(self.radii, self.amplitude):
                w.writerow([repr(float(r)), repr(float(a))])


def radial_profile(f: ComplexField3 | np.ndarray, center=(0.0, 0.0, 0.0), bins: int = 32,
                   r_max: float | None = None, grid=None) -> RadialProfile:
    """Shell RMS of |f| over ``bins`` equal-width shells on [0, r_max], r_max <= L/4.

    ``f`` may be a vector field or a real array of per-site magnitudes (then
    ``grid`` is required).  Distances use the nearest periodic image.
    """
    if bins < 4:
        raise ValueError("need at least 4 bins")
    if isinstance(f, ComplexField3):
        grid = f.grid
        mag = f.position().magnitude()
    else:
        if grid is None:
            raise ValueError("grid is required for array input")
        mag = np.abs(np.asarray(f, dtype=float))
    r_max = grid.trusted_radius if r_max is None else min(r_max, grid.trusted_radius)
    X, Y, Z = grid.mesh(center)
    L = grid.L
    X, Y, Z = (a - L * np.round(a / L) for a in (X, Y, Z))
    r = np.sqrt(X * X + Y * Y + Z * Z).ravel()
    edges = np.linspace(0.0, r_max, bins + 1)
    idx = np.digitize(r, edges) - 1
    ok = (idx >= 0) & (idx < bins)
    counts = np.bincount(idx[ok], minlength=bins)
    sums = np.bincount(idx[ok], weights=mag.ravel()[ok] ** 2, minlength=bins)
    amp = np.sqrt(sums / np.maximum(counts, 1))
    centers = 0.5 * (edges[1:] + edges[:-1])
    return RadialProfile(tuple(center), centers, amp, counts, grid.trusted_radius)


def sample_profile(fn, radii) -> RadialProfile:
    """Profile of an analytic radial function at the given radii (no binning)."""
    radii = np.asarray(radii, dtype=float)
    return RadialProfile((0.0, 0.0, 0.0), radii, np.abs(np.asarray(fn(radii), dtype=float)))


class TailModel(enum.Enum):
    POWER_LAW = "power_law"  # A r^-p
    SQRT_EXP = "sqrt_exp"  # A exp(-sqrt(2r/l)) / r


@dataclass(frozen=True)
class TailFit:
    model: TailModel
    A: float
    p_or_l: float
    fit_window: tuple
    residual: float
    n_points: int

    def to_dict(self):
        return {"model": self.model.value, "A": self.A, "p_or_l": self.p_or_l,
                "r_min": self.fit_window[0], "r_max": self.fit_window[1], "residual": self.residual}

    def to_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)


def local_maxima(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    return np.where((a[1:-1] > a[:-2]) & (a[1:-1] >= a[2:]))[0] + 1


def fit_tail(p: RadialProfile, model: TailModel | str, window=None, min_bins: int = 8) -> TailFit:
    """Least squares in log space over ``window`` (default: whole trusted range).

    PowerLaw fits log a = log A - p log r.  SqrtExp fits the envelope through
    the local maxima (all points when the profile decreases monotonically),
    log(r a) = log A - sqrt(2/l) sqrt(r).
    """
    model = TailModel(model)
    r, a = p.radii, p.amplitude
    lo, hi = window if window is not None else (r[0], r[-1])
    if p.trusted_radius is not None and hi > p.trusted_radius * (1 + 1e-12):
        raise ValueError(f"fit window extends past the trusted radius {p.trusted_radius}")
    sel = (r >= lo) & (r <= hi)
    if sel.sum() < min_bins:
        raise ValueError(f"fit window holds {int(sel.sum())} bins, need {min_bins}")
    rs, as_ = r[sel], a[sel]
    if np.any(as_ <= 0):
        raise ValueError("fit window contains zero amplitudes")
    if model is TailModel.POWER_LAW:
        x, y = np.log(rs), np.log(as_)
    else:
        peaks = local_maxima(as_)
        if np.all(np.diff(as_) < 0):
            peaks = np.arange(len(as_))  # a monotone profile is its own envelope
        elif len(peaks) < 3:
            raise ValueError(f"only {len(peaks)} local maxima in the window, need 3")
        rs, as_ = rs[peaks], as_[peaks]
        x, y = np.sqrt(rs), np.log(rs * as_)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((intercept + slope * x - y) ** 2)))
    if model is TailModel.POWER_LAW:
        param = -slope
    else:
        if slope >= 0:
            raise ValueError("envelope does not decay in the fit window")
        param = 2.0 / slope ** 2
    return TailFit(model, float(np.exp(intercept)), float(param), (float(lo), float(hi)), residual, int(len(x)))
