"""Localized one-photon states, their footprints, diffuse states and tail measurement."""

from .coherent import coherent_expectation, coherent_leakage, compact_transverse_field, polynomial_bump
from .diffuse import (
    ChiMethod,
    chi_psi_D,
    chi_psi_D_field,
    chi_psi_D_radial,
    kappa_pm,
    psi_D,
    psi_D_psi_quadrature,
    psi_D_radial,
)
from .footprints import (
    FootprintFlavor,
    FootprintPair,
    destruction_demo,
    footprints,
    localization_destruction_demo,
)
from .moments import cartesian_moments, relative_moment, vanish_moments
from .radial import bump_function, delocalized_radial, zero_mean_bump_function
from .tails import RadialProfile, TailFit, TailModel, fit_tail, local_maxima, radial_profile, sample_profile
from .wavefunction import (
    BumpSource,
    Flavor,
    WaveFunction,
    bump_profile,
    bump_wavefunction,
    dual_wavefunction,
    electric_phi,
    nloc_wavefunction,
    norm_functional,
    normalize,
    number_density,
    rs_wavefunction,
    stencil_margin,
    wavefunction,
)
