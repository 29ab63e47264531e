"""Photon localization toolkit: helicity operators on periodic lattices, exact
Maxwell evolution, localized and diffuse one-photon states, and quadrature oracles."""

from .fieldio import FieldFormatError, field_io, read_field, write_field
from .helicity import (
    COOK,
    INV_K,
    NLOC,
    KernelMatrix,
    RieszPreset,
    apply_helicity,
    curl,
    divergence,
    helicity_project,
    kernel_matrix,
    multiply_kabs,
    riesz_smooth,
    transverse_project,
)
from .lattice import (
    NATURAL,
    ComplexField3,
    Direction,
    Domain,
    Grid,
    PhysicalConstants,
    RegionSpec,
    from_function,
    inner,
    make_grid,
    plane_wave,
    random_real_transverse_field,
    random_transverse_field,
    transform,
    zeros,
)
from .maxwell import (
    Observables,
    RSField,
    evolve,
    evolve_db,
    is_transverse,
    kirchhoff_point,
    observables,
    region_leakage,
    rs_compose,
    rs_split,
)

__version__ = "0.1.0"
