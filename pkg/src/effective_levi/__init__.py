"""Exact algorithms for Levi decompositions, heights and reduction in SL_N."""

from .errors import (
    DependentBasisError,
    DimensionError,
    EffectiveLeviError,
    InfeasibleError,
    InvariantViolation,
    NotInAlgebraError,
    NotNilpotentError,
    PreconditionError,
    RankDeficientError,
    ResourceLimitError,
)
from .heights import (
    SElement,
    ht_adjoint,
    ht_bounds_from_profile,
    ht_real,
    ht_S,
    ht_S_direct,
    injectivity_radius_lower,
    siegel_reduce,
)
from .levi import effective_levi, levi_failures, standardize_radical
from .lie import (
    LieSubalgebra,
    eigenvalue_product,
    height,
    height_subspace,
    killing_form,
    normalizer_in_slN,
    radical,
)
from .linalg import (
    IntegerLattice,
    hermite_normal_form,
    kernel_saturated_basis,
    lll_reduce,
    shortest_vector_sup,
    smith_normal_form,
)
from .siegel import extract_small_basis, siegel_inhomogeneous, siegel_kernel_basis
from .unipotent import NilpotentAlgebra, exp_nilpotent, log_unipotent, unipotent_reduce

__version__ = "0.1.0"

__all__ = [
    "DependentBasisError",
    "DimensionError",
    "effective_levi",
    "EffectiveLeviError",
    "eigenvalue_product",
    "exp_nilpotent",
    "extract_small_basis",
    "height",
    "height_subspace",
    "hermite_normal_form",
    "ht_adjoint",
    "ht_bounds_from_profile",
    "ht_real",
    "ht_S",
    "ht_S_direct",
    "InfeasibleError",
    "injectivity_radius_lower",
    "IntegerLattice",
    "InvariantViolation",
    "kernel_saturated_basis",
    "killing_form",
    "levi_failures",
    "LieSubalgebra",
    "lll_reduce",
    "log_unipotent",
    "NilpotentAlgebra",
    "normalizer_in_slN",
    "NotInAlgebraError",
    "NotNilpotentError",
    "PreconditionError",
    "radical",
    "RankDeficientError",
    "ResourceLimitError",
    "SElement",
    "shortest_vector_sup",
    "siegel_inhomogeneous",
    "siegel_kernel_basis",
    "siegel_reduce",
    "smith_normal_form",
    "standardize_radical",
    "unipotent_reduce",
]
