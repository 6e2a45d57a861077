from mci.wavelets.filters import (
    FirFilter,
    FilterBank,
    FamilyChain,
    FamilyError,
    cubic_spline_bank,
    derive_differentiated_family,
    make_family_chain,
)
from mci.wavelets.divfree import (
    DfwCoeffs,
    DfwTransform,
    dfw_analyze,
    dfw_synthesize,
    dfw_synthesize_adjoint,
    analytic_curl,
    analytic_divergence,
    default_levels,
    max_levels,
)

__all__ = [
    "FirFilter",
    "FilterBank",
    "FamilyChain",
    "FamilyError",
    "cubic_spline_bank",
    "derive_differentiated_family",
    "make_family_chain",
    "DfwCoeffs",
    "DfwTransform",
    "dfw_analyze",
    "dfw_synthesize",
    "dfw_synthesize_adjoint",
    "analytic_curl",
    "analytic_divergence",
    "default_levels",
    "max_levels",
]
