"""Atom spectra as finite and symbolic topological spaces.

Limit points, Krull-Gabriel stratification, spectral checks and Hochster
duals on finite posets and two countable spaces, plus the Ext^1-vanishing
classification of open subsets for concrete families of atomic models.
"""

from .classify import (
    AtLeast,
    ClassificationResult,
    DimsReport,
    brute_force_qualifying,
    check_dimension_bound,
    check_epi_containment,
    const_set,
    cprojdim_atom,
    dims_report,
    epi_set,
    gldim_via_atoms,
    projdim_atom,
    qualifying_opens,
)
from .errors import (
    CycleError,
    NonConstantUnsupported,
    ParseError,
    SizeCapExceeded,
    UnknownElement,
    UnknownExtRead,
    UnsupportedDescriptor,
    UnsupportedForSymbolic,
)
from .models import (
    ExtEntry,
    QuiverPresentation,
    model_from_commutative_poset,
    model_from_quiver,
    model_from_triangular,
    model_graded_kx,
    parse_quiver,
    prime_poset_isomorphism_check,
)
from .poset import (
    FinitePoset,
    FiniteTopology,
    SpectralReport,
    StratificationReport,
    antichain,
    chain,
    chain_dimension,
    closure,
    enumerate_opens,
    hochster_dual,
    interior,
    is_open,
    limit_iterate,
    limit_points,
    obstruction_points,
    poset_from_relations,
    spectral_check,
    stratify,
)
from .symbolic import GradedSetDescriptor, OmegaSetDescriptor

__version__ = "0.1.0"

__all__ = [
    "AtLeast",
    "ClassificationResult",
    "CycleError",
    "DimsReport",
    "ExtEntry",
    "FinitePoset",
    "FiniteTopology",
    "GradedSetDescriptor",
    "NonConstantUnsupported",
    "OmegaSetDescriptor",
    "ParseError",
    "QuiverPresentation",
    "SizeCapExceeded",
    "SpectralReport",
    "StratificationReport",
    "UnknownElement",
    "UnknownExtRead",
    "UnsupportedDescriptor",
    "UnsupportedForSymbolic",
    "antichain",
    "brute_force_qualifying",
    "chain",
    "chain_dimension",
    "check_dimension_bound",
    "check_epi_containment",
    "closure",
    "const_set",
    "cprojdim_atom",
    "dims_report",
    "enumerate_opens",
    "epi_set",
    "gldim_via_atoms",
    "hochster_dual",
    "interior",
    "is_open",
    "limit_iterate",
    "limit_points",
    "model_from_commutative_poset",
    "model_from_quiver",
    "model_from_triangular",
    "model_graded_kx",
    "obstruction_points",
    "parse_quiver",
    "poset_from_relations",
    "prime_poset_isomorphism_check",
    "projdim_atom",
    "qualifying_opens",
    "spectral_check",
    "stratify",
]
