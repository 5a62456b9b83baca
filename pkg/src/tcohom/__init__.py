"""Exact cohomology of heaps, para-associative sets and ternary shelves."""

from .core import (
    AxiomError,
    AxiomReport,
    FiniteCarrier,
    GroupTable,
    TernaryTable,
    abelian_heap,
    affine_table,
    catalog_group,
    check_degeneracy,
    check_heap,
    check_para_associativity,
    check_tsd,
    enumerate_heaps,
    group_to_heap,
    heap_to_group,
    trivial_shelf,
)
from .linalg import (
    AbHom,
    FinAbGroup,
    Quotient,
    Subgroup,
    hom_image,
    hom_kernel,
    quotient_invariants,
    smith_normal_form,
    subgroup_contains,
    subgroup_intersection,
)
from .complexes import (
    ChainSpace,
    CochainSpace,
    CohomologyResult,
    DifferentialMatrix,
    HomologyResult,
    cohomology,
    degeneracy_map,
    essential_homology,
    group_bar_boundary,
    group_cohomology2_normalized,
    hat_subcomplex,
    pa_delta1,
    pa_delta2,
    pa_delta2_full,
    pa_delta3,
    pa_delta3_full,
    tsd_boundary,
    tsd_cohomology,
    tsd_delta,
    tsd_homology,
    type0_boundary,
    type0_homology,
    verify_complex,
)
from .transfers import (
    CocycleError,
    ExtensionSpec,
    SesSpec,
    build_extension,
    extensions_isomorphic,
    h_heap_to_tsd,
    induced_h2_map,
    inverse_property_phi,
    mod_square_ses,
    obstruction_3cocycle,
    phi2_group_to_pa,
    psi_chain_map,
    restrict_heap_cocycle_to_group,
    ses_section_cocycle,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
