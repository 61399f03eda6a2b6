"""fourg: classification of Riemann surfaces of genus g with exactly 4g automorphisms.

The package computes, for each genus g >= 2, the quotient signatures a group
of order 4g can act with, the (unique, dihedral) large action, its extensions
by reflections, the real forms those extensions carry, and the nodal limits of
the family inside the moduli space boundary.
"""

from .signatures import (
    INF,
    Signature,
    SignatureSyntaxError,
    TaggedSignature,
    Word,
    TAG_FAMILY1,
    TAG_FAMILY2,
    TAG_FAMILY3,
    TAG_FAMILY4,
    TAG_QUADRUPLE,
    TAG_SPORADIC,
    canonical_generator_names,
    chain_signature,
    dim_teichmuller,
    enumerate_4g_signatures,
    mixed_signature,
    normalized_area,
    parse_signature,
    quotient_signature,
    rh_index,
    sporadic_genera,
    surface_signature,
    wiman_quotient_signature,
)
from .errors import (
    FourgError,
    GroupConstructionError,
    InputFormatError,
    InvariantViolation,
    UsageError,
)
from .groups import (
    COMPLETE_CATALOG_ORDERS,
    MAX_ORDER,
    Automorphism,
    FiniteGroup,
    GroupElement,
    GroupStructure,
    Subgroup,
    abelianization,
    automorphism_search,
    close_generator_map,
    cyclic,
    dicyclic,
    dihedral,
    dihedral_from_reflections,
    direct_product,
    extension_group_b,
    from_permutations,
    from_table,
    index_two_subgroups,
    is_isomorphic,
    iso_search,
    metacyclic,
    recognize,
    semidirect_cyclic,
    small_groups,
)
from .actions import (
    EXCEPTIONAL_SURFACE_GENERA,
    QUADRUPLE_FAMILY_GENERA,
    ActionClass,
    CaseReport,
    GeneratingVector,
    braid_move,
    canonical_vector,
    classify,
    eliminate_cases,
    exceptional_search,
    family_group,
    kernel_genus,
    main_action_class,
    smooth_vectors,
    vector_in_class,
)
from .extensions import (
    KIND_A,
    KIND_B,
    ExtendedAction,
    build_extensions,
    chain_target_group,
    cone_target_group,
    extension_target,
    orientation_preserving_subgroup,
    restrict_to_index2,
)
from .realforms import (
    Species,
    SymmetryClass,
    count_ovals,
    species_set,
    symmetry_classes,
    symmetry_classes_with_ovals,
)
from .boundary import (
    ARC_ENDPOINTS,
    BoundaryArc,
    BoundaryDescription,
    NodalGraph,
    WimanCurve,
    boundary_description,
    component_genus,
    degeneration_subgroups,
    nodal_graph,
)
from .report import (
    CATALOGUED_SPORADIC_GENERA,
    Report,
    atlas_reports,
    atlas_summary,
    build_report,
)
from .checks import CheckResult, run_all_checks

__version__ = "0.1.0"
