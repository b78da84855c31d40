"""supq: a workbench for finite lattices and their sup-preserving endomaps."""

from supq.lattice import (
    AUTOMORPHISM_NODE_CAP,
    MAX_DOWNSET_LATTICE_SIZE,
    MAX_LATTICE_SIZE,
    Lattice,
    LatticeError,
    NoBoundedElement,
    NotALattice,
    NotAPartialOrder,
    Poset,
    SearchCapExceeded,
    SizeGuardExceeded,
    automorphisms,
    downset_lattice,
    dual,
    is_distributive,
    join_irreducibles,
    make_boolean,
    make_chain,
    make_mk,
    make_n5,
    meet_irreducibles,
    order_automorphisms,
    parse_lattice,
    serialize_lattice,
)
from supq.maps import (
    Factorization,
    LatticeMap,
    MapError,
    a_map,
    alpha_map,
    bottom_map,
    c_map,
    characterization_check,
    e_map,
    extend_bimorphism,
    factorize,
    gamma_map,
    identity_map,
    inf_map,
    inf_witness,
    is_inf_preserving,
    is_monotone,
    is_sup_preserving,
    left_adjoint,
    monotone_map,
    monotone_witness,
    pointwise_join,
    pointwise_meet,
    right_adjoint,
    sup_interior,
    sup_interior_tables,
    sup_map,
    sup_witness,
    tensor_over,
    tensor_under,
    top_q_map,
)
from supq.quantale import (
    CapExceeded,
    EndoHomset,
    NotAutomorphism,
    NotCompletelyDistributive,
    NotDualizing,
    adjunction_formulas,
    automorphism_to_dualizing,
    conucleus_gap,
    division_formulas,
    dualizing_to_automorphism,
    enumerate_homset,
    enumerate_inf_maps,
    find_cyclic,
    find_dualizing,
    is_completely_distributive,
    is_cyclic,
    is_dualizing,
    is_girard,
    is_tight,
    left_adjoint_tables,
    left_residual,
    q_join,
    q_meet,
    raney_down,
    raney_down_tables,
    raney_up,
    raney_up_tables,
    relation_dual_profile,
    right_adjoint_tables,
    right_residual,
    star,
    tight_has_unit,
    tight_interior,
)
from supq.structures import (
    AbstractRaneyVerdict,
    AutodualReport,
    FiniteQuantale,
    IrreducibleReport,
    NaturalClassification,
    NaturalFamily,
    WeakeningRelation,
    abstract_raney_check,
    autodual_report,
    classify_natural,
    downset_automorphism,
    e_family,
    family_c_after_map,
    family_map_after_a,
    find_order_isomorphism,
    homset_irreducibles,
    m5_quantale,
    parse_quantale,
    poset_hash,
    q_cyclic,
    q_dualizing,
    q_residuals,
    serialize_quantale,
    supmap_from_wk,
    wk_compose,
    wk_from_automorphism,
    wk_from_supmap,
)
from supq.verify import (
    CheckResult,
    Report,
    SuiteConfig,
    corpus,
    run_m5_suite,
    run_suite,
)

__all__ = [
    "AUTOMORPHISM_NODE_CAP",
    "MAX_DOWNSET_LATTICE_SIZE",
    "MAX_LATTICE_SIZE",
    "AbstractRaneyVerdict",
    "AutodualReport",
    "CapExceeded",
    "CheckResult",
    "EndoHomset",
    "Factorization",
    "FiniteQuantale",
    "IrreducibleReport",
    "Lattice",
    "LatticeError",
    "LatticeMap",
    "MapError",
    "NaturalClassification",
    "NaturalFamily",
    "NoBoundedElement",
    "NotALattice",
    "NotAPartialOrder",
    "NotAutomorphism",
    "NotCompletelyDistributive",
    "NotDualizing",
    "Poset",
    "Report",
    "SearchCapExceeded",
    "SizeGuardExceeded",
    "SuiteConfig",
    "WeakeningRelation",
    "a_map",
    "abstract_raney_check",
    "adjunction_formulas",
    "autodual_report",
    "automorphism_to_dualizing",
    "alpha_map",
    "automorphisms",
    "bottom_map",
    "c_map",
    "characterization_check",
    "classify_natural",
    "conucleus_gap",
    "corpus",
    "division_formulas",
    "downset_automorphism",
    "downset_lattice",
    "dual",
    "dualizing_to_automorphism",
    "e_family",
    "e_map",
    "enumerate_homset",
    "enumerate_inf_maps",
    "extend_bimorphism",
    "factorize",
    "family_c_after_map",
    "family_map_after_a",
    "find_cyclic",
    "find_dualizing",
    "find_order_isomorphism",
    "gamma_map",
    "homset_irreducibles",
    "identity_map",
    "inf_map",
    "inf_witness",
    "is_completely_distributive",
    "is_cyclic",
    "is_distributive",
    "is_dualizing",
    "is_girard",
    "is_inf_preserving",
    "is_monotone",
    "is_sup_preserving",
    "is_tight",
    "join_irreducibles",
    "left_adjoint",
    "left_adjoint_tables",
    "left_residual",
    "m5_quantale",
    "make_boolean",
    "make_chain",
    "make_mk",
    "make_n5",
    "meet_irreducibles",
    "monotone_map",
    "monotone_witness",
    "order_automorphisms",
    "parse_lattice",
    "parse_quantale",
    "pointwise_join",
    "pointwise_meet",
    "poset_hash",
    "q_cyclic",
    "q_dualizing",
    "q_join",
    "q_meet",
    "q_residuals",
    "raney_down",
    "raney_down_tables",
    "raney_up",
    "raney_up_tables",
    "relation_dual_profile",
    "right_adjoint",
    "right_adjoint_tables",
    "right_residual",
    "run_m5_suite",
    "run_suite",
    "serialize_lattice",
    "serialize_quantale",
    "star",
    "sup_interior",
    "sup_interior_tables",
    "sup_map",
    "sup_witness",
    "supmap_from_wk",
    "tensor_over",
    "tensor_under",
    "tight_has_unit",
    "tight_interior",
    "top_q_map",
    "wk_compose",
    "wk_from_automorphism",
    "wk_from_supmap",
]
