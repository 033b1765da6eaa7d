"""Generalized quadrangles with regular group actions, made executable.

Build and verify quadrangles from group sigma-sets, analyze point-regular
actions through their Delta-sets, and run the arithmetic sieve that rules
out small biregular orders.
"""

from .catalog import (
    build_fixture,
    fixture,
    is_regular_point,
    ordinary_quadrangle,
    payne_derive,
    symplectic_gq,
)
from .construction import (
    AxiomReport,
    DeltaProfile,
    SigmaQuadrangle,
    SigmaSet,
    build_gq_from_sigma,
    check_sigma_axioms,
    delta_profile,
    extract_sigma,
    search_sigma,
    sigma_set,
    yoshiara_checks,
)
from .groups import (
    ElementSet,
    FiniteGroup,
    center,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    element_order,
    group_automorphisms,
    group_from_json,
    group_from_table,
    group_to_json,
    subgroup_generated,
)
from .incidence import (
    GQCertificate,
    IncidenceStructure,
    dual,
    incidence_from_json,
    incidence_to_json,
    parameter_feasible,
    polarity_order_constraint,
    verify_gq,
)
from .morphisms import (
    IsoWitness,
    PermutationGroup,
    Polarity,
    RegularSubgroup,
    automorphisms,
    find_polarity,
    isomorphic,
    regular_subgroups,
)
from .sieve import (
    FeasibilityReport,
    SieveVerdict,
    biregular_conditions,
    sieve_range,
    suzuki_order,
    sz_feasibility,
    uq_feasibility,
    verify_identities,
)

__all__ = [name for name in dir() if not name.startswith("_")]
