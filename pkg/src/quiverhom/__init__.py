"""Exact homological calculator for finite-dimensional bound quiver algebras.

Everything is computed over a prime field F_p with exact integer arithmetic:
path algebras of quivers modulo monomial or quadratic radical-cube relations,
minimal projective resolutions of their representations, Ext tables, overlap
chains with the transition-graph global dimension decision, Yoneda products on
the Ext algebra of the semisimple module, and the radical-cube structure
theory (submodule decompositions, syzygy core sequences, finiteness
equivalences).
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import InternalInvariantError, PreconditionError
from .algebra import (
    Arrow,
    BasisCapExceeded,
    BasisElement,
    FiniteAlgebra,
    InfiniteDimensionalError,
    MonomialPresentation,
    ParseError,
    Path,
    QuadraticRadCubePresentation,
    Quiver,
    build,
    build_algebra,
    build_algebra_radcube,
    loewy_length,
    opposite_algebra,
    parse_presentation,
)
from .fixtures import fixture_algebra, fixture_names, fixture_text
from .chains import (
    Chain,
    ChainTransitionGraph,
    GldimVerdict,
    SelfExtVerdict,
    chain_endpoints,
    chain_ext_table,
    chains_up_to,
    ext_self_vanishing_decide,
    gldim_decide,
    transition_graph,
)
from .modules import (
    BoundedDim,
    Cover,
    ModuleMap,
    ProjectiveRep,
    Representation,
    ResolutionSegment,
    ResolutionTower,
    at_least,
    compose,
    direct_sum,
    dual_over_opposite,
    ext_dims,
    ext_table,
    finite_dim,
    gldim_bounded,
    hom_space,
    identity_map,
    inj_dim_bounded,
    map_from_generators,
    minimal_resolution,
    projective_cover,
    projective_module,
    proj_dim_bounded,
    radical,
    semisimple_top,
    simple_module,
    socle,
    sub_representation,
    syzygy,
    tower,
    validate_representation,
    zero_map,
    zero_module,
)
from .yoneda import (
    Certificate,
    ExtSpace,
    GenerationProfile,
    GradedExtElement,
    YonedaQuiverReport,
    dims_of_e,
    ext_basis,
    ext_space,
    generation_profile,
    gldim_certificate,
    products_vanish,
    yoneda_product,
    yoneda_quiver,
    zero_element,
)
from .loewy3 import (
    CoreSequence,
    CriterionReport,
    DecompositionWitness,
    DegreeOneSpanReport,
    EquivalenceReport,
    SimpleOrderReport,
    check_degree_one_span,
    check_depth_two_criterion,
    decompose_submodule,
    finiteness_equivalence,
    simple_order,
    syzygy_core_sequence,
)
from .corpus import (
    CorpusReport,
    CorpusSpec,
    InstanceRecord,
    SuiteRecord,
    SUITES,
    archive_violations,
    build_instance,
    instance_text,
    iter_instances,
    run_corpus,
)
