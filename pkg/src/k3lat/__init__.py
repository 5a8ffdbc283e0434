"""Exact lattice computations for polarized K3 surfaces.

Integer Gram matrices of hyperbolic signature, exhaustive class
enumeration with certified search windows, effectivity / nefness /
very-ampleness oracles with explicit certificates, distinguished lattice
families with verified embeddings, nodal curve configurations with genus
bookkeeping, and the numerical thresholds tying them together.
"""

from .report import ENGINE_VERSION as __version__

from .errors import (
    ClassMismatch,
    DegenerateLattice,
    Disconnected,
    InvalidContext,
    K3LatError,
    LatticeMismatch,
    NeedsAmpleContext,
    NotARoot,
    NotEffective,
    NotPositiveClass,
    NotPrimitive,
    ParityError,
    RangeError,
    ScenarioError,
    ShapeError,
    SignatureError,
    TooLarge,
)
from .lattice import (
    DivisorClass,
    EmbeddingReport,
    GramLattice,
    LatticeProfile,
    change_basis_isometry,
    lattice_profile,
    make_lattice,
    pairing,
    reflect,
    verify_embedding,
)
from .enumeration import (
    CompletenessBound,
    EnumQuery,
    EnumResult,
    classes_with_degree,
    enumerate_by_square_and_degree,
    enumerate_square_degree,
    orthogonal_roots,
    roots_orthogonal_to,
)
from .cones import (
    CliffordIndex,
    ContextStatus,
    Decision,
    Exhausted,
    PolarizedContext,
    ReflectionChain,
    Witness,
    WitnessClass,
    ample_context,
    big_nef_context,
    clifford_index,
    concat_witnesses,
    find_ample_class,
    is_ample,
    is_big_nef,
    is_effective,
    is_irreducible_class,
    is_nef,
    nef_reduce,
    quadric_hull_hypotheses,
    special_pencil_classes,
    very_ample_knutsen,
)
from .builders import (
    KummerSpan,
    LatticeEmbedding,
    OmegaParams,
    direct_sum,
    hyperbolic_plane,
    jacobian_hyperbolic_basis,
    jacobian_section_basis,
    k_lattice,
    kummer_combination,
    kummer_images,
    lambda_into_omega,
    lambda_lattice,
    lambda_omega_solutions,
    lambdabar_into_k,
    lambdabar_lattice,
    minus_two_block,
    omega_jacobian_lattice,
    omega_lattice,
    p_into_omega,
    p_lattice,
    pencil_degree,
    section_frame,
    verify_kummer_embedding,
)
from .configurations import (
    Component,
    CurveConfiguration,
    ThresholdConfiguration,
    arithmetic_genus,
    build_threshold_config,
    connected_pieces,
    decomposition_obstruction,
    make_configuration,
    total_class,
)
from .numerology import (
    EulerBudget,
    MarkedWahlGenus,
    PlaneCurveSpec,
    Thresholds,
    blowup_very_ample,
    brill_noether_rho,
    euler_fibre_budget,
    greuel_bound,
    hirschowitz_vanishing,
    l_threshold_nonprim,
    l_threshold_prim,
    marked_wahl_conditions,
    marked_wahl_genus,
    p_arith,
    plane_genus,
    stack_dim,
    wahl_bound_check,
)
from .scenario import OPERATIONS, Scenario, evaluate, parse_scenario, run_scenario
from .report import (
    ENGINE_NAME,
    ENGINE_VERSION,
    AssertionRecord,
    Report,
    emit,
    emit_json,
    emit_text,
    json_payload,
)
from .replay import build_replay, replay_names, run_replay

__all__ = [name for name in dir() if not name.startswith("_")]
