"""Verification library for circularly polarized vacuum-mode algebra,
oscillator spectral sums, and exact exchange-symmetry derivations."""

from .constants import NATURAL, PhysicalConstants
from .errors import (
    CoherenceError,
    ContradictionError,
    IncompleteBasisError,
    MissingBindingError,
    ResolutionError,
    SizeLimitError,
)
from .exchange import (
    AntiphaseResult,
    BipartiteState,
    CompositeKet,
    DerivationReport,
    ExchangePhaseSolution,
    MultiparticleState,
    ParticleSwapResult,
    StateSwapResult,
    antiphase_feasible,
    antisymmetrize,
    apply_exchange_phase,
    derive_antisymmetry,
    entanglement_phase,
    exchange_particles,
    exchange_states,
    make_bipartite,
    negate,
    solve_exchange_phase,
    state_hash,
    state_to_dict,
)
from .internal_rotation import (
    DichotomyResult,
    SpinState,
    apply_spin_z,
    dichotomy_solve,
    rotation_factor,
)
from .modes import (
    FieldSample,
    Mode,
    ModeObservables,
    Triad,
    ZpfRealization,
    analytic_mode_observables,
    build_triad,
    field_at,
    make_mode,
    mode_keys,
    mode_observables,
    polarization_vector,
    realization_totals,
    resolution_floor,
    sample_fields,
    sample_realization,
    sample_zeta_ensemble,
    wave_vector,
)
from .oscillator import (
    MatrixElementTable,
    StationaryState,
    build_oscillator_table,
    circular_components,
)
from .phase_algebra import (
    Coefficient,
    PhaseExpression,
    Surd,
    format_symbol,
    phi_symbol,
    zeta_symbol,
)
from .spectral import (
    DynamicalExpansion,
    MomentIdentity,
    PhaseContext,
    SpinSplit,
    build_expansion,
    evaluate_expansion,
    expansion_product,
    lz_expectation,
    magnetic_moment_identity,
    operator_matrix,
    phase_context,
    polarized_momenta,
    spin_split,
    total_momentum,
    trk_sum_rule,
    zeeman_energy,
    zeeman_levels,
)

__version__ = "0.1.0"

__all__ = [
    "NATURAL",
    "PhysicalConstants",
    "CoherenceError",
    "ContradictionError",
    "IncompleteBasisError",
    "MissingBindingError",
    "ResolutionError",
    "SizeLimitError",
    "AntiphaseResult",
    "BipartiteState",
    "CompositeKet",
    "DerivationReport",
    "ExchangePhaseSolution",
    "MultiparticleState",
    "ParticleSwapResult",
    "StateSwapResult",
    "antiphase_feasible",
    "antisymmetrize",
    "apply_exchange_phase",
    "derive_antisymmetry",
    "entanglement_phase",
    "exchange_particles",
    "exchange_states",
    "make_bipartite",
    "negate",
    "solve_exchange_phase",
    "state_hash",
    "state_to_dict",
    "DichotomyResult",
    "SpinState",
    "apply_spin_z",
    "dichotomy_solve",
    "rotation_factor",
    "FieldSample",
    "Mode",
    "ModeObservables",
    "Triad",
    "ZpfRealization",
    "analytic_mode_observables",
    "build_triad",
    "field_at",
    "make_mode",
    "mode_keys",
    "mode_observables",
    "polarization_vector",
    "realization_totals",
    "resolution_floor",
    "sample_fields",
    "sample_realization",
    "sample_zeta_ensemble",
    "wave_vector",
    "MatrixElementTable",
    "StationaryState",
    "build_oscillator_table",
    "circular_components",
    "Coefficient",
    "PhaseExpression",
    "Surd",
    "format_symbol",
    "phi_symbol",
    "zeta_symbol",
    "DynamicalExpansion",
    "MomentIdentity",
    "PhaseContext",
    "SpinSplit",
    "build_expansion",
    "evaluate_expansion",
    "expansion_product",
    "lz_expectation",
    "magnetic_moment_identity",
    "operator_matrix",
    "phase_context",
    "polarized_momenta",
    "spin_split",
    "total_momentum",
    "trk_sum_rule",
    "zeeman_energy",
    "zeeman_levels",
]
