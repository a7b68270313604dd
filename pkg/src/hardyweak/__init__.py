"""Deterministic simulator for interaction-free paradox interferometry.

Pre/post-selected two-particle interferometers, the weak values they
imply (including the negative joint occupation), a photonic pair source
that realizes the same pre-selection, and finite-strength pointer
readout of the arrival-time observables.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .states import (
    GAMMA,
    BasisLabel,
    StateVector,
    Structure,
    StructureError,
    Subnormalized,
    Subsystem,
    condition,
    equal_up_to_global_phase,
    inner,
    tensor,
)
from .optics import (
    DEFAULT_CONVENTION,
    BeamsplitterConvention,
    FockModeState,
    UnsupportedOccupancyError,
    apply_annihilation,
    apply_first_beamsplitter,
    apply_pbs,
    apply_polarization_rotation,
    apply_second_beamsplitter,
    hom_combine,
    interferometer_structure,
    photon_pair_structure,
)
from .weakvalues import (
    OrthogonalPostSelectionError,
    ProjectorWeakValue,
    WeakValueReport,
    WeightedProjectorSum,
    arrival_time_operator,
    identity_operator,
    occupation_operator,
    projector_weak_decomposition,
    weak_value,
)
from .pointer import (
    EmptyPostSelectionError,
    GridError,
    PointerMoments,
    PointerProfile,
    PointerSpec,
    SweepRow,
    analytic_moments,
    build_pointer_profile,
    gaussian_overlap,
    pointer_moments,
    pointer_terms,
    weak_limit_sweep,
)
from .scenarios import (
    CONSTRAINT_NAMES,
    CounterfactualAssignment,
    CounterfactualReport,
    HardyConfig,
    HardyResult,
    PhotonicWeakReport,
    SwapResult,
    analyzer_post_selection,
    bell_pair,
    counterfactual_check,
    dark_port_coincidence_state,
    entangled_target_state,
    run_entanglement_swap,
    run_hardy_gedanken,
    run_photonic_weak,
    surviving_paths_state,
    verify_paper_states,
)

__all__ = [
    "__version__",
    "GAMMA",
    "BasisLabel",
    "StateVector",
    "Structure",
    "StructureError",
    "Subnormalized",
    "Subsystem",
    "condition",
    "equal_up_to_global_phase",
    "inner",
    "tensor",
    "DEFAULT_CONVENTION",
    "BeamsplitterConvention",
    "FockModeState",
    "UnsupportedOccupancyError",
    "apply_annihilation",
    "apply_first_beamsplitter",
    "apply_pbs",
    "apply_polarization_rotation",
    "apply_second_beamsplitter",
    "hom_combine",
    "interferometer_structure",
    "photon_pair_structure",
    "OrthogonalPostSelectionError",
    "ProjectorWeakValue",
    "WeakValueReport",
    "WeightedProjectorSum",
    "arrival_time_operator",
    "identity_operator",
    "occupation_operator",
    "projector_weak_decomposition",
    "weak_value",
    "EmptyPostSelectionError",
    "GridError",
    "PointerMoments",
    "PointerProfile",
    "PointerSpec",
    "SweepRow",
    "analytic_moments",
    "build_pointer_profile",
    "gaussian_overlap",
    "pointer_moments",
    "pointer_terms",
    "weak_limit_sweep",
    "CONSTRAINT_NAMES",
    "CounterfactualAssignment",
    "CounterfactualReport",
    "HardyConfig",
    "HardyResult",
    "PhotonicWeakReport",
    "SwapResult",
    "analyzer_post_selection",
    "bell_pair",
    "counterfactual_check",
    "dark_port_coincidence_state",
    "entangled_target_state",
    "run_entanglement_swap",
    "run_hardy_gedanken",
    "run_photonic_weak",
    "surviving_paths_state",
    "verify_paper_states",
]
