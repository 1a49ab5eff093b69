"""Exact few-photon simulation of single-photon W-state networks.

Linear-optical preparation of W states by splitter chains, pairwise
entanglement witnessing under lossy detection, and conditional
teleportation of an unknown single-rail qubit, with every closed form
cross-checked against full Fock-space simulation.
"""

from .circuits import (
    SplitterAngles,
    WCoefficients,
    angles_from_coefficients,
    bell_splitter,
    coefficients_from_angles,
    generate_w,
    splitter,
    symmetric_angles,
    w_state_from_coefficients,
)
from .config import TOL, Tolerances
from .detection import (
    DetectorModel,
    PovmElement,
    condition,
    lossy_moments,
    lossy_moments_ancilla,
    povm_moments,
    povm_number,
    povm_onoff,
)
from .fock import (
    DensityOperator,
    FockSpace,
    PureState,
    annihilation_matrix,
    apply_phase_shift,
    apply_two_mode_unitary,
    canonical_basis,
    creation_matrix,
    expectation,
    fock_state,
    jx_matrix,
    jy_matrix,
    jz_matrix,
    number_matrix,
    overlap_fidelity,
    partial_trace,
    tensor,
    total_number_matrix,
    vacuum_state,
)
from .teleport import (
    ADVANTAGEOUS,
    BellEvent,
    MCResult,
    TeleportParams,
    TeleportReport,
    UnknownQubit,
    averaged_fidelity_probability,
    bell_events,
    bloch_average,
    bob_state,
    bob_state_closed_form,
    conditional_resource,
    conditional_resource_closed_form,
    critical_eta,
    critical_eta_bisection,
    event_probability_closed_form,
    max_fidelity,
    max_fidelity_closed_form,
    mc_averaged,
    nonadvantageous_bound,
    onoff_excess,
    optimal_theta,
    simulate_averaged,
    vacuum_weight,
)
from .verify import ClaimResult, run_verification
from .witness import (
    PairWitnessResult,
    WitnessScanReport,
    reduced_pair,
    scan_all_pairs,
    witness_ratio_closed_form,
    witness_ratio_simulated,
)

__version__ = "0.1.0"

__all__ = [
    "ADVANTAGEOUS",
    "BellEvent",
    "ClaimResult",
    "DensityOperator",
    "DetectorModel",
    "FockSpace",
    "MCResult",
    "PairWitnessResult",
    "PovmElement",
    "PureState",
    "SplitterAngles",
    "TeleportParams",
    "TeleportReport",
    "TOL",
    "Tolerances",
    "UnknownQubit",
    "WCoefficients",
    "WitnessScanReport",
    "angles_from_coefficients",
    "annihilation_matrix",
    "apply_phase_shift",
    "apply_two_mode_unitary",
    "averaged_fidelity_probability",
    "bell_events",
    "bell_splitter",
    "bloch_average",
    "bob_state",
    "bob_state_closed_form",
    "canonical_basis",
    "coefficients_from_angles",
    "condition",
    "conditional_resource",
    "conditional_resource_closed_form",
    "creation_matrix",
    "critical_eta",
    "critical_eta_bisection",
    "event_probability_closed_form",
    "expectation",
    "fock_state",
    "generate_w",
    "jx_matrix",
    "jy_matrix",
    "jz_matrix",
    "lossy_moments",
    "lossy_moments_ancilla",
    "max_fidelity",
    "max_fidelity_closed_form",
    "mc_averaged",
    "nonadvantageous_bound",
    "number_matrix",
    "onoff_excess",
    "optimal_theta",
    "overlap_fidelity",
    "partial_trace",
    "povm_moments",
    "povm_number",
    "povm_onoff",
    "reduced_pair",
    "run_verification",
    "scan_all_pairs",
    "simulate_averaged",
    "splitter",
    "symmetric_angles",
    "tensor",
    "total_number_matrix",
    "vacuum_state",
    "vacuum_weight",
    "w_state_from_coefficients",
    "witness_ratio_closed_form",
    "witness_ratio_simulated",
]
