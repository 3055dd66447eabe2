"""Exact state transitions under majorization and finite-bath thermal operations.

The package builds explicit unitaries for three settings: noisy operations
(maximally mixed bath) realizing any majorization transition, marginal
problems (carrying a joint state to a prescribed reduced state), and thermal
operations with finite baths in their Gibbs states, where the classical
reachable set, its convex hull, unitary synthesis, and decomposition back
into permutation mixtures are all computed exactly. A qubit layer quantifies
how cold a finite bath can pump a qubit, with third-law-style lower bounds.
"""

from .config import EIGEN_TOL, TOL
from .energy import (
    EnergyLabel,
    Hamiltonian,
    ThermalSetup,
    build_setup,
    gibbs_vector,
    oscillator_hamiltonian,
    qubit_hamiltonian,
    trivial_hamiltonian,
    weight_hamiltonian,
    zero_hamiltonian,
)
from .errors import PreconditionError
from .linalg import (
    apply_channel,
    complex_matrix,
    cyclic_shift,
    density_matrix,
    diag_embedding,
    diagonal_split,
    hadamard_square,
    partial_trace_b,
    permutation_matrix,
    probability_vector,
    spectrum_sorted,
    tensor,
    unitarity_defect,
)
from .majorization import (
    ConvexPermutationDecomposition,
    birkhoff_decompose,
    first_failing_prefix,
    majorizes,
    random_bistochastic,
    schur_horn_unitary,
    stochastic_matrix,
    thermomajorizes,
)
from .noisy import (
    NoisyRealization,
    decoherence_gadget,
    haar_unitary,
    horn_transition_unitary,
    marginal_transition_unitary,
    max_output_rank_bound,
    noisy_not_unistochastic_witness,
    search_noisy_realization,
    support_pattern_obstructs_unistochasticity,
)
from .qubit import (
    BathSpectrumSummary,
    QubitGibbs,
    alpha_bound_general,
    alpha_max_achievable,
    alpha_max_oscillator,
    bath_spectrum_summary,
    d_alpha,
    extract_alpha,
    final_temperature,
    oscillator_final_temperature,
    oscillator_summary,
    p_star,
    qubit_gibbs,
    third_law_bounds,
)
from .thermal import (
    ClassicalEnumeration,
    ConvexCombination,
    MembershipResult,
    ProductConvexCombination,
    ReachableSet,
    classical_reachable_set,
    decompose_channel_to_classical,
    energy_preservation_defect,
    enumerate_classical,
    hull_membership,
    random_block_unitary,
    realize_interior,
    synthesize_unitary,
    thermal_decoherence_gadget,
)

__version__ = "0.1.0"

__all__ = [
    "TOL",
    "EIGEN_TOL",
    "PreconditionError",
    "complex_matrix",
    "probability_vector",
    "density_matrix",
    "diag_embedding",
    "permutation_matrix",
    "cyclic_shift",
    "tensor",
    "partial_trace_b",
    "apply_channel",
    "hadamard_square",
    "diagonal_split",
    "spectrum_sorted",
    "unitarity_defect",
    "stochastic_matrix",
    "ConvexPermutationDecomposition",
    "majorizes",
    "first_failing_prefix",
    "thermomajorizes",
    "birkhoff_decompose",
    "schur_horn_unitary",
    "random_bistochastic",
    "NoisyRealization",
    "haar_unitary",
    "decoherence_gadget",
    "horn_transition_unitary",
    "marginal_transition_unitary",
    "support_pattern_obstructs_unistochasticity",
    "noisy_not_unistochastic_witness",
    "max_output_rank_bound",
    "search_noisy_realization",
    "EnergyLabel",
    "Hamiltonian",
    "ThermalSetup",
    "build_setup",
    "gibbs_vector",
    "oscillator_hamiltonian",
    "qubit_hamiltonian",
    "weight_hamiltonian",
    "zero_hamiltonian",
    "trivial_hamiltonian",
    "ConvexCombination",
    "ProductConvexCombination",
    "ClassicalEnumeration",
    "ReachableSet",
    "MembershipResult",
    "enumerate_classical",
    "classical_reachable_set",
    "synthesize_unitary",
    "decompose_channel_to_classical",
    "thermal_decoherence_gadget",
    "hull_membership",
    "realize_interior",
    "random_block_unitary",
    "energy_preservation_defect",
    "QubitGibbs",
    "BathSpectrumSummary",
    "qubit_gibbs",
    "d_alpha",
    "p_star",
    "alpha_max_oscillator",
    "bath_spectrum_summary",
    "oscillator_summary",
    "alpha_bound_general",
    "alpha_max_achievable",
    "extract_alpha",
    "third_law_bounds",
    "oscillator_final_temperature",
    "final_temperature",
]
