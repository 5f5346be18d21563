"""Achievability constructions: explicit states plus closed-form descriptors."""

from .analytic import analytic_entropy_vector, analytic_marginal_spectrum, explicit_state, tensor_pure_states
from .composite import composite_bound, composite_error, target_vector_state
from .descriptor import (
    MAX_CLASSICAL_ATOMS,
    MAX_PURE_AMPLITUDES,
    Construction,
    ConstructionDescriptor,
    Kind,
    min_alphabet_size,
    spike_weight,
)
from .dilution import (
    dilution_classical_gt1,
    renyi_target_distribution,
    spike_quantum_gt1,
    two_atom_distribution,
)
from .spikes import purification_descriptor, purify, spike_classical, spike_quantum_lt1
from .upset_states import (
    diagonal_size,
    upset_classical_gt1,
    upset_classical_lt1,
    upset_lt1_bounds,
    upset_lt1_limit,
    upset_lt1_limit_vector,
)
from .upsets import Upset, indicator_vector, upward_closure

__all__ = [
    "analytic_entropy_vector", "analytic_marginal_spectrum", "explicit_state", "tensor_pure_states",
    "composite_bound", "composite_error", "target_vector_state",
    "MAX_CLASSICAL_ATOMS", "MAX_PURE_AMPLITUDES", "Construction", "ConstructionDescriptor", "Kind",
    "min_alphabet_size", "spike_weight",
    "dilution_classical_gt1", "renyi_target_distribution", "spike_quantum_gt1", "two_atom_distribution",
    "purification_descriptor", "purify", "spike_classical", "spike_quantum_lt1",
    "diagonal_size", "upset_classical_gt1", "upset_classical_lt1", "upset_lt1_bounds",
    "upset_lt1_limit", "upset_lt1_limit_vector",
    "Upset", "indicator_vector", "upward_closure",
]

from .rebuild import rebuild, with_alphabet  # noqa: E402

__all__ += ["rebuild", "with_alphabet"]
