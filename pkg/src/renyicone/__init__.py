"""Rényi entropy vectors of classical and quantum multipartite states.

The package computes Rényi entropy vectors exactly (from explicit states) and
in closed form (from construction descriptors), builds the extremal
constructions that approximate cone directions, and checks the entropy
inequalities that do and do not survive for Rényi orders other than one.
"""

from .constructions import (
    Construction,
    ConstructionDescriptor,
    Kind,
    analytic_entropy_vector,
    analytic_marginal_spectrum,
    dilution_classical_gt1,
    explicit_state,
    indicator_vector,
    min_alphabet_size,
    renyi_target_distribution,
    spike_classical,
    spike_quantum_gt1,
    spike_quantum_lt1,
    target_vector_state,
    upset_classical_gt1,
    upset_classical_lt1,
    upward_closure,
)
from .core import (
    ClassicalState,
    DensityMatrix,
    EntropyVector,
    RenyiOrder,
    SparsePureState,
    SubsetMask,
    WeightedSpectrum,
    marginalize_classical,
    partial_trace_dense,
    reduced_spectrum_pure,
    spectrum_dense,
    subset_enumerate,
)
from .entropy import entropy_vector, marginal_spectrum, renyi_entropy, schatten_norm
from .errors import (
    AlphabetTooSmallError,
    BudgetExceededError,
    DimensionError,
    EmptySystemError,
    NormalizationError,
    RenyiConeError,
    UnsupportedOrderError,
)
from .inequalities import (
    audenaert_report,
    check_monotonicity,
    check_vn_inequalities,
    convergence_sweep,
    find_subadditivity_violation,
)

__version__ = "0.1.0"
