"""State representations, subset combinatorics and reductions."""

from .order import INF, ONE, ZERO, OrderLike, RenyiOrder
from .spectrum import MERGE_RTOL, NORM_TOL, ZERO_CUTOFF, WeightedSpectrum
from .states import (
    MAX_DENSE_DIM,
    ClassicalState,
    DensityMatrix,
    SparsePureState,
    marginalize_classical,
    partial_trace_dense,
    reduced_spectrum_pure,
    spectrum_dense,
)
from .subsets import SubsetLike, SubsetMask, as_mask, iter_strict_pairs, subset_enumerate

__all__ = [
    "INF", "ONE", "ZERO", "OrderLike", "RenyiOrder",
    "MERGE_RTOL", "NORM_TOL", "ZERO_CUTOFF", "WeightedSpectrum",
    "MAX_DENSE_DIM", "ClassicalState", "DensityMatrix", "SparsePureState",
    "marginalize_classical", "partial_trace_dense", "reduced_spectrum_pure", "spectrum_dense",
    "SubsetLike", "SubsetMask", "as_mask", "iter_strict_pairs", "subset_enumerate",
]

from .vector import EntropyVector  # noqa: E402

__all__.append("EntropyVector")
