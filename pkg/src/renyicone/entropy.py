"""Rényi entropies and Schatten norms of spectra, in bits."""

from __future__ import annotations

import math
from typing import Union

import numpy as np

from .core import (
    ClassicalState,
    DensityMatrix,
    EntropyVector,
    OrderLike,
    RenyiOrder,
    SparsePureState,
    WeightedSpectrum,
    marginalize_classical,
    partial_trace_dense,
    reduced_spectrum_pure,
    spectrum_dense,
)
from .errors import RenyiConeError, UnsupportedOrderError

LN2 = math.log(2.0)

State = Union[ClassicalState, SparsePureState, DensityMatrix]


def _power_sum(spec: WeightedSpectrum, alpha: float) -> list[float]:
    terms = spec.multiplicities * spec.values**alpha
    return np.sort(terms).tolist()


def renyi_entropy(spec: WeightedSpectrum, order: OrderLike) -> float:
    """Rényi entropy of a spectrum in bits.

    ``order`` 1 gives the Shannon/von Neumann entropy, 0 the log-rank and
    ``inf`` the min-entropy. For finite ``alpha`` the power sum is accumulated
    with ``math.fsum`` and the logarithm taken as ``log1p(sum - 1)`` so that
    orders close to 1 do not lose precision.

    >>> renyi_entropy(WeightedSpectrum([(0.125, 8)]), 2)
    3.0
    """
    order = RenyiOrder.of(order)
    if len(spec) == 0:
        raise RenyiConeError("empty spectrum")
    if spec.is_pure(tol=0.0):
        return 0.0
    if order.kind == "zero":
        return math.log2(spec.rank)
    if order.kind == "inf":
        return -math.log2(spec.max_value)
    if order.kind == "one":
        v, m = spec.values, spec.multiplicities
        h = -math.fsum(np.sort(m * v * np.log2(v)).tolist())
        return max(h, 0.0)
    a = order.alpha
    excess = math.fsum(_power_sum(spec, a) + [-1.0])
    if excess > -0.5:
        h = math.log1p(excess) / LN2 / (1.0 - a)
    else:
        # large orders: factor out the largest eigenvalue so the power sum cannot underflow
        top = spec.max_value
        scaled = math.fsum(np.sort(spec.multiplicities * (spec.values / top) ** a).tolist())
        h = (a * math.log2(top) + math.log2(scaled)) / (1.0 - a)
    return max(h, 0.0)


def schatten_norm(spec: WeightedSpectrum, order: OrderLike) -> float:
    """Schatten norm ``(sum value**alpha)**(1/alpha)``; ``inf`` gives the largest value."""
    order = RenyiOrder.of(order)
    if order.kind in ("zero", "one"):
        raise UnsupportedOrderError(f"Schatten norm is not defined for order {order}")
    if order.kind == "inf":
        return spec.max_value
    a = order.alpha
    return math.fsum(_power_sum(spec, a)) ** (1.0 / a)


def marginal_spectrum(state: State, subset) -> WeightedSpectrum:
    """Spectrum of the marginal on ``subset`` via the reduction suited to the state type."""
    if isinstance(state, ClassicalState):
        return marginalize_classical(state, subset).spectrum()
    if isinstance(state, SparsePureState):
        return reduced_spectrum_pure(state, subset)
    if isinstance(state, DensityMatrix):
        return spectrum_dense(partial_trace_dense(state, subset))
    raise TypeError(f"unsupported state type {type(state).__name__}")


def entropy_vector(state: State, order: OrderLike) -> EntropyVector:
    """Rényi entropies of all ``2**n - 1`` marginals of ``state``."""
    order = RenyiOrder.of(order)
    return EntropyVector.from_function(
        state.n, lambda m: renyi_entropy(marginal_spectrum(state, m), order), order
    )


def spectra_entropy_vector(spectra, n: int, order: OrderLike) -> EntropyVector:
    """Entropy vector from a sequence of marginal spectra in bitmask order."""
    order = RenyiOrder.of(order)
    return EntropyVector(n, [renyi_entropy(s, order) for s in spectra], order)
