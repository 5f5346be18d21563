"""Closed-form marginal spectra and explicit states for every descriptor kind."""

from __future__ import annotations

import math

import numpy as np

from ..core import EntropyVector, OrderLike, RenyiOrder, SparsePureState, SubsetMask, WeightedSpectrum, as_mask
from ..entropy import renyi_entropy
from ..errors import BudgetExceededError, RenyiConeError
from .descriptor import MAX_PURE_AMPLITUDES, ConstructionDescriptor, Kind
from .dilution import dilution_spectrum, dilution_state, spike_quantum_gt1_spectrum, spike_quantum_gt1_state
from .spikes import (
    drop_party,
    purify,
    spike_classical_spectrum,
    spike_pmf,
    spike_quantum_lt1_spectrum,
    spike_quantum_lt1_state,
)
from .upset_states import upset_gt1_spectrum, upset_gt1_state, upset_lt1_spectrum, upset_lt1_state

_SPECTRA = {
    Kind.SPIKE_CLASSICAL: spike_classical_spectrum,
    Kind.SPIKE_QUANTUM_LT1: spike_quantum_lt1_spectrum,
    Kind.DILUTION_GT1: dilution_spectrum,
    Kind.SPIKE_QUANTUM_GT1: spike_quantum_gt1_spectrum,
    Kind.UPSET_LT1: upset_lt1_spectrum,
    Kind.UPSET_GT1: upset_gt1_spectrum,
}


def analytic_marginal_spectrum(desc: ConstructionDescriptor, subset) -> WeightedSpectrum:
    """Spectrum of the marginal on ``subset`` from the construction's closed form."""
    mask = as_mask(subset, desc.parties)
    if desc.kind in _SPECTRA:
        return _SPECTRA[desc.kind](desc, mask)
    if desc.kind is Kind.PURIFICATION:
        if mask.is_full():
            return WeightedSpectrum.pure()
        pos = desc.params["position"]
        if mask.bits >> pos & 1:
            mask = mask.complement()
        base = desc.components[0]
        return analytic_marginal_spectrum(base, SubsetMask(drop_party(mask.bits, pos), base.parties))
    if desc.kind is Kind.TENSOR_COMPOSITE:
        spec = WeightedSpectrum.pure()
        for comp in desc.components:
            spec = spec.tensor(analytic_marginal_spectrum(comp, mask.bits))
        return spec
    raise RenyiConeError(f"no closed form for descriptor kind {desc.kind!r}")


def analytic_entropy_vector(desc: ConstructionDescriptor, order: OrderLike) -> EntropyVector:
    """Entropy vector over ``desc.parties`` parties without enumerating the state.

    Composites add the component vectors, which is exact by extensivity.
    """
    order = RenyiOrder.of(order)
    if desc.kind is Kind.TENSOR_COMPOSITE:
        total = EntropyVector.zeros(desc.parties, order)
        for comp in desc.components:
            total = total + analytic_entropy_vector(comp, order)
        return total
    return EntropyVector.from_function(
        desc.parties, lambda m: renyi_entropy(analytic_marginal_spectrum(desc, m), order), order
    )


def tensor_pure_states(states: list[SparsePureState]) -> SparsePureState:
    """Tensor product of pure states on the same party count, merged party by party."""
    if not states:
        raise RenyiConeError("no states to combine")
    n = states[0].n
    count = math.prod(s.num_amplitudes for s in states)
    if count > MAX_PURE_AMPLITUDES:
        raise BudgetExceededError(f"composite needs {count} amplitudes, cap is {MAX_PURE_AMPLITUDES}")
    dims = [1] * n
    idx = np.zeros((1, n), dtype=np.int64)
    amps = np.ones(1, dtype=np.complex128)
    for st in states:
        if st.n != n:
            raise RenyiConeError("tensor factors must have equal party counts")
        radix = np.array(st.dims, dtype=np.int64)
        idx = (idx[:, None, :] * radix + st.indices[None, :, :]).reshape(-1, n)
        amps = np.multiply.outer(amps, st.amplitudes).reshape(-1)
        dims = [a * b for a, b in zip(dims, st.dims)]
        if max(dims) >= 2**62:
            raise BudgetExceededError("composite local dimension overflows 64-bit labels")
    return SparsePureState(dims, idx, amps)


def explicit_state(desc: ConstructionDescriptor):
    """Enumerate the explicit state; raises :class:`BudgetExceededError` when too large."""
    kind = desc.kind
    if kind is Kind.SPIKE_CLASSICAL:
        return spike_pmf(desc.params["M"], desc.params["t"])
    if kind is Kind.SPIKE_QUANTUM_LT1:
        return spike_quantum_lt1_state(desc)
    if kind is Kind.DILUTION_GT1:
        return dilution_state(desc)
    if kind is Kind.SPIKE_QUANTUM_GT1:
        return spike_quantum_gt1_state(desc)
    if kind is Kind.UPSET_LT1:
        return upset_lt1_state(desc)
    if kind is Kind.UPSET_GT1:
        return upset_gt1_state(desc)
    if kind is Kind.PURIFICATION:
        return purify(explicit_state(desc.components[0]), desc.params["position"])
    if kind is Kind.TENSOR_COMPOSITE:
        if not desc.components:
            return SparsePureState((1,) * desc.parties, [(0,) * desc.parties], [1.0])
        return tensor_pure_states([explicit_state(c) for c in desc.components])
    raise RenyiConeError(f"unknown descriptor kind {kind!r}")
