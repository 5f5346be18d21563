"""Rebuild descriptors from their stored inputs, optionally at a new alphabet size."""

from __future__ import annotations

from typing import Any, Mapping, Optional, Sequence

from ..core import EntropyVector
from ..errors import RenyiConeError
from .composite import target_vector_descriptor
from .descriptor import ConstructionDescriptor, Kind
from .dilution import dilution_descriptor, renyi_target_distribution, spike_quantum_gt1_descriptor
from .spikes import purification_descriptor, spike_classical_descriptor, spike_quantum_lt1_descriptor
from .upset_states import upset_gt1_descriptor, upset_lt1_descriptor


def rebuild(
    kind: Kind,
    n: int,
    params: Mapping[str, Any],
    components: Sequence[ConstructionDescriptor] = (),
    M: Optional[int] = None,
) -> ConstructionDescriptor:
    """Recompute a descriptor from its inputs; derived fields are recalculated.

    When ``M`` is given it replaces the alphabet parameter of the construction
    (broadcast over parties where the construction takes a list).
    """
    p = params
    a = p["alpha"]
    if kind is Kind.SPIKE_CLASSICAL:
        return spike_classical_descriptor(n, p["s_bits"], a, p["M"] if M is None else M)
    if kind is Kind.SPIKE_QUANTUM_LT1:
        return spike_quantum_lt1_descriptor(n, p["I"], p["s_bits"], a, p["M"] if M is None else M)
    if kind is Kind.DILUTION_GT1:
        R = p["R"] if M is None else renyi_target_distribution(p["H_R"], a, M)
        return dilution_descriptor(n, a, R)
    if kind is Kind.SPIKE_QUANTUM_GT1:
        R = p["R"] if M is None else renyi_target_distribution(p["s_bits"], a, M)
        return spike_quantum_gt1_descriptor(n, p["I"], p["s_bits"], a, R)
    if kind is Kind.UPSET_LT1:
        return upset_lt1_descriptor(n, p["generators"], p["s_bits"], a, p["M"] if M is None else M)
    if kind is Kind.UPSET_GT1:
        return upset_gt1_descriptor(n, p["generators"], p["s_bits"], a, p["M"] if M is None else M)
    if kind is Kind.PURIFICATION:
        base = components[0] if M is None else with_alphabet(components[0], M)
        return purification_descriptor(base, p["position"])
    if kind is Kind.TENSOR_COMPOSITE:
        target = EntropyVector(n, p["target"], a)
        return target_vector_descriptor(target, a, p.get("M") if M is None else M)
    raise RenyiConeError(f"unknown descriptor kind {kind!r}")


def with_alphabet(desc: ConstructionDescriptor, M: int) -> ConstructionDescriptor:
    """The same construction with alphabet parameter ``M``."""
    return rebuild(desc.kind, desc.n, desc.params, desc.components, M)
