"""Tensor composites of spikes approximating an arbitrary non-negative target vector."""

from __future__ import annotations

import math
from typing import Optional

from ..core import EntropyVector, RenyiOrder, SubsetMask
from ..errors import AlphabetTooSmallError, RenyiConeError
from .analytic import analytic_entropy_vector, explicit_state
from .descriptor import Construction, ConstructionDescriptor, Kind, as_order
from .dilution import _bound, renyi_target_distribution, spike_quantum_gt1_descriptor
from .spikes import _try, spike_quantum_lt1_descriptor

MAX_SEARCH_M = 2**40


def composite_bound(n: int, alpha) -> float:
    """Additive constant ``(alpha/(alpha-1)) * log2(n+1) * 2**(n+1)`` for ``alpha > 1``."""
    order = as_order(alpha)
    return _bound(order, n + 1) * 2 ** (n + 1)


def _components(target: EntropyVector, order: RenyiOrder, M: Optional[int]):
    n = target.n
    comps = []
    for mask, value in target.items():
        if value == 0:
            continue
        if order.below_one():
            comps.append(spike_quantum_lt1_descriptor(n, mask, value, order, M))
        else:
            R = renyi_target_distribution(value, order, M)
            comps.append(spike_quantum_gt1_descriptor(n, mask.bits, value, order, R))
    return comps


def target_vector_descriptor(
    target: EntropyVector, alpha, M: Optional[int] = None, epsilon: Optional[float] = None
) -> ConstructionDescriptor:
    order = as_order(alpha)
    n = target.n
    if order.kind in ("zero", "one"):
        raise RenyiConeError(f"target_vector_state needs alpha != 0, 1, got {order}")
    if (target.values < 0).any():
        raise RenyiConeError("target vector has a negative coordinate")
    params = {"alpha": order, "target": [float(v) for v in target.values]}
    if order.below_one():
        if M is None:
            M = _search_M(target, order, epsilon)
        comps = _components(target, order, M)
        params["M"] = int(M)
    else:
        comps = _components(target, order, M)
        params["M"] = None if M is None else int(M)
        params["C"] = composite_bound(n, order)
    params["subsets"] = [m.bits for m, v in target.items() if v != 0]
    return ConstructionDescriptor(Kind.TENSOR_COMPOSITE, n, n + 1, params, tuple(comps))


def _search_M(target: EntropyVector, order: RenyiOrder, epsilon: Optional[float]) -> int:
    """Smallest power of two ``M >= 2`` that is valid and, if ``epsilon`` is set, within it."""
    M = 2
    while M <= MAX_SEARCH_M:
        try:
            comps = _components(target, order, M)
        except AlphabetTooSmallError:
            M *= 2
            continue
        if epsilon is None:
            return M
        desc = ConstructionDescriptor(Kind.TENSOR_COMPOSITE, target.n, target.n + 1, {"alpha": order}, tuple(comps))
        if composite_error(desc, target) <= epsilon:
            return M
        M *= 2
    raise RenyiConeError(f"no M up to 2**40 reaches the requested accuracy {epsilon}")


def composite_error(desc: ConstructionDescriptor, target: EntropyVector) -> float:
    """Sup-norm distance between the achieved vector on ``[n]`` and the target."""
    achieved = analytic_entropy_vector(desc, desc.order).restrict(target.n)
    return achieved.sup_distance(target)


def target_vector_state(
    target: EntropyVector,
    alpha,
    M: Optional[int] = None,
    epsilon: Optional[float] = None,
    *,
    explicit: bool = True,
) -> Construction:
    """Tensor product of one spike per nonzero target coordinate.

    Every spike is a pure state on ``n + 1`` parties; the composite keeps the
    ``n`` logical parties and merges all purifying parties into party
    ``n + 1``, so its entropy vector on ``[n]`` is the sum of the spikes'.
    For ``alpha < 1`` pass ``M`` or ``epsilon`` (or neither, for the smallest
    valid ``M``); for ``alpha > 1`` ``M`` optionally fixes the size of the
    alphabet of each spike's base distribution.
    """
    desc = target_vector_descriptor(target, alpha, M, epsilon)
    return Construction(desc, _try(lambda: explicit_state(desc)) if explicit else None)
