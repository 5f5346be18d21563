"""Constructions for ``1 < alpha <= inf`` built from a base distribution ``R``."""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ..core import ClassicalState, SparsePureState, SubsetMask, WeightedSpectrum, as_mask
from ..entropy import renyi_entropy
from ..errors import BudgetExceededError, DimensionError, RenyiConeError
from .descriptor import MAX_CLASSICAL_ATOMS, MAX_PURE_AMPLITUDES, Construction, ConstructionDescriptor, Kind, as_order
from .spikes import _try

TARGET_TOL = 1e-9


def _gt1_order(alpha):
    order = as_order(alpha)
    if not order.above_one():
        raise RenyiConeError(f"this construction needs 1 < alpha <= inf, got {order}")
    return order


def two_atom_distribution(p: float, M: int) -> WeightedSpectrum:
    """``p`` on one symbol and ``(1 - p) / (M - 1)`` on each of the others."""
    if M == 1:
        return WeightedSpectrum.pure()
    return WeightedSpectrum([(p, 1), ((1.0 - p) / (M - 1), M - 1)])


def renyi_target_distribution(s: float, alpha, M: Optional[int] = None) -> WeightedSpectrum:
    """Distribution on ``[M]`` with Rényi entropy ``s`` bits at order ``alpha``.

    Uses the two-atom family ``{p, (1-p)/(M-1), ...}``; its entropy falls
    monotonically from ``log2 M`` to 0 as ``p`` runs from ``1/M`` to 1, so
    ``p`` is found by bisection to 1e-12. ``M`` defaults to the smallest
    alphabet with ``log2 M >= s``.
    """
    order = as_order(alpha)
    if s < 0:
        raise RenyiConeError("target entropy must be non-negative")
    if M is None:
        M = max(1, math.ceil(2.0**s - 1e-9))
    if math.log2(M) < s - TARGET_TOL:
        raise RenyiConeError(f"alphabet of size {M} cannot reach {s} bits")
    if s == 0 or M == 1:
        return WeightedSpectrum.pure()
    if abs(math.log2(M) - s) <= 1e-12:
        return WeightedSpectrum.uniform(M)
    lo, hi = 1.0 / M, 1.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if renyi_entropy(two_atom_distribution(mid, M), order) > s:
            lo = mid
        else:
            hi = mid
    return two_atom_distribution(0.5 * (lo + hi), M)


def _bound(order, count: int) -> float:
    """``(alpha / (alpha - 1)) * log2(count)``; the ``inf`` limit is ``log2(count)``."""
    if order.is_infinite:
        return math.log2(count)
    return order.alpha / (order.alpha - 1.0) * math.log2(count)


def dilution_descriptor(n: int, alpha, R: WeightedSpectrum) -> ConstructionDescriptor:
    order = _gt1_order(alpha)
    if n < 2:
        raise DimensionError("dilution needs n >= 2")
    return ConstructionDescriptor(
        Kind.DILUTION_GT1,
        n,
        n,
        {"alpha": order, "R": R, "M": R.rank, "H_R": renyi_entropy(R, order), "C": _bound(order, n)},
    )


def dilution_spectrum(desc: ConstructionDescriptor, mask: SubsetMask) -> WeightedSpectrum:
    n, R = desc.n, desc.params["R"]
    k = mask.size
    # each party in the mask carries a copy of R / n; the rest collapses onto all-zero
    parts = [(k / n, _repeat(R, k))]
    if k < n:
        parts.append(((n - k) / n, WeightedSpectrum.pure()))
    return WeightedSpectrum.direct_sum(parts)


def _repeat(R: WeightedSpectrum, k: int) -> WeightedSpectrum:
    return WeightedSpectrum.direct_sum([(1.0 / k, R)] * k) if k > 1 else R


def dilution_state(desc: ConstructionDescriptor) -> ClassicalState:
    n, R = desc.n, desc.params["R"]
    r = R.expanded()
    M = r.size
    if n * M > MAX_CLASSICAL_ATOMS:
        raise BudgetExceededError(f"dilution support {n * M} exceeds {MAX_CLASSICAL_ATOMS} atoms")
    idx = np.zeros((n * M, n), dtype=np.int64)
    for i in range(n):
        idx[i * M : (i + 1) * M, i] = np.arange(1, M + 1)
    return ClassicalState((M + 1,) * n, idx, np.tile(r, n) / n)


def dilution_classical_gt1(n: int, alpha, R: WeightedSpectrum, *, explicit: bool = True) -> Construction:
    """Dilution: one random party carries a sample of ``R``, the others hold 0.

    The joint entropy is ``log2 n + H_alpha(R)`` while every proper marginal
    keeps an atom of weight at least ``1/n``.
    """
    desc = dilution_descriptor(n, alpha, R)
    return Construction(desc, _try(lambda: dilution_state(desc)) if explicit else None)


def spike_quantum_gt1_descriptor(n: int, I, s: float, alpha, R: WeightedSpectrum) -> ConstructionDescriptor:
    order = _gt1_order(alpha)
    total = n + 1
    target = as_mask(I, total)
    if target.is_full():
        raise DimensionError("I must be a proper subset of the n + 1 parties")
    h = renyi_entropy(R, order)
    if abs(h - s) > TARGET_TOL:
        raise RenyiConeError(f"H_alpha(R) = {h!r} differs from s = {s!r}")
    comp = target.complement()
    blocks = [(i, j) for i in target.parties for j in comp.parties]
    return ConstructionDescriptor(
        Kind.SPIKE_QUANTUM_GT1,
        n,
        total,
        {
            "I": target.bits,
            "s_bits": float(s),
            "alpha": order,
            "R": R,
            "blocks": blocks,
            "C": _bound(order, len(blocks)),
        },
    )


def spike_quantum_gt1_spectrum(desc: ConstructionDescriptor, mask: SubsetMask) -> WeightedSpectrum:
    if mask.is_full():
        return WeightedSpectrum.pure()
    blocks = desc.params["blocks"]
    cut = sum(1 for i, j in blocks if (i in mask) != (j in mask))
    K = len(blocks)
    parts = []
    if cut:
        parts.append((cut / K, _repeat(desc.params["R"], cut)))
    if cut < K:
        parts.append(((K - cut) / K, WeightedSpectrum.uniform(K - cut)))
    return WeightedSpectrum.direct_sum(parts)


def spike_quantum_gt1_state(desc: ConstructionDescriptor) -> SparsePureState:
    blocks = desc.params["blocks"]
    r = desc.params["R"].expanded()
    M, K, total = r.size, len(blocks), desc.parties
    if K * M > MAX_PURE_AMPLITUDES:
        raise BudgetExceededError(f"state needs {K * M} amplitudes, cap is {MAX_PURE_AMPLITUDES}")
    # local space of each party: direct sum over blocks, M-dimensional where the party
    # holds half of the shared pair, one-dimensional elsewhere
    offsets = np.zeros((K, total), dtype=np.int64)
    dims = [0] * total
    for b, (i, j) in enumerate(blocks):
        for party in range(total):
            offsets[b, party] = dims[party]
            dims[party] += M if party + 1 in (i, j) else 1
    idx = np.repeat(offsets, M, axis=0)
    x = np.tile(np.arange(M), K)
    for b, (i, j) in enumerate(blocks):
        rows = slice(b * M, (b + 1) * M)
        idx[rows, i - 1] += x[rows]
        idx[rows, j - 1] += x[rows]
    amps = np.sqrt(np.tile(r, K) / K)
    return SparsePureState(dims, idx, amps)


def spike_quantum_gt1(n: int, I, s: float, alpha, R: Optional[WeightedSpectrum] = None, *, explicit: bool = True) -> Construction:
    """Direct sum over pairs ``i in I``, ``j`` outside ``I`` of a purification of ``R``.

    ``I`` is a subset of the ``n + 1`` parties. The marginal on ``I`` has
    entropy exactly ``s + log2(|I| |I^c|)``; any other proper marginal that is
    not the complement of ``I`` has an atom of weight at least
    ``1 / (|I| |I^c|)``. ``R`` defaults to :func:`renyi_target_distribution`.
    """
    if R is None:
        R = renyi_target_distribution(s, alpha)
    desc = spike_quantum_gt1_descriptor(n, I, s, alpha, R)
    return Construction(desc, _try(lambda: spike_quantum_gt1_state(desc)) if explicit else None)
