"""Spike constructions for ``0 < alpha < 1``.

A spike concentrates weight ``1 - t`` on a single all-zero outcome and
spreads ``t`` uniformly over a large product alphabet, so the joint entropy
approaches a target ``s`` while every proper marginal stays near zero.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence, Union

import numpy as np

from ..core import ClassicalState, SparsePureState, SubsetMask, WeightedSpectrum, as_mask
from ..errors import BudgetExceededError, DimensionError, RenyiConeError
from .descriptor import (
    MAX_CLASSICAL_ATOMS,
    MAX_PURE_AMPLITUDES,
    Construction,
    ConstructionDescriptor,
    Kind,
    as_order,
    check_spike_weight,
    spike_spectrum,
    spike_weight,
)


def _lt1_order(alpha):
    order = as_order(alpha)
    if not order.below_one():
        raise RenyiConeError(f"this construction needs 0 < alpha < 1, got {order}")
    return order


def _alphabet_list(M: Union[int, Sequence[int]], n: int) -> tuple[int, ...]:
    sizes = (int(M),) * n if np.isscalar(M) else tuple(int(m) for m in M)
    if len(sizes) != n:
        raise DimensionError(f"expected {n} alphabet sizes, got {len(sizes)}")
    if any(m < 1 for m in sizes):
        raise DimensionError("alphabet sizes must be positive")
    return sizes


def _power(base: int, exp: int) -> float:
    # exact integer when representable, float otherwise
    value = base**exp
    return float(value)


def spike_classical_descriptor(n: int, s: float, alpha, M) -> ConstructionDescriptor:
    order = _lt1_order(alpha)
    if s <= 0:
        raise RenyiConeError("target entropy s must be positive")
    sizes = _alphabet_list(M, n)
    joint = math.prod(sizes)
    t = spike_weight(s, order.alpha, joint)
    check_spike_weight(t, s, order.alpha, f"joint alphabet {joint}", n)
    return ConstructionDescriptor(
        Kind.SPIKE_CLASSICAL, n, n, {"s_bits": float(s), "alpha": order, "M": sizes, "t": min(t, 1.0)}
    )


def spike_pmf(sizes: Sequence[int], t: float) -> ClassicalState:
    """``1 - t`` on the all-zero tuple, ``t / prod(sizes)`` on each all-nonzero tuple."""
    joint = math.prod(sizes)
    if joint + 1 > MAX_CLASSICAL_ATOMS:
        raise BudgetExceededError(f"spike support {joint + 1} exceeds {MAX_CLASSICAL_ATOMS} atoms")
    body = np.stack(np.unravel_index(np.arange(joint), tuple(sizes)), axis=1) + 1
    idx = np.vstack([np.zeros((1, len(sizes)), dtype=np.int64), body])
    probs = np.concatenate([[1.0 - t], np.full(joint, t / joint)])
    return ClassicalState([m + 1 for m in sizes], idx, probs)


def spike_classical_spectrum(desc: ConstructionDescriptor, mask: SubsetMask) -> WeightedSpectrum:
    sizes = desc.params["M"]
    return spike_spectrum(desc.params["t"], float(math.prod(sizes[i] for i in mask.indices)))


def spike_classical(n: int, s: float, alpha, M, *, explicit: bool = True) -> Construction:
    """Classical spike approximating ``s`` times the indicator of ``[n]``.

    ``M`` gives the local alphabet sizes (one int is broadcast to all parties);
    party ``i`` uses symbols ``0..M_i``. Raises :class:`AlphabetTooSmallError`
    when the joint alphabet cannot host ``t <= 1``.
    """
    desc = spike_classical_descriptor(n, s, alpha, M)
    return Construction(desc, _try(lambda: spike_pmf(desc.params["M"], desc.params["t"])) if explicit else None)


def _try(build):
    try:
        return build()
    except BudgetExceededError:
        return None


def purify(state: ClassicalState, position: Optional[int] = None) -> SparsePureState:
    """Purify a classical state with a copy register inserted at 0-based ``position``.

    The register has dimension equal to the support size and carries the atom
    index; amplitudes are square roots of the probabilities.
    """
    n = state.n
    pos = n if position is None else position
    if not 0 <= pos <= n:
        raise DimensionError(f"purifier position {pos} outside [0, {n}]")
    k = state.support_size
    if k > MAX_PURE_AMPLITUDES:
        raise BudgetExceededError(f"purification needs {k} amplitudes, cap is {MAX_PURE_AMPLITUDES}")
    copy = np.arange(k, dtype=np.int64)[:, None]
    idx = np.hstack([state.indices[:, :pos], copy, state.indices[:, pos:]])
    dims = state.alphabet_sizes[:pos] + (k,) + state.alphabet_sizes[pos:]
    return SparsePureState(dims, idx, np.sqrt(state.probs))


def drop_party(bits: int, pos: int) -> int:
    """Remove bit ``pos`` from a mask, shifting higher parties down."""
    low = bits & ((1 << pos) - 1)
    return low | ((bits >> (pos + 1)) << pos)


def spike_quantum_lt1_descriptor(n: int, I, s: float, alpha, M: int) -> ConstructionDescriptor:
    order = _lt1_order(alpha)
    if s <= 0:
        raise RenyiConeError("target entropy s must be positive")
    M = int(M)
    if M < 2:
        raise DimensionError("spike_quantum_lt1 needs M >= 2")
    target = as_mask(I, n)
    total = n + 1
    big = SubsetMask(target.bits, total)
    k = target.size
    ell = total - k
    a = order.alpha
    params = {"I": target.bits, "s_bits": float(s), "alpha": order, "M": M}
    if target.is_full() or k == 1:
        if target.is_full():
            purifier, spike_bits = total, target.bits
            case = "purify_full"
        else:
            purifier = target.parties[0]
            spike_bits = ((1 << total) - 1) ^ big.bits
            case = "purify_single"
        joint = M**n
        t = spike_weight(s, a, joint)
        check_spike_weight(t, s, a, f"alphabet M={M} (joint {joint})", n)
        params.update(case=case, purifier=purifier, spike_parties=spike_bits)
    else:
        t = spike_weight(s, a, float(M) ** (k * ell))
        check_spike_weight(t, s, a, f"alphabet M={M} (joint M^{k * ell})", n)
        params.update(case="grid", purifier=None, spike_parties=None)
    perm = list(big.parties) + list(big.complement().parties)
    params.update(t=min(t, 1.0), k=k, ell=ell, perm=perm)
    return ConstructionDescriptor(Kind.SPIKE_QUANTUM_LT1, n, total, params)


def _grid_state(desc: ConstructionDescriptor) -> SparsePureState:
    p = desc.params
    M, k, ell, t = p["M"], p["k"], p["ell"], p["t"]
    total = desc.parties
    count = M ** (k * ell)
    if count + 1 > MAX_PURE_AMPLITUDES:
        raise BudgetExceededError(f"grid state needs {count + 1} amplitudes, cap is {MAX_PURE_AMPLITUDES}")
    x = np.stack(np.unravel_index(np.arange(count), (M,) * (k * ell))).reshape(k, ell, count)
    rows = [p_ - 1 for p_ in p["perm"][:k]]
    cols = [p_ - 1 for p_ in p["perm"][k:]]
    idx = np.zeros((count, total), dtype=np.int64)
    for i, party in enumerate(rows):
        idx[:, party] = np.ravel_multi_index(tuple(x[i]), (M,) * ell) + 1
    for j, party in enumerate(cols):
        idx[:, party] = np.ravel_multi_index(tuple(x[:, j]), (M,) * k) + 1
    dims = [0] * total
    for party in rows:
        dims[party] = 1 + M**ell
    for party in cols:
        dims[party] = 1 + M**k
    idx = np.vstack([np.zeros((1, total), dtype=np.int64), idx])
    amps = np.concatenate([[math.sqrt(1.0 - t)], np.full(count, math.sqrt(t / count))])
    return SparsePureState(dims, idx, amps)


def spike_quantum_lt1_state(desc: ConstructionDescriptor) -> SparsePureState:
    p = desc.params
    if p["case"] == "grid":
        return _grid_state(desc)
    pmf = spike_pmf((p["M"],) * desc.n, p["t"])
    return purify(pmf, p["purifier"] - 1)


def spike_quantum_lt1_spectrum(desc: ConstructionDescriptor, mask: SubsetMask) -> WeightedSpectrum:
    p = desc.params
    if mask.is_full():
        return WeightedSpectrum.pure()
    M, t = p["M"], p["t"]
    if p["case"] == "grid":
        I = SubsetMask(p["I"], desc.parties)
        Ic = I.complement()
        J, Jc = mask.bits, mask.complement().bits
        # pairs (i, j) with i in I, j in I^c separated by the cut J | J^c
        c = bin(J & I.bits).count("1") * bin(Jc & Ic.bits).count("1") + bin(Jc & I.bits).count(
            "1"
        ) * bin(J & Ic.bits).count("1")
    else:
        side = mask if p["purifier"] not in mask else mask.complement()
        c = side.size
    return spike_spectrum(t, _power(M, c))


def spike_quantum_lt1(n: int, I, s: float, alpha, M: int, *, explicit: bool = True) -> Construction:
    """Pure state on ``n + 1`` parties whose marginal on ``I`` approaches entropy ``s``.

    ``I = [n]`` purifies the classical spike into party ``n + 1``; a single
    party ``I = {i}`` purifies a spike on the other ``n`` parties into ``i``.
    Otherwise every party of ``I`` shares an ``M``-dimensional maximally
    correlated coordinate with every party outside ``I``, giving local
    dimensions ``1 + M**ell`` on ``I`` and ``1 + M**k`` off it.
    """
    desc = spike_quantum_lt1_descriptor(n, I, s, alpha, M)
    return Construction(desc, _try(lambda: spike_quantum_lt1_state(desc)) if explicit else None)


def purification_descriptor(base: ConstructionDescriptor, position: Optional[int] = None) -> ConstructionDescriptor:
    if base.kind not in (Kind.SPIKE_CLASSICAL, Kind.DILUTION_GT1, Kind.UPSET_LT1, Kind.UPSET_GT1):
        raise RenyiConeError(f"cannot purify a {base.kind.value} construction")
    pos = base.parties if position is None else position
    return ConstructionDescriptor(
        Kind.PURIFICATION, base.n, base.parties + 1, {"position": pos, "alpha": base.order}, (base,)
    )
