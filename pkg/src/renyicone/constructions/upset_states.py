"""Classical states approximating rays ``s * indicator(U)`` for upsets ``U``."""

from __future__ import annotations

import math
from typing import Iterable, Optional

import numpy as np

from ..core import ClassicalState, EntropyVector, SubsetMask, WeightedSpectrum
from ..errors import AlphabetTooSmallError, BudgetExceededError, RenyiConeError
from .descriptor import MAX_CLASSICAL_ATOMS, Construction, ConstructionDescriptor, Kind, as_order, spike_spectrum
from .dilution import _bound
from .spikes import _alphabet_list, _try
from .upsets import Upset, upward_closure

LOG2 = math.log(2.0)


def _bits_size(bits: int) -> int:
    return bin(bits).count("1")


def upset_lt1_descriptor(n: int, generators: Iterable, s: float, alpha, M) -> ConstructionDescriptor:
    order = as_order(alpha)
    if not order.below_one():
        raise RenyiConeError(f"upset_classical_lt1 needs 0 < alpha < 1, got {order}")
    if s <= 0:
        raise RenyiConeError("target entropy s must be positive")
    upset = upward_closure(n, generators)
    gens = [g.bits for g in upset.generators]
    sizes = _alphabet_list(M, n)
    a = order.alpha
    L = len(gens)
    s_prime = s + a / (1.0 - a) * math.log2(L)
    ts = []
    for g in gens:
        joint = math.prod(sizes[i] for i in range(n) if g >> i & 1)
        # t_J**alpha * M_J**(1 - alpha) = 2**(s'(1 - alpha))
        t = math.exp((s_prime * (1.0 - a) * LOG2 - (1.0 - a) * math.log(joint)) / a)
        if t > 1.0 + 1e-12:
            need = math.ceil(2.0**s_prime)
            raise AlphabetTooSmallError(
                f"generator {SubsetMask(g, n)} needs a joint alphabet of at least {need}, has {joint}",
                min_size=need,
            )
        ts.append(min(t, 1.0))
    return ConstructionDescriptor(
        Kind.UPSET_LT1,
        n,
        n,
        {"generators": gens, "s_bits": float(s), "alpha": order, "M": sizes, "t": ts, "s_prime": s_prime},
    )


def upset_lt1_spectrum(desc: ConstructionDescriptor, mask: SubsetMask) -> WeightedSpectrum:
    p = desc.params
    sizes = p["M"]
    L = len(p["generators"])
    parts = []
    for g, t in zip(p["generators"], p["t"]):
        common = g & mask.bits
        if not common:
            parts.append((1.0 / L, WeightedSpectrum.pure()))
        else:
            joint = math.prod(sizes[i] for i in range(desc.n) if common >> i & 1)
            parts.append((1.0 / L, spike_spectrum(t, float(joint))))
    return WeightedSpectrum.direct_sum(parts)


def upset_lt1_limit(desc: ConstructionDescriptor, mask: SubsetMask) -> float:
    """Large-alphabet limit ``log2(L**(1-a) + 2**(s(1-a)) * #{J in L : J <= I}) / (1-a)``."""
    p = desc.params
    a = p["alpha"].alpha
    L = len(p["generators"])
    covered = sum(1 for g in p["generators"] if g & mask.bits == g)
    return math.log2(L ** (1.0 - a) + 2.0 ** (p["s_bits"] * (1.0 - a)) * covered) / (1.0 - a)


def upset_lt1_limit_vector(desc: ConstructionDescriptor) -> EntropyVector:
    return EntropyVector.from_function(desc.n, lambda m: upset_lt1_limit(desc, m), desc.order)


def upset_lt1_bounds(desc: ConstructionDescriptor) -> dict[str, float]:
    """Stated bounds: members lie in ``[s, s + (log2 L + 1)/(1-a)]``, non-members below ``log2 L + 1``.

    The large-alphabet limit on non-members is exactly ``log2 L``; both are reported.
    """
    p = desc.params
    L = len(p["generators"])
    a = p["alpha"].alpha
    return {
        "member_lower": p["s_bits"],
        "member_upper": p["s_bits"] + (math.log2(L) + 1.0) / (1.0 - a),
        "outside_upper": math.log2(L) + 1.0,
        "outside_limit": math.log2(L),
    }


def upset_lt1_state(desc: ConstructionDescriptor) -> ClassicalState:
    p = desc.params
    n, sizes = desc.n, p["M"]
    gens = p["generators"]
    L = len(gens)
    support = sum(math.prod(sizes[i] for i in range(n) if g >> i & 1) + 1 for g in gens)
    if support > MAX_CLASSICAL_ATOMS:
        raise BudgetExceededError(f"upset support {support} exceeds {MAX_CLASSICAL_ATOMS} atoms")
    # party i's alphabet is a disjoint union of per-generator blocks
    offsets = np.zeros((L, n), dtype=np.int64)
    alphabet = [0] * n
    for b, g in enumerate(gens):
        for i in range(n):
            offsets[b, i] = alphabet[i]
            alphabet[i] += sizes[i] + 1 if g >> i & 1 else 1
    rows, probs = [], []
    for b, (g, t) in enumerate(zip(gens, p["t"])):
        cols = [i for i in range(n) if g >> i & 1]
        local = [sizes[i] for i in cols]
        joint = math.prod(local)
        body = np.stack(np.unravel_index(np.arange(joint), tuple(local)), axis=1) + 1
        block = np.zeros((joint + 1, n), dtype=np.int64)
        block[1:, cols] = body
        rows.append(block + offsets[b])
        probs.append(np.concatenate([[1.0 - t], np.full(joint, t / joint)]) / L)
    return ClassicalState(alphabet, np.vstack(rows), np.concatenate(probs))


def upset_classical_lt1(n: int, generators: Iterable, s: float, alpha, M, *, explicit: bool = True) -> Construction:
    """Uniform mixture over the minimal generators ``J`` of spikes on ``J``.

    Each spike lives on its own block of every local alphabet, so the mixture
    components stay disjoint in every marginal. Non-antichain generator lists
    are reduced to their minimal elements first.
    """
    desc = upset_lt1_descriptor(n, generators, s, alpha, M)
    return Construction(desc, _try(lambda: upset_lt1_state(desc)) if explicit else None)


def diagonal_size(s: float) -> int:
    """Smallest ``M >= 1`` with ``s <= 1 + log2 M``."""
    m = max(1, math.ceil(2.0 ** (s - 1.0)))
    while m > 1 and s <= 1.0 + math.log2(m - 1):
        m -= 1
    while s > 1.0 + math.log2(m) + 1e-12:
        m += 1
    return m


def upset_gt1_descriptor(n: int, generators: Iterable, s: float, alpha, M: Optional[int] = None) -> ConstructionDescriptor:
    order = as_order(alpha)
    if not order.above_one():
        raise RenyiConeError(f"upset_classical_gt1 needs 1 < alpha <= inf, got {order}")
    if s <= 0:
        raise RenyiConeError("target entropy s must be positive")
    upset = upward_closure(n, generators)
    gens = [g.bits for g in upset.generators]
    if M is None:
        M = diagonal_size(s)
    elif s > 1.0 + math.log2(M) + 1e-12:
        raise AlphabetTooSmallError(f"M={M} violates s <= 1 + log2 M", min_size=diagonal_size(s))
    k = len(gens)
    return ConstructionDescriptor(
        Kind.UPSET_GT1,
        n,
        n,
        {"generators": gens, "s_bits": float(s), "alpha": order, "M": int(M), "C": _bound(order, 2 * n**k)},
    )


def _block_marginal(g: int, mask: SubsetMask, M: int) -> WeightedSpectrum:
    size = _bits_size(g)
    common = _bits_size(g & mask.bits)
    if common == 0:
        return WeightedSpectrum.pure()
    if common == size:
        return WeightedSpectrum.uniform(size * M)
    return WeightedSpectrum([((size - common) / size, 1), (1.0 / (size * M), common * M)])


def upset_gt1_spectrum(desc: ConstructionDescriptor, mask: SubsetMask) -> WeightedSpectrum:
    M = desc.params["M"]
    product = WeightedSpectrum.pure()
    for g in desc.params["generators"]:
        product = product.tensor(_block_marginal(g, mask, M))
    return WeightedSpectrum.direct_sum([(0.5, WeightedSpectrum.uniform(M)), (0.5, product)])


def upset_gt1_state(desc: ConstructionDescriptor) -> ClassicalState:
    n = desc.n
    M = desc.params["M"]
    gens = desc.params["generators"]
    support = M + math.prod(_bits_size(g) * M for g in gens)
    if support > MAX_CLASSICAL_ATOMS:
        raise BudgetExceededError(f"upset support {support} exceeds {MAX_CLASSICAL_ATOMS} atoms")
    codes = np.zeros((1, n), dtype=np.int64)
    probs = np.ones(1)
    radix_total = np.ones(n, dtype=np.int64)
    for g in gens:
        # dilution on the parties of g with uniform R on [M]; a fixed symbol elsewhere
        members = [i for i in range(n) if g >> i & 1]
        radix = np.array([M + 1 if g >> i & 1 else 1 for i in range(n)], dtype=np.int64)
        local = np.zeros((len(members) * M, n), dtype=np.int64)
        for r, i in enumerate(members):
            local[r * M : (r + 1) * M, i] = np.arange(1, M + 1)
        local_p = np.full(len(members) * M, 1.0 / (len(members) * M))
        codes = (codes[:, None, :] * radix + local[None, :, :]).reshape(-1, n)
        probs = np.multiply.outer(probs, local_p).reshape(-1)
        radix_total = radix_total * radix
    diag = np.repeat(np.arange(M, dtype=np.int64)[:, None], n, axis=1)
    idx = np.vstack([diag, codes + M])
    p = np.concatenate([np.full(M, 0.5 / M), 0.5 * probs])
    return ClassicalState(M + radix_total, idx, p)


def upset_classical_gt1(n: int, generators: Iterable, s: float, alpha, M: Optional[int] = None, *, explicit: bool = True) -> Construction:
    """Half a uniform diagonal on ``[M]**n`` plus half a product of dilutions.

    Every marginal keeps the diagonal's atoms of weight ``1/(2M)``, which caps
    entropies off the upset; on the upset the dilution factors contribute a
    uniform block of size ``|J| M``.
    """
    desc = upset_gt1_descriptor(n, generators, s, alpha, M)
    return Construction(desc, _try(lambda: upset_gt1_state(desc)) if explicit else None)
