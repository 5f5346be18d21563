"""Construction descriptors and shared spike arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Any, Mapping, Optional, Union

from ..core import ClassicalState, RenyiOrder, SparsePureState, WeightedSpectrum
from ..errors import AlphabetTooSmallError, RenyiConeError

MAX_CLASSICAL_ATOMS = 10**6
MAX_PURE_AMPLITUDES = 10**5


class Kind(str, Enum):
    SPIKE_CLASSICAL = "spike_classical"
    SPIKE_QUANTUM_LT1 = "spike_quantum_lt1"
    DILUTION_GT1 = "dilution_gt1"
    SPIKE_QUANTUM_GT1 = "spike_quantum_gt1"
    UPSET_LT1 = "upset_lt1"
    UPSET_GT1 = "upset_gt1"
    PURIFICATION = "purification"
    TENSOR_COMPOSITE = "tensor_composite"


@dataclass(frozen=True)
class ConstructionDescriptor:
    """Symbolic record of a construction.

    ``n`` is the logical party count the construction was requested for and
    ``parties`` the party count of the explicit state (``n + 1`` for the
    pure-state constructions). ``params`` holds the kind-specific inputs and
    derived quantities such as the spike weight ``t``.
    """

    kind: Kind
    n: int
    parties: int
    params: Mapping[str, Any]
    components: tuple["ConstructionDescriptor", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    @property
    def order(self) -> RenyiOrder:
        return self.params["alpha"]


@dataclass(frozen=True)
class Construction:
    descriptor: ConstructionDescriptor
    state: Optional[Union[ClassicalState, SparsePureState]] = field(default=None)


def spike_weight(s: float, alpha: float, size: float) -> float:
    """Spike weight ``t`` with ``t**alpha * size**(1-alpha) = 2**(s(1-alpha)) - 1``."""
    boost = math.expm1(s * (1.0 - alpha) * math.log(2.0))
    return (boost / float(size) ** (1.0 - alpha)) ** (1.0 / alpha)


def min_alphabet_size(s: float, alpha: Union[RenyiOrder, float], n: int = 1) -> int:
    """Smallest joint alphabet size ``M`` (product of the ``n`` local sizes) giving ``t <= 1``."""
    order = RenyiOrder.of(alpha)
    if not order.below_one():
        raise RenyiConeError(f"min_alphabet_size needs 0 < alpha < 1, got {order}")
    if s <= 0:
        raise RenyiConeError("target entropy s must be positive")
    if n < 1:
        raise RenyiConeError("party count must be positive")
    a = order.alpha
    need = math.expm1(s * (1.0 - a) * math.log(2.0))
    m = max(1, math.ceil(need ** (1.0 / (1.0 - a))))
    # guard the ceil against rounding on either side
    while m > 1 and (m - 1) ** (1.0 - a) >= need:
        m -= 1
    while m ** (1.0 - a) < need * (1 - 1e-15):
        m += 1
    return m


def check_spike_weight(t: float, s: float, alpha: float, what: str, n: int = 1) -> None:
    if t > 1.0 + 1e-12:
        m = min_alphabet_size(s, alpha, n)
        raise AlphabetTooSmallError(
            f"{what} is too small for s={s} at alpha={alpha}: t={t:.6g} > 1; "
            f"min_alphabet_size gives a joint alphabet of at least {m}",
            min_size=m,
        )


def spike_spectrum(t: float, size: float) -> WeightedSpectrum:
    """Marginal spectrum ``{(1 - t, 1), (t / size, size)}`` of a spike pmf."""
    return WeightedSpectrum([(1.0 - t, 1), (t / size, size)])


def as_order(alpha) -> RenyiOrder:
    return RenyiOrder.of(alpha)
