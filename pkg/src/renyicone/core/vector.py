"""Entropy vectors: one real number per nonempty subset of parties."""

from __future__ import annotations

from typing import Callable, Iterator, Mapping, Optional

import numpy as np

from ..errors import DimensionError
from .order import RenyiOrder
from .subsets import SubsetLike, SubsetMask, as_mask, subset_enumerate


class EntropyVector:
    """Immutable vector indexed by nonempty subsets, stored in bitmask order."""

    __slots__ = ("n", "values", "order")

    def __init__(self, n: int, values, order: Optional[RenyiOrder] = None):
        arr = np.array(values, dtype=np.float64).reshape(-1)
        if arr.size != (1 << n) - 1:
            raise DimensionError(f"entropy vector for n={n} needs {(1 << n) - 1} entries, got {arr.size}")
        arr.flags.writeable = False
        self.n = n
        self.values = arr
        self.order = order

    @classmethod
    def from_function(cls, n: int, fn: Callable[[SubsetMask], float], order=None) -> "EntropyVector":
        return cls(n, [fn(m) for m in subset_enumerate(n)], order)

    @classmethod
    def from_mapping(cls, n: int, entries: Mapping, order=None) -> "EntropyVector":
        values = np.full((1 << n) - 1, np.nan)
        for key, v in entries.items():
            values[as_mask(key, n).bits - 1] = float(v)
        if np.isnan(values).any():
            raise DimensionError("entropy vector mapping does not cover every nonempty subset")
        return cls(n, values, order)

    @classmethod
    def zeros(cls, n: int, order=None) -> "EntropyVector":
        return cls(n, np.zeros((1 << n) - 1), order)

    def __getitem__(self, key: SubsetLike) -> float:
        return float(self.values[as_mask(key, self.n).bits - 1])

    def items(self) -> Iterator[tuple[SubsetMask, float]]:
        for m in subset_enumerate(self.n):
            yield m, float(self.values[m.bits - 1])

    def as_dict(self) -> dict[str, float]:
        return {str(m): v for m, v in self.items()}

    def restrict(self, n: int) -> "EntropyVector":
        """Entries on subsets of the first ``n`` parties."""
        if not 1 <= n <= self.n:
            raise DimensionError(f"cannot restrict a {self.n}-party vector to {n} parties")
        return EntropyVector(n, self.values[: (1 << n) - 1], self.order)

    def sup_distance(self, other: "EntropyVector") -> float:
        if other.n != self.n:
            raise DimensionError("entropy vectors over different party counts")
        return float(np.max(np.abs(self.values - other.values)))

    def __add__(self, other: "EntropyVector") -> "EntropyVector":
        if other.n != self.n:
            raise DimensionError("entropy vectors over different party counts")
        return EntropyVector(self.n, self.values + other.values, self.order or other.order)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v:.6g}" for k, v in self.as_dict().items())
        return f"EntropyVector(n={self.n}, alpha={self.order}, {{{body}}})"
