"""Upsets (upward-closed families) of nonempty subsets of ``[n]``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..core import EntropyVector, SubsetMask, as_mask
from ..errors import RenyiConeError


@dataclass(frozen=True)
class Upset:
    n: int
    members: frozenset[int]
    minimal: frozenset[int]

    def __contains__(self, subset) -> bool:
        return as_mask(subset, self.n).bits in self.members

    @property
    def generators(self) -> list[SubsetMask]:
        """Minimal elements in ascending bitmask order."""
        return [SubsetMask(b, self.n) for b in sorted(self.minimal)]

    def member_masks(self) -> list[SubsetMask]:
        return [SubsetMask(b, self.n) for b in sorted(self.members)]


def upward_closure(n: int, generators: Iterable) -> Upset:
    """Smallest upset containing every generator; redundant generators are dropped."""
    gens = [as_mask(g, n).bits for g in generators]
    if not gens:
        raise RenyiConeError("upward closure needs at least one generator")
    full = (1 << n) - 1
    members = frozenset(b for b in range(1, full + 1) if any(b & g == g for g in gens))
    minimal = frozenset(
        b for b in members if not any(o != b and o & b == o for o in members)
    )
    return Upset(n, members, minimal)


def indicator_vector(upset: Upset) -> EntropyVector:
    return EntropyVector.from_function(upset.n, lambda m: 1.0 if m.bits in upset.members else 0.0)
