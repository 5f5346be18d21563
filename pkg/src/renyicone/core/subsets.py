"""Nonempty subsets of the party set ``[n] = {1, ..., n}`` as bitmasks.

Party ``i`` corresponds to bit ``i - 1``. The canonical text form lists the
party indices as ascending digits, e.g. ``"13"`` for ``{1, 3}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from ..errors import DimensionError, EmptySystemError

MAX_TEXT_PARTIES = 9


@dataclass(frozen=True, order=True)
class SubsetMask:
    bits: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise EmptySystemError("party count must be at least 1")
        if not 1 <= self.bits < (1 << self.n):
            raise DimensionError(f"bitmask {self.bits} is not a nonempty subset of [{self.n}]")

    @classmethod
    def from_parties(cls, parties: Iterable[int], n: int) -> "SubsetMask":
        bits = 0
        for p in parties:
            if not 1 <= p <= n:
                raise DimensionError(f"party {p} outside [1, {n}]")
            bits |= 1 << (p - 1)
        return cls(bits, n)

    @classmethod
    def parse(cls, text: str, n: int) -> "SubsetMask":
        text = text.strip()
        if not text or not text.isdigit():
            raise DimensionError(f"invalid subset string {text!r}")
        digits = [int(c) for c in text]
        if len(set(digits)) != len(digits):
            raise DimensionError(f"repeated party in subset string {text!r}")
        return cls.from_parties(digits, n)

    @classmethod
    def full(cls, n: int) -> "SubsetMask":
        return cls((1 << n) - 1, n)

    @property
    def parties(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)

    @property
    def indices(self) -> tuple[int, ...]:
        """0-based party positions, ascending."""
        return tuple(i for i in range(self.n) if self.bits >> i & 1)

    @property
    def size(self) -> int:
        return bin(self.bits).count("1")

    def complement(self) -> "SubsetMask":
        return SubsetMask(((1 << self.n) - 1) ^ self.bits, self.n)

    def is_full(self) -> bool:
        return self.bits == (1 << self.n) - 1

    def issubset(self, other: "SubsetMask") -> bool:
        return self.bits & other.bits == self.bits

    def __contains__(self, party: int) -> bool:
        return 1 <= party <= self.n and bool(self.bits >> (party - 1) & 1)

    def __str__(self) -> str:
        if self.n > MAX_TEXT_PARTIES:
            raise DimensionError("ascending-digit subset text requires at most 9 parties")
        return "".join(str(p) for p in self.parties)


SubsetLike = Union[SubsetMask, int, str, Iterable[int]]


def as_mask(value: SubsetLike, n: int) -> SubsetMask:
    """Coerce a mask, raw bit pattern, digit string or party collection."""
    if isinstance(value, SubsetMask):
        if value.n != n:
            raise DimensionError(f"subset over {value.n} parties used with n={n}")
        return value
    if isinstance(value, str):
        return SubsetMask.parse(value, n)
    if isinstance(value, int):
        return SubsetMask(value, n)
    return SubsetMask.from_parties(value, n)


def subset_enumerate(n: int) -> list[SubsetMask]:
    """All ``2**n - 1`` nonempty subsets of ``[n]`` in ascending bitmask order."""
    if n < 1:
        raise EmptySystemError("cannot enumerate subsets of an empty party set")
    return [SubsetMask(b, n) for b in range(1, 1 << n)]


def iter_strict_pairs(n: int) -> Iterator[tuple[SubsetMask, SubsetMask]]:
    """Pairs ``(I, J)`` of nonempty subsets with ``I`` a proper subset of ``J``."""
    full = (1 << n) - 1
    for j in range(1, full + 1):
        sub = (j - 1) & j
        while sub:
            yield SubsetMask(sub, n), SubsetMask(j, n)
            sub = (sub - 1) & j
