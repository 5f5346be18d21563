"""Checkers for the linear inequalities an entropy vector may or may not satisfy."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from ..core import EntropyVector, SubsetMask, iter_strict_pairs
from ..errors import DimensionError

SATISFIED_TOL = 1e-9


@dataclass(frozen=True)
class MonotonicityViolation:
    """``smaller`` has more entropy than ``larger``; ``larger`` is None for a negative entry."""

    smaller: SubsetMask
    larger: Optional[SubsetMask]
    excess: float

    def describe(self) -> str:
        if self.larger is None:
            return f"S({self.smaller}) = {-self.excess:.6g} < 0"
        return f"S({self.smaller}) exceeds S({self.larger}) by {self.excess:.6g}"


def check_monotonicity(ev: EntropyVector, tol: float = SATISFIED_TOL) -> list[MonotonicityViolation]:
    """Negative entries and pairs ``I < J`` with ``S(I) > S(J) + tol``."""
    found = []
    for mask, value in ev.items():
        if value < -tol:
            found.append(MonotonicityViolation(mask, None, -value))
    for small, big in sorted(iter_strict_pairs(ev.n), key=lambda p: (p[1].bits, p[0].bits)):
        diff = ev[small] - ev[big]
        if diff > tol:
            found.append(MonotonicityViolation(small, big, diff))
    return found


@dataclass(frozen=True)
class VNSlack:
    name: str
    slack: float


@dataclass(frozen=True)
class VNReport:
    ssa: tuple[VNSlack, ...]
    weak_monotonicity: tuple[VNSlack, ...]
    order: Optional[str]

    @property
    def passed(self) -> bool:
        return all(s.slack >= -SATISFIED_TOL for s in self.ssa + self.weak_monotonicity)

    @property
    def min_slack(self) -> float:
        return min(s.slack for s in self.ssa + self.weak_monotonicity)


def check_vn_inequalities(ev: EntropyVector) -> VNReport:
    """Strong subadditivity and weak monotonicity slacks of a 3-party vector.

    SSA: ``S(AB) + S(BC) - S(ABC) - S(B)``; weak monotonicity:
    ``S(AC) + S(BC) - S(A) - S(B)``, over all relabelings of the parties
    (duplicates from the A <-> C or A <-> B symmetry are dropped). Both hold
    for the von Neumann entropy, so the vector should come from order 1.
    """
    if ev.n != 3:
        raise DimensionError(f"von Neumann checks need n = 3, got {ev.n}")

    def S(*parties):
        return ev[SubsetMask.from_parties(parties, 3)]

    ssa, wm = {}, {}
    for a, b, c in permutations((1, 2, 3)):
        key = (min(a, c), b, max(a, c))
        if key not in ssa:
            ssa[key] = VNSlack(f"SSA[{key[0]}|{b}|{key[2]}]", S(a, b) + S(b, c) - S(a, b, c) - S(b))
        key = (min(a, b), max(a, b), c)
        if key not in wm:
            wm[key] = VNSlack(f"WM[{key[0]},{key[1]}|{c}]", S(a, c) + S(b, c) - S(a) - S(b))
    return VNReport(
        tuple(ssa[k] for k in sorted(ssa)),
        tuple(wm[k] for k in sorted(wm)),
        None if ev.order is None else str(ev.order),
    )
