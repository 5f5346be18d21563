"""Convergence of constructed entropy vectors toward a target as the alphabet grows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence, Union

from ..constructions import Construction, ConstructionDescriptor, analytic_entropy_vector, with_alphabet
from ..core import EntropyVector, OrderLike, RenyiOrder
from ..errors import RenyiConeError

CSV_HEADER = ("M", "subset", "entropy_bits", "target_bits", "abs_error")

Template = Union[ConstructionDescriptor, Callable[[int], Union[ConstructionDescriptor, Construction]]]


@dataclass(frozen=True)
class SweepRow:
    M: int
    vector: EntropyVector
    error: float


def convergence_sweep(
    template: Template, schedule: Sequence[int], alpha: OrderLike, target: EntropyVector
) -> list[SweepRow]:
    """Analytic entropy vectors and sup-norm errors against ``target``, one row per ``M``.

    ``template`` is either a descriptor, rebuilt at each ``M``, or a callable
    mapping ``M`` to a descriptor. Vectors over more parties than the target
    (pure-state constructions) are restricted to the target's parties.
    """
    order = RenyiOrder.of(alpha)
    sched = [int(m) for m in schedule]
    if any(b <= a for a, b in zip(sched, sched[1:])):
        raise RenyiConeError("schedule must be strictly increasing")
    rows = []
    for M in sched:
        if isinstance(template, ConstructionDescriptor):
            desc = with_alphabet(template, M)
        else:
            desc = template(M)
            if isinstance(desc, Construction):
                desc = desc.descriptor
        vec = analytic_entropy_vector(desc, order)
        if vec.n > target.n:
            vec = vec.restrict(target.n)
        rows.append(SweepRow(M, vec, vec.sup_distance(target)))
    return rows


def sweep_csv_rows(rows: Sequence[SweepRow], target: EntropyVector) -> Iterator[tuple]:
    for row in rows:
        for mask, value in row.vector.items():
            goal = target[mask]
            yield (row.M, str(mask), value, goal, abs(value - goal))
