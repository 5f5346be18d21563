"""Random search for violations of subadditivity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ..core import ClassicalState, DensityMatrix, OrderLike, RenyiOrder, WeightedSpectrum
from ..entropy import renyi_entropy
from ..errors import RenyiConeError

VIOLATION_TOL = 1e-6


def random_density_matrix(dims: Sequence[int], rng: np.random.Generator, rank: Optional[int] = None) -> DensityMatrix:
    """Normalized ``G G^dagger`` with ``G`` a complex standard Gaussian ``d x rank`` matrix."""
    d = math.prod(dims)
    r = d if rank is None else rank
    g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(dims, rho / np.trace(rho).real)


def random_pmf(dims: Sequence[int], rng: np.random.Generator) -> np.ndarray:
    """Dirichlet sample over the product alphabet; small concentrations give heavy tails."""
    conc = 10.0 ** rng.uniform(-1.5, 0.5)
    p = rng.dirichlet(np.full(math.prod(dims), conc))
    return p.reshape(tuple(dims))


@dataclass(frozen=True)
class ViolationWitness:
    """A state with ``S(AB) > S(A) + S(B) + VIOLATION_TOL``; ``slack = rhs - lhs`` is negative."""

    state: Union[DensityMatrix, ClassicalState]
    subsets: tuple[str, str, str]
    lhs: float
    rhs: float
    slack: float
    trial: int
    seed: int
    dims: tuple[int, int]
    alpha: RenyiOrder


def _classical_state(p: np.ndarray) -> ClassicalState:
    dims = p.shape
    idx = np.stack(np.unravel_index(np.arange(p.size), dims), axis=1)
    flat = p.reshape(-1)
    return ClassicalState(dims, idx, flat / math.fsum(flat.tolist()))


def _quantum_entropies(rho: DensityMatrix, order: RenyiOrder) -> tuple[float, float, float]:
    da, db = rho.dims
    t = rho.matrix.reshape(da, db, da, db)
    specs = [
        np.linalg.eigvalsh(np.einsum("ijkj->ik", t)),
        np.linalg.eigvalsh(np.einsum("ijil->jl", t)),
        np.linalg.eigvalsh(rho.matrix),
    ]
    return tuple(renyi_entropy(WeightedSpectrum.from_values(s, cutoff=1e-12), order) for s in specs)


def _classical_entropies(p: np.ndarray, order: RenyiOrder) -> tuple[float, float, float]:
    return tuple(
        renyi_entropy(WeightedSpectrum.from_values(q), order) for q in (p.sum(axis=1), p.sum(axis=0), p.ravel())
    )


def find_subadditivity_violation(
    alpha: OrderLike, trials: int, seed: int, dims: Sequence[int] = (2, 2)
) -> Optional[ViolationWitness]:
    """First sampled state violating ``S(AB) <= S(A) + S(B)``, or None.

    Trials alternate between random density matrices (even trials) and random
    classical pmfs (odd trials), all drawn from one generator seeded with
    ``seed``, so the result is reproducible. None means "not found within the
    budget", never "subadditivity holds".
    """
    order = RenyiOrder.of(alpha)
    if trials < 1:
        raise RenyiConeError("trials must be at least 1")
    da, db = (int(d) for d in dims)
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        if trial % 2 == 0:
            state = random_density_matrix((da, db), rng)
            sa, sb, sab = _quantum_entropies(state, order)
        else:
            p = random_pmf((da, db), rng)
            sa, sb, sab = _classical_entropies(p / p.sum(), order)
            state = None
        rhs = sa + sb
        if sab > rhs + VIOLATION_TOL:
            if state is None:
                state = _classical_state(p)
            return ViolationWitness(state, ("1", "2", "12"), sab, rhs, rhs - sab, trial, seed, (da, db), order)
    return None
