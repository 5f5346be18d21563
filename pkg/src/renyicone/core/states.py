"""Multipartite states and their reductions.

Three representations are supported: sparse classical pmfs over a product
alphabet, sparse pure states over a product basis, and dense density
matrices for small systems. Every state is immutable after construction.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import BudgetExceededError, DimensionError, NormalizationError, RenyiConeError
from .spectrum import NORM_TOL, ZERO_CUTOFF, WeightedSpectrum
from .subsets import SubsetLike, SubsetMask, as_mask

MAX_DENSE_DIM = 4096
HERMITIAN_TOL = 1e-9


def _as_index_array(indices, n: int) -> np.ndarray:
    arr = np.asarray(indices, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, n)
    if arr.ndim != 2 or arr.shape[1] != n:
        raise DimensionError(f"index array must have shape (K, {n}), got {arr.shape}")
    return arr


def _check_ranges(idx: np.ndarray, sizes: Sequence[int], what: str):
    for col, size in enumerate(sizes):
        if size < 1:
            raise DimensionError(f"{what} of party {col + 1} must be positive")
        if idx.shape[0] and (idx[:, col].min() < 0 or idx[:, col].max() >= size):
            raise DimensionError(f"index of party {col + 1} outside its range [0, {size})")


def _group_rows(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unique rows and the inverse map, without materializing a flat index space."""
    if idx.shape[1] == 0:
        return idx[:1], np.zeros(idx.shape[0], dtype=np.int64)
    uniq, inverse = np.unique(idx, axis=0, return_inverse=True)
    return uniq, inverse.reshape(-1)


class ClassicalState:
    """Sparse probability mass function on a product alphabet.

    ``indices`` is a ``(K, n)`` array of 0-based symbols, ``probs`` the
    matching probabilities. Repeated rows are summed and zero rows dropped.
    """

    __slots__ = ("alphabet_sizes", "indices", "probs")

    def __init__(self, alphabet_sizes: Sequence[int], indices, probs, *, check: bool = True):
        sizes = tuple(int(m) for m in alphabet_sizes)
        if not sizes:
            raise DimensionError("a classical state needs at least one party")
        idx = _as_index_array(indices, len(sizes))
        p = np.asarray(probs, dtype=np.float64).reshape(-1)
        if p.shape[0] != idx.shape[0]:
            raise DimensionError("indices and probabilities differ in length")
        if check:
            _check_ranges(idx, sizes, "alphabet size")
            if np.any(p < 0) or not np.all(np.isfinite(p)):
                raise RenyiConeError("probabilities must be finite and non-negative")
            total = math.fsum(p.tolist())
            if abs(total - 1.0) > NORM_TOL:
                raise NormalizationError(f"probabilities sum to {total!r}, expected 1")
            uniq, inv = _group_rows(idx)
            if uniq.shape[0] != idx.shape[0]:
                p = np.bincount(inv, weights=p, minlength=uniq.shape[0])
                idx = uniq
            keep = p > 0
            idx, p = idx[keep], p[keep]
        idx.flags.writeable = False
        p.flags.writeable = False
        self.alphabet_sizes = sizes
        self.indices = idx
        self.probs = p

    @classmethod
    def from_atoms(cls, alphabet_sizes: Sequence[int], atoms: Mapping[tuple, float]) -> "ClassicalState":
        keys = list(atoms)
        return cls(alphabet_sizes, keys, [atoms[k] for k in keys])

    @classmethod
    def point_mass(cls, n: int) -> "ClassicalState":
        return cls((1,) * n, [(0,) * n], [1.0])

    @property
    def n(self) -> int:
        return len(self.alphabet_sizes)

    @property
    def support_size(self) -> int:
        return int(self.probs.shape[0])

    def atoms(self) -> dict[tuple[int, ...], float]:
        return {tuple(int(x) for x in row): float(p) for row, p in zip(self.indices, self.probs)}

    def spectrum(self) -> WeightedSpectrum:
        return WeightedSpectrum.from_values(self.probs)

    def __repr__(self) -> str:
        return f"ClassicalState(n={self.n}, alphabet_sizes={self.alphabet_sizes}, support={self.support_size})"


class SparsePureState:
    """Pure state given by its nonzero amplitudes on product-basis label tuples."""

    __slots__ = ("dims", "indices", "amplitudes")

    def __init__(self, dims: Sequence[int], indices, amplitudes, *, check: bool = True):
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise DimensionError("a pure state needs at least one party")
        idx = _as_index_array(indices, len(dims))
        a = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if a.shape[0] != idx.shape[0]:
            raise DimensionError("indices and amplitudes differ in length")
        if check:
            _check_ranges(idx, dims, "dimension")
            uniq, inv = _group_rows(idx)
            if uniq.shape[0] != idx.shape[0]:
                re = np.bincount(inv, weights=a.real, minlength=uniq.shape[0])
                im = np.bincount(inv, weights=a.imag, minlength=uniq.shape[0])
                a, idx = re + 1j * im, uniq
            keep = a != 0
            idx, a = idx[keep], a[keep]
            norm = math.fsum((np.abs(a) ** 2).tolist())
            if abs(norm - 1.0) > NORM_TOL:
                raise NormalizationError(f"squared amplitudes sum to {norm!r}, expected 1")
        idx.flags.writeable = False
        a.flags.writeable = False
        self.dims = dims
        self.indices = idx
        self.amplitudes = a

    @classmethod
    def from_amplitudes(cls, dims: Sequence[int], amplitudes: Mapping[tuple, complex]) -> "SparsePureState":
        keys = list(amplitudes)
        return cls(dims, keys, [amplitudes[k] for k in keys])

    @classmethod
    def from_vector(cls, dims: Sequence[int], vector) -> "SparsePureState":
        vec = np.asarray(vector, dtype=np.complex128).reshape(-1)
        if vec.size != math.prod(dims):
            raise DimensionError("vector length does not match the product of dims")
        nz = np.flatnonzero(vec)
        idx = np.stack(np.unravel_index(nz, tuple(dims)), axis=1) if nz.size else np.zeros((0, len(dims)))
        return cls(dims, idx, vec[nz])

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def num_amplitudes(self) -> int:
        return int(self.amplitudes.shape[0])

    def to_vector(self) -> np.ndarray:
        total = math.prod(self.dims)
        if total > MAX_DENSE_DIM:
            raise BudgetExceededError(f"total dimension {total} exceeds dense cap {MAX_DENSE_DIM}")
        vec = np.zeros(total, dtype=np.complex128)
        if self.num_amplitudes:
            flat = np.ravel_multi_index(tuple(self.indices.T), self.dims)
            vec[flat] = self.amplitudes
        return vec

    def to_density(self) -> "DensityMatrix":
        vec = self.to_vector()
        return DensityMatrix(self.dims, np.outer(vec, vec.conj()))

    def __repr__(self) -> str:
        return f"SparsePureState(dims={self.dims}, amplitudes={self.num_amplitudes})"


class DensityMatrix:
    """Dense Hermitian PSD unit-trace matrix on ``prod(dims)`` dimensions."""

    __slots__ = ("dims", "matrix")

    def __init__(self, dims: Sequence[int], matrix, *, check: bool = True):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionError("dims must be a nonempty list of positive integers")
        total = math.prod(dims)
        if total > MAX_DENSE_DIM:
            raise BudgetExceededError(f"total dimension {total} exceeds dense cap {MAX_DENSE_DIM}")
        mat = np.array(matrix, dtype=np.complex128)
        if mat.shape != (total, total):
            raise DimensionError(f"matrix shape {mat.shape} does not match dims {dims}")
        if check:
            if np.max(np.abs(mat - mat.conj().T), initial=0.0) > HERMITIAN_TOL:
                raise RenyiConeError("density matrix is not Hermitian")
            tr = np.trace(mat).real
            if abs(tr - 1.0) > NORM_TOL:
                raise NormalizationError(f"density matrix trace {tr!r}, expected 1")
        mat.flags.writeable = False
        self.dims = dims
        self.matrix = mat

    @classmethod
    def from_classical(cls, state: ClassicalState) -> "DensityMatrix":
        total = math.prod(state.alphabet_sizes)
        if total > MAX_DENSE_DIM:
            raise BudgetExceededError(f"total dimension {total} exceeds dense cap {MAX_DENSE_DIM}")
        diag = np.zeros(total)
        flat = np.ravel_multi_index(tuple(state.indices.T), state.alphabet_sizes)
        np.add.at(diag, flat, state.probs)
        return cls(state.alphabet_sizes, np.diag(diag))

    @property
    def n(self) -> int:
        return len(self.dims)

    def __repr__(self) -> str:
        return f"DensityMatrix(dims={self.dims})"


def marginalize_classical(state: ClassicalState, subset: SubsetLike) -> ClassicalState:
    """Marginal pmf on the parties in ``subset`` (summing over the rest)."""
    mask = as_mask(subset, state.n)
    cols = list(mask.indices)
    sizes = [state.alphabet_sizes[c] for c in cols]
    if mask.is_full():
        return state
    uniq, inv = _group_rows(state.indices[:, cols])
    probs = np.bincount(inv, weights=state.probs, minlength=uniq.shape[0])
    return ClassicalState(sizes, uniq, probs, check=False)


def partial_trace_dense(rho: DensityMatrix, subset: SubsetLike) -> DensityMatrix:
    """Reduced state ``tr_{I^c} rho`` on the parties of ``subset``."""
    mask = as_mask(subset, rho.n)
    if mask.is_full():
        return rho
    n = rho.n
    keep = mask.indices
    tensor = rho.matrix.reshape(rho.dims + rho.dims)
    # einsum labels: row axes 0..n-1, column axes n..2n-1; traced parties share a label
    row = list(range(n))
    col = [i if i not in keep else n + i for i in range(n)]
    out = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(tensor, row + col, out)
    d = math.prod(rho.dims[i] for i in keep)
    return DensityMatrix(tuple(rho.dims[i] for i in keep), reduced.reshape(d, d))


def spectrum_dense(rho: DensityMatrix) -> WeightedSpectrum:
    """Merged eigenvalue spectrum; values under ``ZERO_CUTOFF`` are dropped."""
    mat = rho.matrix
    if np.max(np.abs(mat - mat.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise RenyiConeError("spectrum_dense requires a Hermitian matrix")
    evals = np.linalg.eigvalsh(mat)
    return WeightedSpectrum.from_values(evals, cutoff=ZERO_CUTOFF)


def reduced_spectrum_pure(psi: SparsePureState, subset: SubsetLike) -> WeightedSpectrum:
    """Spectrum of the reduced state of ``psi`` on ``subset``.

    The coefficient matrix (rows: labels on the subset, columns: labels on
    the complement) is split into connected blocks; each block contributes
    its squared singular values. Cost depends only on the nonzero amplitudes.
    """
    mask = as_mask(subset, psi.n)
    norm = math.fsum((np.abs(psi.amplitudes) ** 2).tolist())
    if abs(norm - 1.0) > NORM_TOL:
        raise NormalizationError(f"state has squared norm {norm!r}")
    if mask.is_full():
        return WeightedSpectrum.pure()
    comp = mask.complement()
    _, r = _group_rows(psi.indices[:, list(mask.indices)])
    _, c = _group_rows(psi.indices[:, list(comp.indices)])
    nr, nc = int(r.max()) + 1, int(c.max()) + 1
    amps = psi.amplitudes
    graph = coo_matrix((np.ones(r.size), (r, nr + c)), shape=(nr + nc, nr + nc))
    _, labels = connected_components(graph, directed=False)
    block = labels[r]
    order = np.argsort(block, kind="stable")
    block_sorted = block[order]
    starts = np.flatnonzero(np.r_[True, block_sorted[1:] != block_sorted[:-1]])
    ends = np.r_[starts[1:], block_sorted.size]

    weights = np.abs(amps) ** 2
    eigs = []
    # blocks with a single row or column are rank one
    rows_per_block = np.zeros(labels.max() + 1, dtype=np.int64)
    cols_per_block = np.zeros(labels.max() + 1, dtype=np.int64)
    np.add.at(rows_per_block, labels[:nr], 1)
    np.add.at(cols_per_block, labels[nr:], 1)
    block_mass = np.bincount(block, weights=weights, minlength=labels.max() + 1)
    used = np.unique(block)
    rank_one = used[(rows_per_block[used] == 1) | (cols_per_block[used] == 1)]
    eigs.append(block_mass[rank_one])
    is_rank_one = np.zeros(labels.max() + 1, dtype=bool)
    is_rank_one[rank_one] = True
    for s, e in zip(starts, ends):
        b = block_sorted[s]
        if is_rank_one[b]:
            continue
        sel = order[s:e]
        rr, rinv = np.unique(r[sel], return_inverse=True)
        cc, cinv = np.unique(c[sel], return_inverse=True)
        mat = np.zeros((rr.size, cc.size), dtype=np.complex128)
        mat[rinv, cinv] = amps[sel]
        eigs.append(np.linalg.svd(mat, compute_uv=False) ** 2)
    return WeightedSpectrum.from_values(np.concatenate(eigs), cutoff=ZERO_CUTOFF)
