"""Spectra as multisets of (value, multiplicity) atoms."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ..errors import NormalizationError, RenyiConeError

MERGE_RTOL = 1e-9
ZERO_CUTOFF = 1e-12
NORM_TOL = 1e-9


def _merge(values: np.ndarray, mults: np.ndarray, rtol: float) -> tuple[np.ndarray, np.ndarray]:
    # single-linkage grouping of sorted values by relative gap
    order = np.argsort(values, kind="stable")[::-1]
    v = values[order]
    m = mults[order]
    if v.size == 0:
        return v, m
    gaps = v[:-1] - v[1:]
    breaks = gaps > rtol * v[:-1]
    group = np.concatenate(([0], np.cumsum(breaks)))
    if not breaks.all():
        counts = np.bincount(group, weights=m.astype(np.float64))
        v = np.bincount(group, weights=v * m) / counts
        merged = np.zeros(group[-1] + 1, dtype=np.float64)
        np.add.at(merged, group, m)
        m = merged
    return v, m


class WeightedSpectrum:
    """Eigenvalues or probabilities, stored in descending order of value.

    Multiplicities are kept as float64 so that closed-form spectra with
    astronomically large multiplicities (``M**k`` for big ``M``) stay usable.

    Values are pairwise distinct after merging with relative tolerance
    ``MERGE_RTOL``; ``sum(value * multiplicity)`` is 1 within ``NORM_TOL``.
    """

    __slots__ = ("_values", "_mults")

    def __init__(self, atoms: Iterable[tuple[float, int]], *, rtol: float = MERGE_RTOL):
        pairs = list(atoms)
        values = np.array([float(v) for v, _ in pairs], dtype=np.float64)
        mults = np.array([float(k) for _, k in pairs], dtype=np.float64)
        self._init(values, mults, rtol)

    def _init(self, values, mults, rtol):
        if values.size and (np.any(~np.isfinite(values)) or np.any(values < 0)):
            raise RenyiConeError("spectrum values must be finite and non-negative")
        if np.any(mults < 1) or np.any(mults != np.floor(mults)):
            raise RenyiConeError("multiplicities must be positive integers")
        keep = values > 0
        values, mults = _merge(values[keep], mults[keep], rtol)
        if values.size == 0:
            raise RenyiConeError("empty spectrum")
        total = math.fsum((values * mults).tolist())
        if abs(total - 1.0) > NORM_TOL:
            raise NormalizationError(f"spectrum sums to {total!r}, expected 1")
        values.flags.writeable = False
        mults.flags.writeable = False
        self._values = values
        self._mults = mults

    @classmethod
    def from_values(
        cls, values: Sequence[float] | np.ndarray, *, rtol: float = MERGE_RTOL, cutoff: float = 0.0
    ) -> "WeightedSpectrum":
        """Build from a flat list of eigenvalues or probabilities.

        Values below ``cutoff`` are dropped; negative values must lie above
        ``-NORM_TOL`` and are clamped to zero.
        """
        v = np.asarray(values, dtype=np.float64).ravel()
        if np.any(v < -NORM_TOL):
            raise RenyiConeError(f"negative value {v.min()!r} in spectrum")
        v = np.where(v < cutoff, 0.0, v)
        v = np.clip(v, 0.0, None)
        self = cls.__new__(cls)
        self._init(v, np.ones(v.shape, dtype=np.float64), rtol)
        return self

    @classmethod
    def pure(cls) -> "WeightedSpectrum":
        return cls([(1.0, 1)])

    @classmethod
    def uniform(cls, size: int) -> "WeightedSpectrum":
        return cls([(1.0 / size, size)])

    @classmethod
    def direct_sum(cls, parts: Iterable[tuple[float, "WeightedSpectrum"]]) -> "WeightedSpectrum":
        """Spectrum of ``sum_k w_k * spec_k`` on orthogonal supports."""
        vals, mults = [], []
        for w, spec in parts:
            if w <= 0:
                continue
            vals.append(w * spec._values)
            mults.append(spec._mults)
        self = cls.__new__(cls)
        self._init(np.concatenate(vals), np.concatenate(mults), MERGE_RTOL)
        return self

    def tensor(self, other: "WeightedSpectrum") -> "WeightedSpectrum":
        self_t = type(self).__new__(type(self))
        v = np.multiply.outer(self._values, other._values).ravel()
        m = np.multiply.outer(self._mults, other._mults).ravel()
        self_t._init(v, m, MERGE_RTOL)
        return self_t

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def multiplicities(self) -> np.ndarray:
        return self._mults

    @property
    def atoms(self) -> list[tuple[float, int]]:
        return [(float(v), int(m)) for v, m in zip(self._values, self._mults)]

    @property
    def max_value(self) -> float:
        return float(self._values[0])

    @property
    def max_multiplicity(self) -> int:
        """Multiplicity of the largest value."""
        return int(self._mults[0])

    @property
    def rank(self) -> int:
        return int(math.fsum(self._mults.tolist()))

    def expanded(self) -> np.ndarray:
        return np.repeat(self._values, self._mults.astype(np.int64))

    def is_pure(self, tol: float = NORM_TOL) -> bool:
        return self._values[0] >= 1.0 - tol

    def allclose(self, other: "WeightedSpectrum", atol: float) -> bool:
        if len(self) != len(other) or np.any(self._mults != other._mults):
            return False
        return bool(np.all(np.abs(self._values - other._values) <= atol))

    def __len__(self) -> int:
        return int(self._values.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedSpectrum):
            return NotImplemented
        return self.allclose(other, 0.0)

    def __hash__(self):
        return hash((self._values.tobytes(), self._mults.tobytes()))

    def __repr__(self) -> str:
        shown = ", ".join(f"({v:.6g}, {m})" for v, m in self.atoms[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"WeightedSpectrum([{shown}{more}])"
