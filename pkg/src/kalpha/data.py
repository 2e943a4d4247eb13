"""Reliability matrix container."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidMatrix


@dataclass(frozen=True, eq=False)
class ReliabilityMatrix:
    """Units in rows, coders in columns; ``NaN`` marks a missing score.

    The wrapped array is copied and made read-only on construction.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float, copy=True)
        if arr.ndim != 2:
            raise InvalidMatrix(f"expected a 2-d array, got {arr.ndim}-d")
        if arr.shape[0] < 1:
            raise InvalidMatrix("need at least one unit")
        if arr.shape[1] < 2:
            raise InvalidMatrix(f"need at least two coders, got {arr.shape[1]}")
        if np.isinf(arr).any():
            raise InvalidMatrix("scores must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float | None]]) -> "ReliabilityMatrix":
        """Build from nested sequences, treating ``None`` as missing."""
        rows = [[np.nan if v is None else float(v) for v in row] for row in rows]
        if not rows:
            raise InvalidMatrix("need at least one unit")
        if len({len(r) for r in rows}) != 1:
            raise InvalidMatrix("rows have unequal length")
        return cls(np.array(rows, dtype=float).reshape(len(rows), -1))

    @property
    def n_units(self) -> int:
        return self.values.shape[0]

    @property
    def n_coders(self) -> int:
        return self.values.shape[1]

    @property
    def present(self) -> np.ndarray:
        return ~np.isnan(self.values)

    @property
    def counts(self) -> np.ndarray:
        """Number of present scores per unit."""
        return self.present.sum(axis=1)

    @property
    def is_complete(self) -> bool:
        return bool(self.present.all())

    def pooled(self) -> np.ndarray:
        """All present scores in row-major order."""
        v = self.values.ravel()
        return v[~np.isnan(v)]

    def unit_scores(self, i: int) -> np.ndarray:
        row = self.values[i]
        return row[~np.isnan(row)]

    def take_units(self, index: Sequence[int] | np.ndarray) -> "ReliabilityMatrix":
        return ReliabilityMatrix(self.values[np.asarray(index, dtype=int)])

    def drop_unit(self, i: int) -> "ReliabilityMatrix":
        if not 0 <= i < self.n_units:
            raise IndexError(f"unit {i} out of range")
        return ReliabilityMatrix(np.delete(self.values, i, axis=0))

    def drop_coder(self, j: int) -> "ReliabilityMatrix":
        if not 0 <= j < self.n_coders:
            raise IndexError(f"coder {j} out of range")
        return ReliabilityMatrix(np.delete(self.values, j, axis=1))

    def map_scores(self, fn) -> "ReliabilityMatrix":
        """Apply a vectorised transform to present scores (missing stays missing)."""
        out = np.array(self.values)
        mask = ~np.isnan(out)
        out[mask] = fn(out[mask])
        return ReliabilityMatrix(out)

    def __repr__(self) -> str:
        return f"ReliabilityMatrix({self.n_units} units x {self.n_coders} coders)"
