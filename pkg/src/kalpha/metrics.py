"""Distance functions d²(x, y) for the supported levels of measurement.

All distances here obey the same missing-value contract: if either score is
missing (``NaN`` or ``None``) the distance is 0. Built-in distances also
return 0 whenever ``x == y``, which resolves the 0/0 cases of the ratio and
bipolar formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import dsl
from .errors import DomainError

KINDS = ("nominal", "ordinal", "interval", "ratio", "bipolar", "circular", "custom")
LEVELS = KINDS[:-1]


@dataclass(frozen=True)
class DistanceSpec:
    kind: str
    bipolar_min: Optional[float] = None
    bipolar_max: Optional[float] = None
    circular_intervals: Optional[int] = None
    custom_expr: Optional[dsl.Expr] = None
    custom_source: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distance kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.kind == "bipolar":
            if self.bipolar_min is None or self.bipolar_max is None:
                raise ValueError("bipolar distance needs bipolar_min and bipolar_max")
            if not self.bipolar_min < self.bipolar_max:
                raise ValueError("bipolar_min must be smaller than bipolar_max")
        if self.kind == "circular":
            if self.circular_intervals is None:
                raise ValueError("circular distance needs circular_intervals")
            if int(self.circular_intervals) != self.circular_intervals or self.circular_intervals < 2:
                raise ValueError("circular_intervals must be an integer >= 2")
        if self.kind == "custom" and self.custom_expr is None:
            raise ValueError("custom distance needs an expression")

    @classmethod
    def custom(cls, source: str) -> "DistanceSpec":
        return cls("custom", custom_expr=dsl.parse(source), custom_source=source)

    @classmethod
    def bipolar(cls, lo: float, hi: float) -> "DistanceSpec":
        return cls("bipolar", bipolar_min=float(lo), bipolar_max=float(hi))

    @classmethod
    def circular(cls, intervals: int) -> "DistanceSpec":
        return cls("circular", circular_intervals=intervals)

    def describe(self) -> str:
        if self.kind == "bipolar":
            return f"bipolar(min={self.bipolar_min:g}, max={self.bipolar_max:g})"
        if self.kind == "circular":
            return f"circular(intervals={self.circular_intervals})"
        if self.kind == "custom":
            return self.custom_source or dsl.to_source(self.custom_expr)
        return self.kind


def as_spec(d: DistanceSpec | str) -> DistanceSpec:
    """Accept a level name as shorthand for a parameter-free spec."""
    return d if isinstance(d, DistanceSpec) else DistanceSpec(d)


def check_domain(spec: DistanceSpec, scores: np.ndarray) -> None:
    """Raise ``DomainError`` if any present score is invalid for ``spec``."""
    v = np.asarray(scores, dtype=float)
    v = v[~np.isnan(v)]
    if spec.kind == "ratio" and (v < 0).any():
        raise DomainError(f"ratio distance needs non-negative scores, got {v[v < 0][0]:g}")
    if spec.kind == "bipolar":
        bad = (v < spec.bipolar_min) | (v > spec.bipolar_max)
        if bad.any():
            raise DomainError(
                f"bipolar score {v[bad][0]:g} outside [{spec.bipolar_min:g}, {spec.bipolar_max:g}]"
            )


def _raw(spec: DistanceSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    kind = spec.kind
    if kind in ("interval", "ordinal"):
        return (x - y) ** 2
    if kind == "nominal":
        return (x != y).astype(float)
    if kind == "ratio":
        return ((x - y) / (x + y)) ** 2
    if kind == "bipolar":
        lo, hi = spec.bipolar_min, spec.bipolar_max
        total = x + y  # computed once so the result is exactly symmetric
        return (x - y) ** 2 / ((total - 2 * lo) * (2 * hi - total))
    if kind == "circular":
        return np.sin(np.pi * (x - y) / spec.circular_intervals) ** 2
    raise AssertionError(kind)


def pairwise(spec: DistanceSpec, x, y, check: bool = True) -> np.ndarray:
    """Vectorised d²(x, y) over broadcastable arrays, ``NaN`` meaning missing."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if check:
        check_domain(spec, x)
        check_domain(spec, y)
    valid = ~(np.isnan(x) | np.isnan(y))
    out = np.zeros(x.shape)
    if spec.kind == "custom":
        out[valid] = dsl.evaluate_array(spec.custom_expr, x[valid], y[valid])
        return out
    live = valid & (x != y)
    with np.errstate(divide="ignore", invalid="ignore"):
        out[live] = _raw(spec, x[live], y[live])
    return out


def dense(spec: DistanceSpec, x, y) -> np.ndarray:
    """d²(x, y) over broadcastable arrays known to hold no missing values."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if spec.kind == "custom":
        return np.array(dsl.evaluate_array(spec.custom_expr, x, y))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = _raw(spec, x, y)
    out[x == y] = 0.0
    return out


def evaluate_distance(spec: DistanceSpec | str, x: float | None, y: float | None) -> float:
    """d²(x, y) for one pair of scores; ``None`` or ``NaN`` counts as missing."""
    spec = as_spec(spec)
    x = np.nan if x is None else float(x)
    y = np.nan if y is None else float(y)
    return float(pairwise(spec, x, y))
