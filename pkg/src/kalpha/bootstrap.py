"""Unit-resampling bootstrap for alpha with quantile-method intervals.

Each replicate resamples the n_u rows of the data with replacement,
recomputes D_o under the usual missing-data rules, and divides by the D_e of
the *original* data (D_e does not depend on how scores are grouped into
units, so it is held fixed).

Replicate ``i`` draws from its own counter-based substream keyed by
``(seed, i)``, so the replicate vector is bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import rng as _rng
from .core import alpha_point, combine_terms, unit_terms
from .data import ReliabilityMatrix
from .errors import EmptySample, ResampleDegenerate
from .metrics import DistanceSpec, as_spec

ProgressFn = Callable[[int, int], None]


@dataclass(frozen=True)
class BootstrapConfig:
    bootit: int = 1000
    conf_level: float = 0.95
    seed: int = 0
    workers: int = 1
    max_redraws: int = 100

    def __post_init__(self):
        if self.bootit < 1:
            raise ValueError("bootit must be at least 1")
        if not 0 < self.conf_level < 1:
            raise ValueError("conf_level must lie in (0, 1)")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.max_redraws < 1:
            raise ValueError("max_redraws must be at least 1")


@dataclass(frozen=True, eq=False)
class BootstrapResult:
    replicates: np.ndarray
    ci_lower: float
    ci_upper: float
    d_expected_fixed: float
    config: BootstrapConfig = field(default_factory=BootstrapConfig)

    def confint(self, level: float = 0.95) -> tuple[float, float]:
        return confint(self, level)


def quantile(sample: Sequence[float], p: float) -> float:
    """Sample quantile by linear interpolation between order statistics.

    Uses position h = (n - 1) p + 1 in the sorted sample (1-based), the
    usual default for continuous data.
    """
    xs = sorted(float(v) for v in sample)
    if not xs:
        raise EmptySample("cannot take a quantile of an empty sample")
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    h = (len(xs) - 1) * p
    lo = math.floor(h)
    if lo + 1 >= len(xs):
        return xs[-1]
    return xs[lo] + (h - lo) * (xs[lo + 1] - xs[lo])


def confint(result: BootstrapResult | Sequence[float], level: float = 0.95) -> tuple[float, float]:
    if not 0 < level < 1:
        raise ValueError("level must lie in (0, 1)")
    reps = result.replicates if isinstance(result, BootstrapResult) else result
    tail = (1 - level) / 2
    return quantile(reps, tail), quantile(reps, 1 - tail)


def draw_units(gen: np.random.Generator, pairable: np.ndarray, max_redraws: int) -> np.ndarray:
    """Row indices for one replicate, redrawing while no row is pairable."""
    n = pairable.size
    for _ in range(max_redraws + 1):
        idx = gen.integers(0, n, size=n)
        if pairable[idx].any():
            return idx
    raise ResampleDegenerate(f"resample had no pairable unit after {max_redraws} redraws")


def replicate_indices(pairable: np.ndarray, seed: int, index: int, max_redraws: int = 100) -> np.ndarray:
    return draw_units(_rng.substream(seed, index, _rng.BOOTSTRAP), np.asarray(pairable), max_redraws)


def _run_chunk(terms, weights, d_e, seed, start, stop, max_redraws):
    pairable = weights > 0
    out = np.empty(stop - start)
    for k, i in enumerate(range(start, stop)):
        try:
            idx = replicate_indices(pairable, seed, i, max_redraws)
        except ResampleDegenerate as exc:
            raise ResampleDegenerate(f"replicate {i}: {exc}") from None
        out[k] = 1.0 - combine_terms(terms[idx].tolist(), weights[idx]) / d_e
    return out


def _chunks(n: int, workers: int) -> list[tuple[int, int]]:
    size = max(1, math.ceil(n / (workers * 8)))
    return [(s, min(s + size, n)) for s in range(0, n, size)]


def resample_alpha(
    m: ReliabilityMatrix,
    d: DistanceSpec | str,
    cfg: BootstrapConfig = BootstrapConfig(),
    progress: Optional[ProgressFn] = None,
) -> BootstrapResult:
    """Bootstrap sample of alpha plus quantile-method limits at ``cfg.conf_level``.

    ``progress(done, total)`` is called once per finished replicate.
    """
    d = as_spec(d)
    d_e = alpha_point(m, d).d_expected
    ut = unit_terms(m, d)
    args = (ut.terms, ut.weights, d_e, cfg.seed)
    reps = np.empty(cfg.bootit)
    done = 0

    def _tick(count):
        nonlocal done
        for _ in range(count):
            done += 1
            if progress is not None:
                progress(done, cfg.bootit)

    if cfg.workers == 1:
        for start, stop in _chunks(cfg.bootit, 1):
            reps[start:stop] = _run_chunk(*args, start, stop, cfg.max_redraws)
            _tick(stop - start)
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [
                (start, stop, pool.submit(_run_chunk, *args, start, stop, cfg.max_redraws))
                for start, stop in _chunks(cfg.bootit, cfg.workers)
            ]
            for start, stop, fut in futures:
                reps[start:stop] = fut.result()
                _tick(stop - start)

    reps.setflags(write=False)
    lower, upper = confint(reps, cfg.conf_level)
    return BootstrapResult(reps, lower, upper, d_e, cfg)
