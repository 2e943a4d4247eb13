"""Data from the one-way mixed-effects ANOVA model, and bootstrap coverage studies.

Scores are Y_ij = mu + tau_i + eps_ij with tau_i ~ N(0, sigma_tau²) and
eps_ij ~ N(0, sigma_eps²), all independent. Under this model alpha equals
the intraclass correlation sigma_tau² / (sigma_tau² + sigma_eps²).
Missingness is MCAR: each cell is blanked independently with
probability ``missing_rate``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import rng as _rng
from .bootstrap import BootstrapConfig, resample_alpha
from .core import alpha_point
from .data import ReliabilityMatrix
from .errors import AlphaError


@dataclass(frozen=True)
class AnovaConfig:
    mu: float = 0.0
    sigma_tau: float = 1.0
    sigma_eps: float = 1.0
    n_units: int = 100
    n_coders: int = 4
    missing_rate: float = 0.0

    def __post_init__(self):
        if self.sigma_tau < 0:
            raise ValueError("sigma_tau must be non-negative")
        if not self.sigma_eps > 0:
            raise ValueError("sigma_eps must be positive")
        if self.n_units < 1:
            raise ValueError("n_units must be positive")
        if self.n_coders < 2:
            raise ValueError("n_coders must be at least 2")
        if not 0 <= self.missing_rate < 1:
            raise ValueError("missing_rate must lie in [0, 1)")

    @classmethod
    def for_alpha(cls, alpha: float, **kw) -> "AnovaConfig":
        """Unit-variance total with the requested intraclass correlation."""
        if not 0 <= alpha < 1:
            raise ValueError("alpha must lie in [0, 1)")
        return cls(sigma_tau=math.sqrt(alpha), sigma_eps=math.sqrt(1 - alpha), **kw)


def true_alpha(cfg: AnovaConfig) -> float:
    tau2 = cfg.sigma_tau ** 2
    return tau2 / (tau2 + cfg.sigma_eps ** 2)


def gen_anova(cfg: AnovaConfig, seed: int, index: int = 0) -> ReliabilityMatrix:
    """One simulated matrix; ``index`` selects an independent substream."""
    gen = _rng.substream(seed, index, _rng.SIMULATE)
    tau = cfg.sigma_tau * gen.standard_normal(cfg.n_units)
    eps = cfg.sigma_eps * gen.standard_normal((cfg.n_units, cfg.n_coders))
    y = cfg.mu + tau[:, None] + eps
    if cfg.missing_rate > 0:
        y[gen.random(y.shape) < cfg.missing_rate] = np.nan
    return ReliabilityMatrix(y)


@dataclass(frozen=True)
class RepRecord:
    rep: int
    alpha_hat: float
    ci_lower: float
    ci_upper: float
    covered: bool


@dataclass(frozen=True)
class CoverageReport:
    reps: int
    hits: int
    coverage: float
    mean_ci_width: float
    true_alpha: float
    records: tuple = field(default=(), repr=False)


def _one_rep(cfg: AnovaConfig, bcfg: BootstrapConfig, seed: int, rep: int) -> RepRecord:
    target = true_alpha(cfg)
    try:
        m = gen_anova(cfg, seed, rep)
        est = alpha_point(m, "interval")
        child = replace(bcfg, seed=_rng.derive_seed(bcfg.seed, rep, _rng.COVERAGE_SEEDS), workers=1)
        boot = resample_alpha(m, "interval", child)
    except AlphaError as exc:
        raise type(exc)(f"rep {rep}: {exc}") from exc
    return RepRecord(rep, est.alpha, boot.ci_lower, boot.ci_upper, boot.ci_lower <= target <= boot.ci_upper)


def _rep_batch(cfg, bcfg, seed, reps):
    return [_one_rep(cfg, bcfg, seed, r) for r in reps]


def run_coverage(cfg: AnovaConfig, reps: int, bcfg: BootstrapConfig, seed: int = 0) -> CoverageReport:
    """Fraction of reps whose bootstrap interval covers the true alpha.

    Reps run in ``bcfg.workers`` processes; each rep's bootstrap is serial
    and seeded from ``(bcfg.seed, rep)``, so the report does not depend on
    the worker count.
    """
    if reps < 1:
        raise ValueError("reps must be positive")
    if bcfg.workers == 1:
        records = _rep_batch(cfg, bcfg, seed, range(reps))
    else:
        batches = np.array_split(np.arange(reps), min(reps, bcfg.workers * 4))
        with ProcessPoolExecutor(max_workers=bcfg.workers) as pool:
            futures = [pool.submit(_rep_batch, cfg, bcfg, seed, b.tolist()) for b in batches]
            records = [rec for fut in futures for rec in fut.result()]
    hits = sum(r.covered for r in records)
    width = math.fsum(r.ci_upper - r.ci_lower for r in records) / reps
    return CoverageReport(reps, hits, hits / reps, width, true_alpha(cfg), tuple(records))
