"""Point estimation of Krippendorff's alpha.

Disagreements here are mean *ordered*-pair distances, i.e. twice the usual
textbook normalisation. The factor cancels in alpha = 1 - D_o / D_e.

Missing data:

* D_o uses only units with at least two present scores. Each such unit
  contributes (sum of d² over its ordered present pairs) / (m_i - 1), and
  the total is divided by N_o, the number of scores in those units.
* D_e pools every present score, including those of single-score units.

Sums are either exactly rounded (``math.fsum``) or taken in a canonical
order, so results do not depend on worker count or row/column permutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .data import ReliabilityMatrix
from .errors import (
    DegenerateData,
    GroupTooSmall,
    IncompleteData,
    InsufficientScores,
    NoPairableUnits,
)
from .metrics import DistanceSpec, as_spec, check_domain, dense, evaluate_distance, pairwise

# Rows of the pooled-score distance matrix processed per block in D_e.
_BLOCK = 512


@dataclass(frozen=True)
class AlphaEstimate:
    alpha: float
    d_observed: float
    d_expected: float
    n_scores_pooled: int
    n_scores_pairable: int
    retained_units: tuple
    dropped_units: tuple


@dataclass(frozen=True)
class UnitTerms:
    """Per-unit pieces of D_o, reused by the bootstrap.

    ``terms[i]`` is unit i's ordered-pair distance sum over (m_i - 1) and
    ``weights[i]`` is m_i, both zero for units with fewer than two scores.
    """

    terms: np.ndarray
    weights: np.ndarray

    @property
    def pairable(self) -> np.ndarray:
        return self.weights > 0


def unit_terms(m: ReliabilityMatrix, d: DistanceSpec | str) -> UnitTerms:
    d = as_spec(d)
    check_domain(d, m.values)
    counts = m.counts
    terms = np.zeros(m.n_units)
    weights = np.where(counts >= 2, counts, 0)
    for size in np.unique(counts[counts >= 2]):
        rows = np.flatnonzero(counts == size)
        block = m.values[rows]
        scores = block[~np.isnan(block)].reshape(len(rows), size)
        dist = pairwise(d, scores[:, :, None], scores[:, None, :], check=False)
        dist[:, np.arange(size), np.arange(size)] = 0.0
        for r, flat in zip(rows, dist.reshape(len(rows), -1).tolist()):
            terms[r] = math.fsum(flat) / (size - 1)
    return UnitTerms(terms, weights)


def combine_terms(terms: Sequence[float], weights: Sequence[int]) -> float:
    """D_o from per-unit terms; raises if no unit is pairable."""
    n_pairable = int(np.sum(weights))
    if n_pairable == 0:
        raise NoPairableUnits("no unit has two or more present scores")
    return math.fsum(terms) / n_pairable


def observed_disagreement(m: ReliabilityMatrix, d: DistanceSpec | str) -> float:
    ut = unit_terms(m, d)
    return combine_terms(ut.terms.tolist(), ut.weights)


def expected_disagreement(m: ReliabilityMatrix, d: DistanceSpec | str) -> float:
    d = as_spec(d)
    # Sorting gives a canonical order, so D_e is a function of the pooled
    # multiset alone, bit for bit.
    pool = np.sort(m.pooled())
    n = pool.size
    if n < 2:
        raise InsufficientScores(f"need at least two present scores, found {n}")
    check_domain(d, pool)
    row_sums = []
    for start in range(0, n, _BLOCK):
        stop = min(start + _BLOCK, n)
        dist = dense(d, pool[start:stop, None], pool[None, :])
        idx = np.arange(stop - start)
        dist[idx, idx + start] = 0.0
        row_sums.extend(dist.sum(axis=1).tolist())
    return math.fsum(row_sums) / (n * (n - 1))


def alpha_point(m: ReliabilityMatrix, d: DistanceSpec | str) -> AlphaEstimate:
    d = as_spec(d)
    d_e = expected_disagreement(m, d)
    ut = unit_terms(m, d)
    d_o = combine_terms(ut.terms.tolist(), ut.weights)
    if d_e == 0:
        raise DegenerateData("expected disagreement D_e = 0 (no variation among scores); alpha is undefined")
    return AlphaEstimate(
        alpha=1.0 - d_o / d_e,
        d_observed=d_o,
        d_expected=d_e,
        n_scores_pooled=int(m.present.sum()),
        n_scores_pairable=int(ut.weights.sum()),
        retained_units=tuple(np.flatnonzero(ut.pairable).tolist()),
        dropped_units=tuple(np.flatnonzero(~ut.pairable).tolist()),
    )


def anova_alpha_oracle(m: ReliabilityMatrix) -> float:
    """Intraclass-correlation estimator from the one-way ANOVA decomposition.

    Works from unit and grand means rather than pairwise distances, which
    makes it an independent check on ``alpha_point`` with interval distance.
    """
    if not m.is_complete:
        raise IncompleteData("ANOVA estimator requires a complete matrix")
    y = m.values
    n_u, n_c = y.shape
    unit_means = np.array([math.fsum(row) / n_c for row in y.tolist()])
    grand = math.fsum(y.ravel().tolist()) / y.size
    within = math.fsum(((y - unit_means[:, None]) ** 2).ravel().tolist())
    total = math.fsum(((y - grand) ** 2).ravel().tolist())
    if total == 0:
        raise DegenerateData("all scores identical; alpha is undefined")
    return 1.0 - (within / (n_u * (n_c - 1))) / (total / (n_u * n_c - 1))


@dataclass(frozen=True)
class MrppInput:
    groups: tuple
    weights: tuple
    rho: Callable[[object, object], float]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(tuple(g) for g in self.groups))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.groups) != len(self.weights):
            raise ValueError("one weight per group required")
        for i, g in enumerate(self.groups):
            if len(g) < 2:
                raise GroupTooSmall(f"group {i} has {len(g)} member(s); need at least 2")
        if any(w <= 0 for w in self.weights):
            raise ValueError("group weights must be positive")
        if abs(math.fsum(self.weights) - 1.0) > 1e-12:
            raise ValueError("group weights must sum to 1")


def mrpp_delta(inp: MrppInput) -> float:
    """Weighted mean of within-group average distances over distinct pairs."""
    parts = []
    for weight, group in zip(inp.weights, inp.groups):
        n = len(group)
        total = math.fsum(inp.rho(group[j], group[k]) for j in range(n) for k in range(j + 1, n))
        parts.append(weight * total / (n * (n - 1) / 2))
    return math.fsum(parts)


def mrpp_input_for(m: ReliabilityMatrix, d: DistanceSpec | str) -> MrppInput:
    """Groups = present scores of pairable units, weights = m_i / N_o."""
    d = as_spec(d)
    groups = [m.unit_scores(i).tolist() for i in range(m.n_units) if m.counts[i] >= 2]
    n_o = sum(len(g) for g in groups)
    return MrppInput(groups, [len(g) / n_o for g in groups], lambda a, b: evaluate_distance(d, a, b))


INTERPRETATION = (
    (0.2, "Slight"),
    (0.4, "Fair"),
    (0.6, "Moderate"),
    (0.8, "Substantial"),
)


def interpret(alpha: float) -> str:
    """Verbal agreement label; each band is closed on the right."""
    if alpha > 1:
        raise ValueError(f"alpha cannot exceed 1, got {alpha}")
    for upper, label in INTERPRETATION:
        if alpha <= upper:
            return label
    return "Near-Perfect"
