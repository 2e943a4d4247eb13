"""Krippendorff's alpha: point estimates, bootstrap intervals, influence, simulation."""

from .bootstrap import BootstrapConfig, BootstrapResult, confint, quantile, resample_alpha
from .core import (
    AlphaEstimate,
    MrppInput,
    alpha_point,
    anova_alpha_oracle,
    expected_disagreement,
    interpret,
    mrpp_delta,
    observed_disagreement,
)
from .data import ReliabilityMatrix
from .errors import *  # noqa: F401,F403
from .influence import DfBetaReport, dfbeta_coders, dfbeta_units, influence
from .metrics import DistanceSpec, evaluate_distance
from .simulate import AnovaConfig, CoverageReport, gen_anova, run_coverage, true_alpha

__version__ = "0.1.0"
