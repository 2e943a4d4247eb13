import numpy as np
import pytest

from kalpha.bootstrap import BootstrapConfig
from kalpha.core import alpha_point, anova_alpha_oracle
from kalpha.simulate import AnovaConfig, gen_anova, run_coverage, true_alpha


@pytest.mark.parametrize("tau,eps,expected", [(1, 1, 0.5), (0, 1, 0.0), (3, 1, 0.9)])
def test_true_alpha(tau, eps, expected):
    assert true_alpha(AnovaConfig(sigma_tau=tau, sigma_eps=eps)) == pytest.approx(expected)


@pytest.mark.parametrize(
    "kwargs",
    [dict(sigma_eps=0), dict(sigma_tau=-1), dict(n_coders=1), dict(n_units=0), dict(missing_rate=1.0)],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        AnovaConfig(**kwargs)


def test_for_alpha():
    assert true_alpha(AnovaConfig.for_alpha(0.3)) == pytest.approx(0.3)


def test_generation_is_deterministic():
    cfg = AnovaConfig(n_units=20, n_coders=3, missing_rate=0.2)
    a, b = gen_anova(cfg, 5), gen_anova(cfg, 5)
    assert np.array_equal(a.values, b.values, equal_nan=True)
    assert not np.array_equal(a.values, gen_anova(cfg, 6).values, equal_nan=True)


def test_complete_when_no_missingness():
    m = gen_anova(AnovaConfig(n_units=30, n_coders=4), 1)
    assert m.is_complete
    assert alpha_point(m, "interval").alpha == pytest.approx(anova_alpha_oracle(m), rel=1e-12)


def test_missing_rate_roughly_respected():
    m = gen_anova(AnovaConfig(n_units=500, n_coders=4, missing_rate=0.3), 2)
    assert np.isnan(m.values).mean() == pytest.approx(0.3, abs=0.03)


@pytest.mark.slow
@pytest.mark.parametrize("tau,target", [(1.0, 0.5), (0.0, 0.0)])
def test_estimator_centred_on_truth(tau, target):
    cfg = AnovaConfig(sigma_tau=tau, sigma_eps=1.0, n_units=100, n_coders=4)
    est = [alpha_point(gen_anova(cfg, 17, i), "interval").alpha for i in range(1000)]
    assert np.mean(est) == pytest.approx(target, abs=0.05)


@pytest.mark.slow
def test_spread_shrinks_with_more_units():
    sds = []
    for n in (50, 400):
        cfg = AnovaConfig.for_alpha(0.5, n_units=n, n_coders=4)
        sds.append(np.std([alpha_point(gen_anova(cfg, 3, i), "interval").alpha for i in range(1000)]))
    assert sds[1] < sds[0]


def test_single_rep():
    rep = run_coverage(AnovaConfig(n_units=30), 1, BootstrapConfig(bootit=50, seed=1))
    assert rep.reps == 1 and rep.hits in (0, 1)
    assert rep.coverage in (0.0, 1.0)
    assert len(rep.records) == 1


def test_coverage_reproducible_across_workers():
    cfg = AnovaConfig(n_units=25, n_coders=3, missing_rate=0.1)
    a = run_coverage(cfg, 6, BootstrapConfig(bootit=40, seed=2), seed=7)
    b = run_coverage(cfg, 6, BootstrapConfig(bootit=40, seed=2, workers=2), seed=7)
    assert a == b
    assert a.records == b.records


def test_rep_errors_name_the_rep():
    cfg = AnovaConfig(n_units=1, n_coders=2, missing_rate=0.9)
    with pytest.raises(Exception, match=r"rep \d+"):
        run_coverage(cfg, 50, BootstrapConfig(bootit=5), seed=0)
