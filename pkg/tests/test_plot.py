import xml.etree.ElementTree as ET

import numpy as np
import pytest

from kalpha.bootstrap import BootstrapConfig, resample_alpha
from kalpha.core import alpha_point
from kalpha.plot import emit_histogram, histogram_bins, sturges_bins

NS = {"s": "http://www.w3.org/2000/svg"}


def parse(path):
    root = ET.parse(path).getroot()
    bars = root.findall("s:rect[@class='bar']", NS)
    alpha = root.findall("s:line[@class='alpha-line']", NS)
    ci = root.findall("s:line[@class='ci-line']", NS)
    return root, bars, alpha, ci


@pytest.mark.parametrize("n,k", [(1, 1), (2, 2), (1000, 11), (10000, 15)])
def test_sturges(n, k):
    assert sturges_bins(n) == k


def test_constant_sample_single_bin(tmp_path):
    path = emit_histogram(np.ones(200), 1.0, (1.0, 1.0), tmp_path / "c.svg")
    _, bars, alpha, ci = parse(path)
    assert len(bars) == 1 and bars[0].get("data-count") == "200"
    xs = {line.get("x1") for line in alpha + ci}
    assert len(xs) == 1


def test_markers_and_counts(tmp_path, nominal):
    sub = nominal.drop_unit(5)
    res = resample_alpha(sub, "nominal", BootstrapConfig(bootit=1000, seed=4))
    a = alpha_point(sub, "nominal").alpha
    _, bars, alpha, ci = parse(emit_histogram(res, a, (res.ci_lower, res.ci_upper), tmp_path / "h.svg"))
    assert len(bars) == sturges_bins(1000)
    assert sum(int(b.get("data-count")) for b in bars) == 1000
    assert alpha[0].get("stroke-dasharray") is None
    assert all(c.get("stroke-dasharray") for c in ci)
    assert float(alpha[0].get("x1")) > float(ci[0].get("x1"))
    # left skew: the estimate sits nearer the top of the support than the bottom
    assert res.replicates.max() - a < a - res.replicates.min()


def test_histogram_bins_empty():
    with pytest.raises(ValueError):
        histogram_bins([])


def test_unwritable_path(tmp_path):
    with pytest.raises(OSError):
        emit_histogram([0.1, 0.2], 0.15, (0.1, 0.2), tmp_path / "no" / "such" / "dir.svg")
