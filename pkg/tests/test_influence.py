import numpy as np
import pytest

from kalpha.core import alpha_point
from kalpha.data import ReliabilityMatrix
from kalpha.errors import DegenerateData, InvalidMatrix
from kalpha.influence import dfbeta_coders, dfbeta_units, influence


def test_unit_6(nominal):
    rep = dfbeta_units(nominal, "nominal", [5])
    assert rep.unit_dfbetas[5] == pytest.approx(-0.1141961, abs=1e-6)
    assert rep.base_alpha - rep.unit_dfbetas[5] == pytest.approx(6 / 7, abs=1e-12)


def test_unit_12_only_moves_expected_disagreement(nominal):
    rep = dfbeta_units(nominal, "nominal", [11])
    expected = 237 / 319 - (1 - 0.2 / (1216 / 1560))
    assert rep.unit_dfbetas[11] == pytest.approx(expected, abs=1e-12)
    assert rep.unit_dfbetas[11] == pytest.approx(-0.000474, abs=1e-6)


def test_coder_3(nominal):
    # exact-fraction oracle over the 12 x 3 submatrix: -14503/116116
    rep = dfbeta_coders(nominal, "nominal", [2])
    assert rep.coder_dfbetas[2] == pytest.approx(-14503 / 116116, abs=1e-12)


def test_reconstruction_identity(nominal):
    rep = influence(nominal, "nominal", units=range(12), coders=range(4))
    for i, v in rep.unit_dfbetas.items():
        assert rep.base_alpha - v == pytest.approx(alpha_point(nominal.drop_unit(i), "nominal").alpha, abs=1e-12)
    for j, v in rep.coder_dfbetas.items():
        assert rep.base_alpha - v == pytest.approx(alpha_point(nominal.drop_coder(j), "nominal").alpha, abs=1e-12)


def test_duplicate_coder():
    gen = np.random.default_rng(2)
    y = gen.normal(size=(8, 3)) + gen.normal(size=(8, 1))
    m = ReliabilityMatrix(np.column_stack([y, y[:, 2]]))
    rep = dfbeta_coders(m, "interval", [3])
    assert rep.coder_dfbetas[3] == alpha_point(m, "interval").alpha - alpha_point(ReliabilityMatrix(y), "interval").alpha
    assert rep.coder_dfbetas[3] != 0


def test_constant_rows_degenerate():
    m = ReliabilityMatrix(np.full((5, 3), 2.0))
    with pytest.raises(DegenerateData):
        dfbeta_units(m, "interval", [0])


def test_two_coders_cannot_drop():
    m = ReliabilityMatrix.from_rows([[1, 2], [3, 3], [2, 1]])
    with pytest.raises(InvalidMatrix, match="without coder 0"):
        dfbeta_coders(m, "interval", [0])


def test_empty_unit_has_zero_influence(nominal):
    rows = np.vstack([nominal.values, np.full((1, 4), np.nan)])
    rep = dfbeta_units(ReliabilityMatrix(rows), "nominal", [12])
    assert rep.unit_dfbetas[12] == 0.0


def test_degenerate_refit_is_labelled():
    m = ReliabilityMatrix.from_rows([[1, 1], [1, 1], [1, 5]])
    with pytest.raises(DegenerateData, match="without unit 2"):
        dfbeta_units(m, "interval", [2])
