import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kalpha import dsl
from kalpha.dsl import BinOp, Call, Const, Neg, Num, Var
from kalpha.errors import EvalError, ParseError, UnknownIdentifier
from kalpha.metrics import DistanceSpec, pairwise


def test_parse_square_difference():
    assert dsl.parse("(x-y)^2") == BinOp("^", BinOp("-", Var("x"), Var("y")), Num(2.0))


def test_parse_abs_call():
    assert dsl.parse("abs(x - y)") == Call("abs", (BinOp("-", Var("x"), Var("y")),))


def test_dangling_operator():
    with pytest.raises(ParseError) as info:
        dsl.parse("x +")
    assert info.value.position == 3
    assert info.value.expected == "atom"


@pytest.mark.parametrize(
    "src,pos",
    [("", 0), ("(x-y", 4), ("x y", 2), ("x $ y", 2), ("min(x)", 0), ("abs(x, y)", 0), ("sin x", 4), ("1e999", 0)],
)
def test_parse_errors_carry_position(src, pos):
    with pytest.raises(ParseError) as info:
        dsl.parse(src)
    assert info.value.position == pos
    assert 0 <= info.value.position <= len(src) + 1


@pytest.mark.parametrize("src", ["z", "x + foo(y)", "Pi", "X"])
def test_unknown_identifier(src):
    with pytest.raises(UnknownIdentifier):
        dsl.parse(src)


@pytest.mark.parametrize(
    "src,x,y,expected",
    [
        ("(x-y)^2", 3, 5, 4.0),
        ("-2^2", 0, 0, -4.0),
        ("2^3^2", 0, 0, 512.0),
        ("2^-1", 0, 0, 0.5),
        ("x - y - 1", 5, 2, 2.0),
        ("x / y / 2", 8, 2, 2.0),
        ("1 + 2 * 3", 0, 0, 7.0),
        ("min(x, y) + max(x, y)", 2, 9, 11.0),
        ("sqrt(x) * exp(0) + log(1) + cos(0)", 4, 0, 3.0),
        ("2.5e-1 + .75 + 3.", 0, 0, 4.0),
        ("--x", 3, 0, 3.0),
    ],
)
def test_evaluate(src, x, y, expected):
    assert dsl.evaluate(dsl.parse(src), x, y) == pytest.approx(expected, rel=1e-15)


def test_abs_on_first_cartilage_pair():
    assert dsl.evaluate(dsl.parse("abs(x-y)"), 27.3, 27.8) == pytest.approx(0.5, abs=1e-12)


def test_sine_form_reproduces_circular():
    assert dsl.evaluate(dsl.parse("sin(pi*(x-y)/4)^2"), 0, 2) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("src,x,y", [("log(x)", 0, 1), ("log(x - y)", 1, 2), ("x / y", 1, 0), ("sqrt(x)", -1, 0),
                                     ("exp(x)", 1000, 0), ("x^0.5", -4, 0)])
def test_eval_errors(src, x, y):
    with pytest.raises(EvalError):
        dsl.evaluate(dsl.parse(src), x, y)


def test_validate_clean():
    assert dsl.validate_distance(dsl.parse("(x-y)^2"), [-1, 0, 1, 2]).ok


def test_validate_asymmetric():
    diag = dsl.validate_distance(dsl.parse("x-y"), [0, 1])
    sym = diag.of_kind("symmetry")
    assert [(v.x, v.y) for v in sym] == [(0.0, 1.0)]


def test_validate_diagonal():
    diag = dsl.validate_distance(dsl.parse("x*y"), [2])
    (v,) = diag.violations
    assert v.kind == "zero-diagonal" and (v.x, v.y) == (2.0, 2.0) and "4.0" in v.detail


def test_validate_reports_eval_failures_without_raising():
    diag = dsl.validate_distance(dsl.parse("log(x)"), [0, 1])
    assert diag.of_kind("evaluation")


def test_validate_needs_grid():
    with pytest.raises(ValueError):
        dsl.validate_distance(dsl.parse("x"), [])


# -- round trip and equivalence ----------------------------------------------

literals = st.floats(0, 1e6, allow_nan=False, allow_infinity=False).map(Num)
leaves = st.one_of(literals, st.sampled_from([Var("x"), Var("y"), Const("pi")]))


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.tuples(st.sampled_from("+-*/^"), children, children).map(lambda t: BinOp(*t)),
        st.tuples(st.sampled_from(sorted(dsl.UNARY_FUNCS)), children).map(lambda t: Call(t[0], (t[1],))),
        st.tuples(st.sampled_from(sorted(dsl.BINARY_FUNCS)), children, children).map(
            lambda t: Call(t[0], (t[1], t[2]))
        ),
    )


trees = st.recursive(leaves, _extend, max_leaves=12)


@given(trees)
def test_round_trip(tree):
    assert dsl.parse(dsl.to_source(tree)) == tree


def test_to_source_is_minimal_for_common_forms():
    assert dsl.to_source(dsl.parse("(x-y)^2")) == "(x - y)^2.0"
    assert dsl.to_source(dsl.parse("-(x^2)")) == "-x^2.0"
    assert dsl.to_source(dsl.parse("(-x)^2")) == "(-x)^2.0"


@given(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=1, max_size=30))
def test_square_difference_matches_interval_bitwise(values):
    v = np.array(values)
    custom = pairwise(DistanceSpec.custom("(x-y)^2"), v[:, None], v[None, :])
    builtin = pairwise(DistanceSpec("interval"), v[:, None], v[None, :])
    assert np.array_equal(custom, builtin)
