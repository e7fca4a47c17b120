from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlwave.expression import (
    BinOp,
    Call,
    Const,
    EvaluationError,
    ExpressionSyntaxError,
    Neg,
    Num,
    Var,
    eval_expression,
    parse_expression,
    serialize,
    variables,
)

leaves = st.one_of(
    st.floats(min_value=0, max_value=1e6, allow_nan=False, allow_infinity=False).map(Num),
    st.sampled_from(["x", "Y"]).map(Var),
    st.just(Const("pi")),
)
trees = st.recursive(
    leaves,
    lambda kids: st.one_of(
        kids.map(Neg),
        st.builds(BinOp, st.sampled_from("+-*/^"), kids, kids),
        st.builds(Call, st.sampled_from(["sin", "cos", "exp", "ln", "sqrt"]), kids),
    ),
    max_leaves=12,
)


@settings(max_examples=200, deadline=None)
@given(trees)
def test_serialize_parse_round_trip(tree):
    assert parse_expression(serialize(tree)) == tree


@pytest.mark.parametrize("text,expected", [
    ("1 + 2 * 3", 7.0),
    ("2 ^ 3 ^ 2", 512.0),
    ("-2 ^ 2", -4.0),
    ("(1 + 2) * 3", 9.0),
    ("8 / 4 / 2", 1.0),
    ("2*pi", 2 * math.pi),
    ("sqrt(16) + ln(exp(2))", 6.0),
    ("1.5e2 - .5", 149.5),
    ("x^5 - x^4 + 44*x^2 - 30*x", 14.0),
])
def test_precedence_and_values(text, expected):
    assert parse_expression(text)(1.0) == pytest.approx(expected)


def test_vectorised_with_state():
    node = parse_expression("x*Y + sin(pi*x)")
    x = np.array([0.0, 0.5, 1.0])
    out = node(x, np.array([1.0, 2.0, 3.0]))
    assert np.allclose(out, x * [1, 2, 3] + np.sin(np.pi * x))
    assert variables(node) == {"x", "Y"}
    assert isinstance(eval_expression(node, 0.5, 2.0), float)


@pytest.mark.parametrize("text,pos", [("1 +", 3), ("2 * (x", 6), ("foo(x)", 0), ("x $ 2", 2), ("", 0), ("1 2", 2)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression(text)
    assert info.value.position == pos


@pytest.mark.parametrize("text,x", [("ln(x)", 0.0), ("sqrt(x - 1)", 0.5), ("1/(x - 0.25)", 0.25), ("(-1)^0.5", 0.0)])
def test_domain_errors(text, x):
    with pytest.raises(EvaluationError):
        parse_expression(text)(np.array([0.75, x]))


def test_missing_state_value():
    with pytest.raises(EvaluationError):
        parse_expression("Y^2")(1.0)
