from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from gaconvex.errors import DomainError, EvaluationError, ExprSyntaxError, UnknownIdentifierError
from gaconvex.expr import (
    Add,
    Div,
    Exp,
    Ln,
    Mul,
    Neg,
    Num,
    Pow,
    Sub,
    Var,
    compile_expr,
    diff,
    evaluate,
    parse,
    to_string,
)
from gaconvex.functions import CATALOG, derivative_power, from_expr, get_function

U = Var()


# {{{ parsing


@pytest.mark.parametrize("src, tree", [
    ("u^2", Pow(U, 2.0)),
    ("ln(u)*u", Mul(Ln(U), U)),
    ("-u^2", Neg(Pow(U, 2.0))),
    ("u - 1 - u", Sub(Sub(U, Num(1.0)), U)),
    ("u / 2 * u", Mul(Div(U, Num(2.0)), U)),
    ("1 + 2*u", Add(Num(1.0), Mul(Num(2.0), U))),
    ("exp( u / 4 )", Exp(Div(U, Num(4.0)))),
    ("u^-1", Pow(U, -1.0)),
    ("u^(-0.5)", Pow(U, -0.5)),
    ("(u+1)^2.5e0", Pow(Add(U, Num(1.0)), 2.5)),
    ("--u", Neg(Neg(U))),
])
def test_parse(src, tree):
    assert parse(src) == tree


@pytest.mark.parametrize("src, column", [
    ("u+", 3),
    ("", 1),
    ("u $ 2", 3),
    ("(u", 3),
    ("u^u", 3),
    ("2 3", 3),
    ("ln u", 4),
])
def test_syntax_errors(src, column):
    with pytest.raises(ExprSyntaxError) as info:
        parse(src)
    assert info.value.column == column
    assert f"column {column}" in str(info.value)


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as info:
        parse("2 * sin(u)")
    assert info.value.name == "sin"
    assert info.value.column == 5


# }}}

# {{{ random expressions

leaves = st.one_of(
    st.just(U),
    st.floats(0.25, 4.0).map(lambda v: Num(round(v, 3))),
)


def _extend(children):
    return st.one_of(
        st.tuples(children, children).map(lambda p: Add(*p)),
        st.tuples(children, children).map(lambda p: Sub(*p)),
        st.tuples(children, children).map(lambda p: Mul(*p)),
        st.tuples(children, children).map(lambda p: Div(*p)),
        st.tuples(children, st.sampled_from([-2.0, -1.0, 0.5, 2.0, 3.0])).map(lambda p: Pow(*p)),
        children.map(Neg),
        children.map(lambda c: Exp(Div(c, Num(8.0)))),
        children.map(lambda c: Ln(Add(Pow(c, 2.0), Num(1.0)))),
    )


expressions = st.recursive(leaves, _extend, max_leaves=8)


@given(expressions)
def test_print_parse_roundtrip(e):
    text = to_string(e)
    again = parse(text)
    assert again == e
    assert to_string(again) == text


@given(expressions, st.floats(0.3, 3.0))
def test_derivative_vs_central_difference(e, u):
    f, df = compile_expr(e), compile_expr(diff(e))
    h = 1e-6 * max(1.0, abs(u))
    try:
        exact = float(df(np.float64(u)))
        fd = float((f(np.float64(u + h)) - f(np.float64(u - h))) / (2 * h))
    except EvaluationError:
        assume(False)
    # skip points where the finite difference is dominated by round-off
    scale = float(np.max(np.abs(f(np.array([u - h, u, u + h])))))
    assume(scale * 1e-16 / h < 1e-7 * max(1.0, abs(exact)))
    assert abs(exact - fd) <= 1e-5 * max(1.0, abs(exact))


@given(expressions, st.floats(0.1, 5.0))
def test_evaluation_deterministic(e, u):
    f = compile_expr(e)
    try:
        first = f(np.float64(u))
    except EvaluationError:
        return
    assert f(np.float64(u)).tobytes() == first.tobytes()


# }}}

# {{{ differentiation and evaluation


@pytest.mark.parametrize("src, deriv, points", [
    ("u^2", lambda u: 2 * u, [0.5, 3.0]),
    ("ln(u)", lambda u: 1 / u, [0.5, 3.0]),
    ("exp(2*ln(u))", lambda u: 2 * u, [0.5, 3.0]),
    ("u^3 - 2*u", lambda u: 3 * u * u - 2, [0.5, 3.0]),
    ("1/u", lambda u: -1 / u**2, [0.5, 3.0]),
    ("7", lambda u: 0.0, [0.5, 3.0]),
])
def test_diff_examples(src, deriv, points):
    d = diff(parse(src))
    for u in points:
        assert evaluate(d, u) == pytest.approx(deriv(u), rel=1e-14, abs=1e-14)


def test_diff_folds_constants():
    assert diff(parse("u^2")) == Mul(Num(2.0), U)
    assert diff(parse("ln(u)")) == Div(Num(1.0), U)


def test_evaluate_examples():
    assert evaluate(parse("u^2"), 3.0) == 9.0
    assert evaluate(parse("ln(u)"), 1.0) == 0.0
    with pytest.raises(DomainError):
        evaluate(parse("ln(u)"), -1.0)
    with pytest.raises(EvaluationError):
        evaluate(parse("u^0.5"), -4.0)
    with pytest.raises(EvaluationError):
        evaluate(parse("1/(u-1)"), 1.0)
    assert evaluate(parse("u^3"), -2.0) == -8.0


# }}}

# {{{ function specs


@pytest.mark.parametrize("name", list(CATALOG))
def test_catalog_derivatives(name):
    f = CATALOG[name]
    u = np.linspace(max(f.domain_lo, 0.5), min(f.domain_hi, 2.0), 17)
    h = 1e-6
    fd = (f(u + h) - f(u - h)) / (2 * h)
    np.testing.assert_allclose(f.df(u), fd, rtol=1e-6, atol=1e-8)


def test_from_expr_and_lookup():
    f = from_expr("u^2 + ln(u)", 0.5, 3.0, name="mine")
    assert f.name == "mine" and f.covers(0.5, 3.0) and not f.covers(0.4, 1.0)
    assert f.deriv(2.0) == pytest.approx(4.5)
    with pytest.raises(DomainError):
        f.require(1.0, 4.0)
    assert get_function("u^2") is CATALOG["u^2"]
    g = get_function({"expr": "u^3", "lo": 0.1, "hi": 9, "name": "cube"})
    assert g.value(2.0) == 8.0 and g.domain_hi == 9.0
    assert get_function("2*u").deriv(5.0) == 2.0


def test_derivative_power():
    g = derivative_power(CATALOG["ln(u)"], 2.0)
    assert g.value(0.5) == pytest.approx(4.0)
    assert g.df is None


def test_function_spec_domain_validation():
    with pytest.raises(DomainError):
        from_expr("u", domain_lo=0.0)
    with pytest.raises(DomainError):
        from_expr("u", domain_lo=2.0, domain_hi=1.0)


# }}}
