"""
Tests for the expression parser and the Taylor-mode evaluator.
"""

import math

import numpy as np
import pytest

from diagphase.errors import (
    ArityError,
    EvaluationDomainError,
    ExprSyntaxError,
    InvalidParameterError,
    UnknownIdentifierError,
)
from diagphase.expr import (
    derivatives,
    eval_deriv,
    evaluate,
    parse_expression,
    taylor_coefficients,
)


@pytest.mark.parametrize("text, x, expected", [
    ("x*x", 3.0, 9.0),
    ("2+3*x^2", 2.0, 14.0),
    ("-x^2", 3.0, -9.0),
    ("2^3^2", 0.0, 512.0),
    ("x^0.5", 4.0, 2.0),
    ("(1 + x) / (2 - x)", 1.0, 2.0),
    ("sin(pi/2) + cos(0) + exp(0) + sqrt(4) + abs(-3)", 0.0, 8.0),
    ("1e-1 * 10", 0.0, 1.0),
])
def test_evaluate(text, x, expected):
    """Test values, precedence and right-associative powers."""
    assert evaluate(parse_expression(text), x) == pytest.approx(expected)


def test_evaluate_vectorized():
    xs = np.linspace(0.0, 1.0, 11)
    values = evaluate(parse_expression("3*x - 1"), xs)
    np.testing.assert_allclose(values, 3 * xs - 1)


def test_derivatives_of_sine():
    """Test that the first four derivatives cycle through sin/cos."""
    x = 0.3
    out = derivatives(parse_expression("sin(x)"), x, 4)
    expected = [math.sin(x), math.cos(x), -math.sin(x), -math.cos(x), math.sin(x)]
    np.testing.assert_allclose(out, expected, rtol=1e-12)


def test_taylor_coefficients_of_exp():
    coeffs = taylor_coefficients(parse_expression("exp(x)"), 0.0, 4)
    np.testing.assert_allclose(coeffs, [1.0 / math.factorial(k) for k in range(5)])


def test_derivatives_of_coulomb_form():
    """Test the second derivative of 1/sqrt(a + u^2) at its peak, -a^(-3/2)."""
    tree = parse_expression("1/sqrt(0.5 + (x - 10)^2)")
    assert eval_deriv(tree, 10.0, 2) == pytest.approx(-0.5 ** -1.5)
    assert eval_deriv(tree, 10.0, 1) == pytest.approx(0.0, abs=1e-12)


def test_quotient_and_power_rules():
    tree = parse_expression("x^3 / (1 + x)")
    x = 0.7
    h = 1e-5
    numeric = (evaluate(tree, x + h) - evaluate(tree, x - h)) / (2 * h)
    assert eval_deriv(tree, x, 1) == pytest.approx(numeric, rel=1e-8)


def test_order_out_of_range():
    with pytest.raises(InvalidParameterError):
        derivatives(parse_expression("x"), 0.0, 5)


def test_empty_expression():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression("")
    assert info.value.offset == 0


def test_unexpected_token_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression("1 +* 2")
    assert info.value.offset == 3


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as info:
        parse_expression("foo(x)")
    assert info.value.offset == 0


def test_wrong_arity():
    with pytest.raises(ArityError):
        parse_expression("sin(x, 1)")


def test_exponent_must_be_constant():
    with pytest.raises(ExprSyntaxError):
        parse_expression("x^x")


def test_unbalanced_parenthesis():
    with pytest.raises(ExprSyntaxError):
        parse_expression("(x + 1")


def test_sqrt_of_negative():
    with pytest.raises(EvaluationDomainError):
        eval_deriv(parse_expression("sqrt(x)"), -1.0, 0)


def test_division_by_zero():
    with pytest.raises(EvaluationDomainError):
        evaluate(parse_expression("1/x"), 0.0)


def test_abs_kink():
    """Test that the kink raises in strict mode and yields NaN otherwise."""
    tree = parse_expression("abs(x)")
    with pytest.raises(EvaluationDomainError):
        derivatives(tree, 0.0, 1)
    relaxed = derivatives(tree, 0.0, 1, strict=False)
    assert relaxed[0] == 0.0
    assert np.isnan(relaxed[1])
