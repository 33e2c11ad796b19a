"""
Expression Front-End

Parses textual potentials such as ``1/sqrt(0.5+(x-10)^2)`` into an immutable
tree and evaluates the tree together with its first four derivatives by
propagating truncated Taylor series (forward mode). Evaluation is vectorized:
``x`` may be a scalar or a numpy array.

Grammar (lowest to highest precedence)::

    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?
    atom    := NUMBER | 'x' | 'pi' | NAME '(' sum ')' | '(' sum ')'
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    ArityError,
    EvaluationDomainError,
    ExprSyntaxError,
    InvalidParameterError,
    UnknownIdentifierError,
)

MAX_ORDER = 4

UNARY_FUNCTIONS = ('sin', 'cos', 'exp', 'sqrt', 'abs')
CONSTANTS = {'pi': math.pi}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


# ---------------------------------------------------------------------------
# Tree nodes
# ---------------------------------------------------------------------------

class Expr:
    """Base class for expression nodes. Nodes are frozen dataclasses."""

    def to_text(self):
        raise NotImplementedError

    def __str__(self):
        return self.to_text()

    def depends_on_x(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Expr):
    value: float

    def to_text(self):
        if self.value < 0:
            return f"(-{-self.value!r})"
        return repr(float(self.value))

    def depends_on_x(self):
        return False


@dataclass(frozen=True)
class Var(Expr):
    def to_text(self):
        return 'x'

    def depends_on_x(self):
        return True


@dataclass(frozen=True)
class Unary(Expr):
    op: str
    arg: Expr

    def to_text(self):
        if self.op == 'neg':
            return f"(-{self.arg.to_text()})"
        return f"{self.op}({self.arg.to_text()})"

    def depends_on_x(self):
        return self.arg.depends_on_x()


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr

    def to_text(self):
        return f"({self.left.to_text()} {self.op} {self.right.to_text()})"

    def depends_on_x(self):
        return self.left.depends_on_x() or self.right.depends_on_x()


@dataclass(frozen=True)
class Pow(Expr):
    """Power with a constant exponent."""
    base: Expr
    exponent: float

    def to_text(self):
        exponent = self.exponent
        if float(exponent).is_integer() and exponent >= 0:
            text = str(int(exponent))
        elif exponent >= 0:
            text = repr(float(exponent))
        else:
            text = f"(-{-float(exponent)!r})"
        return f"({self.base.to_text()}^{text})"

    def depends_on_x(self):
        return self.base.depends_on_x()


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text):
        tokens = []
        offset = 0
        while offset < len(text):
            if text[offset:].strip() == '':
                break
            match = _TOKEN_RE.match(text, offset)
            if match is None or match.end() == offset:
                stripped = len(text[offset:]) - len(text[offset:].lstrip())
                raise ExprSyntaxError(
                    f"unexpected character {text[offset + stripped]!r}",
                    offset + stripped,
                )
            kind = match.lastgroup
            tokens.append((kind, match.group(kind), match.start(kind)))
            offset = match.end()
        tokens.append(('end', '', len(text)))
        return tokens

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, value):
        kind, text, offset = self.advance()
        if text != value:
            found = 'end of input' if kind == 'end' else repr(text)
            raise ExprSyntaxError(f"expected {value!r}, found {found}", offset)

    def parse(self):
        tree = self.parse_sum()
        kind, text, offset = self.peek()
        if kind != 'end':
            raise ExprSyntaxError(f"unexpected token {text!r}", offset)
        return tree

    def parse_sum(self):
        left = self.parse_product()
        while self.peek()[1] in ('+', '-') and self.peek()[0] == 'op':
            op = self.advance()[1]
            left = Binary(op, left, self.parse_product())
        return left

    def parse_product(self):
        left = self.parse_unary()
        while self.peek()[1] in ('*', '/') and self.peek()[0] == 'op':
            op = self.advance()[1]
            left = Binary(op, left, self.parse_unary())
        return left

    def parse_unary(self):
        if self.peek()[0] == 'op' and self.peek()[1] == '-':
            self.advance()
            return Unary('neg', self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek()[0] == 'op' and self.peek()[1] == '^':
            _, _, offset = self.advance()
            exponent = self.parse_unary()
            if exponent.depends_on_x():
                raise ExprSyntaxError("exponent must not depend on x", offset)
            return Pow(base, float(evaluate(exponent, 0.0)))
        return base

    def parse_atom(self):
        kind, text, offset = self.advance()
        if kind == 'number':
            return Const(float(text))
        if kind == 'name':
            if text == 'x':
                return Var()
            if text in CONSTANTS:
                return Const(CONSTANTS[text])
            if text in UNARY_FUNCTIONS:
                self.expect('(')
                arg = self.parse_sum()
                if self.peek()[1] == ',':
                    raise ArityError(f"{text} takes exactly one argument", self.peek()[2])
                self.expect(')')
                return Unary(text, arg)
            raise UnknownIdentifierError(f"unknown identifier {text!r}", offset)
        if kind == 'op' and text == '(':
            inner = self.parse_sum()
            self.expect(')')
            return inner
        found = 'end of input' if kind == 'end' else repr(text)
        raise ExprSyntaxError(f"unexpected {found}", offset)


def parse_expression(text):
    """
    Parse an arithmetic expression in the variable x.

    Args:
        text (str): Expression source, e.g. ``"exp(-0.1*x^2)*cos(2*x)"``

    Returns:
        Expr: Root node of the parsed tree

    Raises:
        ExprSyntaxError: Malformed input (carries the byte offset)
        UnknownIdentifierError: Name that is not x, pi or a known function
        ArityError: Function called with more than one argument
    """
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Truncated Taylor arithmetic
# ---------------------------------------------------------------------------

def _mul(a, b, order):
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(order + 1)]


def _div(a, b, order):
    b0 = b[0]
    if np.any(b0 == 0):
        raise EvaluationDomainError("division by zero")
    out = []
    for k in range(order + 1):
        acc = a[k] - sum(b[i] * out[k - i] for i in range(1, k + 1))
        out.append(acc / b0)
    return out


def _exp(a, order):
    out = [np.exp(a[0])]
    for k in range(1, order + 1):
        out.append(sum(j * a[j] * out[k - j] for j in range(1, k + 1)) / k)
    return out


def _log(a, order):
    a0 = a[0]
    if np.any(a0 <= 0):
        raise EvaluationDomainError("logarithm of a non-positive value")
    out = [np.log(a0)]
    for k in range(1, order + 1):
        acc = a[k] - sum(j * out[j] * a[k - j] for j in range(1, k)) / k
        out.append(acc / a0)
    return out


def _sin_cos(a, order):
    s = [np.sin(a[0])]
    c = [np.cos(a[0])]
    for k in range(1, order + 1):
        s.append(sum(j * a[j] * c[k - j] for j in range(1, k + 1)) / k)
        c.append(-sum(j * a[j] * s[k - j] for j in range(1, k + 1)) / k)
    return s, c


def _sqrt(a, order):
    a0 = a[0]
    if np.any(a0 < 0):
        raise EvaluationDomainError("sqrt of a negative value")
    r0 = np.sqrt(a0)
    if order > 0 and np.any(r0 == 0):
        raise EvaluationDomainError("sqrt is not differentiable at 0")
    out = [r0]
    for k in range(1, order + 1):
        acc = a[k] - sum(out[j] * out[k - j] for j in range(1, k))
        out.append(acc / (2 * r0))
    return out


def _abs(a, order, strict):
    sign = np.sign(a[0])
    out = [np.abs(a[0])]
    if order == 0:
        return out
    kink = sign == 0
    if strict and np.any(kink):
        raise EvaluationDomainError("abs is not differentiable at its kink")
    for k in range(1, order + 1):
        out.append(np.where(kink, np.nan, sign * a[k]))
    return out


def _int_pow(a, exponent, order):
    result = [np.ones_like(a[0])] + [np.zeros_like(a[0]) for _ in range(order)]
    base = a
    while exponent:
        if exponent & 1:
            result = _mul(result, base, order)
        exponent >>= 1
        if exponent:
            base = _mul(base, base, order)
    return result


def _pow(a, exponent, order):
    if float(exponent).is_integer():
        e = int(exponent)
        if e >= 0:
            return _int_pow(a, e, order)
        one = [np.ones_like(a[0])] + [np.zeros_like(a[0]) for _ in range(order)]
        return _div(one, _int_pow(a, -e, order), order)
    log_a = _log(a, order)
    return _exp([exponent * c for c in log_a], order)


def _propagate(node, x, order, strict):
    if isinstance(node, Const):
        zero = np.zeros_like(x)
        return [zero + node.value] + [zero for _ in range(order)]
    if isinstance(node, Var):
        out = [x]
        if order >= 1:
            out.append(np.ones_like(x))
        out.extend(np.zeros_like(x) for _ in range(order - 1))
        return out
    if isinstance(node, Unary):
        a = _propagate(node.arg, x, order, strict)
        if node.op == 'neg':
            return [-c for c in a]
        if node.op == 'exp':
            return _exp(a, order)
        if node.op == 'sin':
            return _sin_cos(a, order)[0]
        if node.op == 'cos':
            return _sin_cos(a, order)[1]
        if node.op == 'sqrt':
            return _sqrt(a, order)
        if node.op == 'abs':
            return _abs(a, order, strict)
        raise InvalidParameterError(f"unknown unary operator {node.op!r}")
    if isinstance(node, Pow):
        return _pow(_propagate(node.base, x, order, strict), node.exponent, order)
    if isinstance(node, Binary):
        a = _propagate(node.left, x, order, strict)
        b = _propagate(node.right, x, order, strict)
        if node.op == '+':
            return [p + q for p, q in zip(a, b)]
        if node.op == '-':
            return [p - q for p, q in zip(a, b)]
        if node.op == '*':
            return _mul(a, b, order)
        if node.op == '/':
            return _div(a, b, order)
        raise InvalidParameterError(f"unknown binary operator {node.op!r}")
    raise InvalidParameterError(f"not an expression node: {node!r}")


def taylor_coefficients(e, x, order=MAX_ORDER, strict=True):
    """
    Normalized Taylor coefficients f^(k)(x)/k! for k = 0..order.

    Args:
        e (Expr): Expression tree
        x (float or ndarray): Evaluation point(s)
        order (int): Highest derivative order (at most 4)
        strict (bool): Raise at abs kinks instead of returning NaN

    Returns:
        ndarray: Shape (order + 1,) + shape(x)
    """
    if not 0 <= order <= MAX_ORDER:
        raise InvalidParameterError(f"derivative order must lie in 0..{MAX_ORDER}")
    x = np.asarray(x, dtype=float)
    with np.errstate(all='ignore'):
        coeffs = _propagate(e, x, order, strict)
    return np.array([np.broadcast_to(c, x.shape) for c in coeffs])


def derivatives(e, x, order=MAX_ORDER, strict=True):
    """Derivatives [f, f', ..., f^(order)] at x, stacked along axis 0."""
    coeffs = taylor_coefficients(e, x, order, strict)
    scale = np.array([math.factorial(k) for k in range(order + 1)], dtype=float)
    return coeffs * scale.reshape((-1,) + (1,) * (coeffs.ndim - 1))


def eval_deriv(e, x, order):
    """
    Evaluate the order-th derivative of e at a scalar x.

    Args:
        e (Expr): Expression tree
        x (float): Evaluation point
        order (int): Derivative order in 0..4

    Returns:
        float: d^order e / dx^order at x
    """
    value = derivatives(e, float(x), order)[order]
    value = float(value)
    if not math.isfinite(value):
        raise EvaluationDomainError(f"derivative of order {order} is not finite at x={x}")
    return value


def evaluate(e, x):
    """Value of e at x (scalar or array)."""
    value = taylor_coefficients(e, x, 0)[0]
    return float(value) if np.ndim(value) == 0 else value
