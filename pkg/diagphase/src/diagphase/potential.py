"""
Potential Function Model

A Potential is the function V on [0, L] that a diagonal circuit approximates.
It answers value and derivative queries (vectorized, up to order 4) and the
sup-norm queries every coarse-graining formula and spline algorithm needs.

Three kinds of source are supported:
- built-in descriptors (modified Coulomb, damped oscillator, polynomial),
  represented as expression trees so derivatives are exact;
- user expressions parsed by the expression front-end;
- tabulated samples (two-column CSV), whose derivatives fall back to divided
  differences with a logged warning.
"""

import logging
import math

import numpy as np
import pandas as pd

from . import expr as ex
from .config import get_setting
from .errors import InvalidParameterError

logger = logging.getLogger(__name__)


class Potential:
    """
    Function model for V on [0, L].

    Args:
        source: An Expr tree, or a (xs, values) pair of sample arrays
        L (float): Domain length
        name (str): Label used in reports
        resolution (int): Samples per finest subinterval for norm estimation
        clip_below (float): If given, V(x) := V(clip_below) for x < clip_below
        periodic (bool): Force the periodic/non-periodic classification
    """

    def __init__(self, source, L, name=None, resolution=None, clip_below=None,
                 periodic=None):
        if not L > 0:
            raise InvalidParameterError(f"domain length must be positive, got {L}")
        self.L = float(L)
        self.name = name or 'V'
        self.resolution = int(resolution or get_setting('norm_resolution'))
        self.norm_lattice = int(get_setting('norm_lattice'))
        self.clip_below = clip_below
        self.periodic = periodic
        self._cell_cache = {}
        self._norm_cache = {}
        self._warned = False

        if isinstance(source, ex.Expr):
            self.expr = source
            self.samples = None
        else:
            xs, values = source
            xs = np.asarray(xs, dtype=float)
            values = np.asarray(values, dtype=float)
            if xs.ndim != 1 or xs.shape != values.shape or len(xs) < 2:
                raise InvalidParameterError("tabulated potential needs two equal-length 1-D arrays")
            if np.any(np.diff(xs) <= 0):
                raise InvalidParameterError("tabulated abscissae must be strictly increasing")
            self.expr = None
            self.samples = (xs - xs[0], values)
        self.approximate_derivatives = self.samples is not None

    def __repr__(self):
        return f"Potential({self.name!r}, L={self.L})"

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def derivatives(self, x, order=ex.MAX_ORDER):
        """
        Values and derivatives [V, V', ..., V^(order)] at x.

        Returns:
            ndarray: Shape (order + 1,) + shape(x)
        """
        x = np.asarray(x, dtype=float)
        xe = x
        if self.clip_below is not None:
            xe = np.maximum(x, self.clip_below)

        if self.expr is not None:
            out = ex.derivatives(self.expr, xe, order, strict=False)
        else:
            out = self._tabulated_derivatives(xe, order)

        if self.clip_below is not None and order > 0:
            below = x < self.clip_below
            out = out.copy()
            out[1:] = np.where(below, 0.0, out[1:])
        return out

    def _tabulated_derivatives(self, x, order):
        xs, values = self.samples
        if order > 0 and not self._warned:
            logger.warning("%s: derivatives of tabulated data use divided differences", self.name)
            self._warned = True
        rows = [np.interp(x, xs, values)]
        current = values
        for _ in range(order):
            current = np.gradient(current, xs)
            rows.append(np.interp(x, xs, current))
        return np.array(rows)

    def __call__(self, x):
        value = self.derivatives(x, 0)[0]
        return float(value) if np.ndim(value) == 0 else value

    def deriv(self, x, order):
        """Scalar derivative V^(order)(x)."""
        return float(self.derivatives(float(x), order)[order])

    def sample(self, m, endpoint=False):
        """Coarse samples u_k = V(k L / 2^m), k = 0..2^m - 1 (plus V(L) if endpoint)."""
        count = (1 << m) + (1 if endpoint else 0)
        xs = np.arange(count, dtype=float) * self.L / (1 << m)
        return np.asarray(self(xs), dtype=float).reshape(count)

    def grid_values(self, n):
        """v_j = V(x_j) on the fine grid x_j = j L / 2^n."""
        return self.sample(n)

    def is_periodic(self, tol=1e-12):
        """Whether V(0) and V(L) agree closely enough for a periodic wrap."""
        if self.periodic is not None:
            return bool(self.periodic)
        v0, vl = self(0.0), self(self.L)
        return abs(v0 - vl) <= tol * max(1.0, abs(v0), abs(vl))

    def scaled(self, factor, name=None):
        """Potential for factor * V on the same domain."""
        label = name or f"{factor:g}*{self.name}"
        if self.expr is not None:
            source = ex.Binary('*', ex.Const(float(factor)), self.expr)
        else:
            xs, values = self.samples
            source = (xs, factor * values)
        return Potential(source, self.L, name=label, resolution=self.resolution,
                         clip_below=self.clip_below, periodic=self.periodic)

    # ------------------------------------------------------------------
    # Norms
    # ------------------------------------------------------------------

    def sup_norm(self, order, interval=None):
        """
        Dense-sampled max |V^(order)| over an interval.

        Args:
            order (int): Derivative order 0..4
            interval (tuple): (a, b) inside [0, L]; defaults to the whole domain

        Returns:
            float: Sampled sup-norm
        """
        if interval is None and order in self._norm_cache:
            return self._norm_cache[order]
        a, b = (0.0, self.L) if interval is None else map(float, interval)
        if not (0.0 <= a < b <= self.L * (1 + 1e-12)):
            raise InvalidParameterError(f"interval [{a}, {b}] is not inside [0, {self.L}]")
        cells = max(1, math.ceil((b - a) / self.L * (1 << self.norm_lattice) - 1e-9))
        xs = np.linspace(a, b, self.resolution * cells + 1)
        values = np.abs(self.derivatives(xs, order)[order])
        norm = np.nanmax(values)
        norm = float(norm) if np.isfinite(norm) else 0.0
        if interval is None:
            self._norm_cache[order] = norm
        return norm

    def samples_per_cell(self, m):
        """Sampling density used by cell_norms on lattice m."""
        shift = max(0, m - self.norm_lattice)
        return max(2, self.resolution >> shift)

    def cell_norms(self, m):
        """
        Per-cell sup-norms of V^(0..4) on the lattice with 2^m cells.

        Returns:
            ndarray: Shape (5, 2^m); row k holds max |V^(k)| on each cell
        """
        if m in self._cell_cache:
            return self._cell_cache[m]
        cells = 1 << m
        per_cell = self.samples_per_cell(m)
        xs = np.linspace(0.0, self.L, cells * per_cell + 1)
        values = np.abs(self.derivatives(xs, ex.MAX_ORDER))
        body = values[:, :-1].reshape(ex.MAX_ORDER + 1, cells, per_cell)
        norms = np.fmax(np.nanmax(body, axis=2), values[:, per_cell::per_cell])
        norms = np.nan_to_num(norms, nan=0.0)
        self._cell_cache[m] = norms
        return norms


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def _c(value):
    return ex.Const(float(value))


def coulomb(A, a2, L):
    """Modified Coulomb potential A / sqrt(a^2 + (x - L/2)^2)."""
    if not a2 > 0:
        raise InvalidParameterError("modified Coulomb potential needs a^2 > 0")
    shifted = ex.Binary('-', ex.Var(), _c(L / 2))
    radicand = ex.Binary('+', _c(a2), ex.Pow(shifted, 2.0))
    tree = ex.Binary('/', _c(A), ex.Unary('sqrt', radicand))
    return Potential(tree, L, name=f"coulomb(A={A:g}, a2={a2:g}, L={L:g})")


def damped_osc(A, a, omega, L):
    """Damped oscillator A exp(-a x^2) cos(omega x)."""
    decay = ex.Unary('exp', ex.Unary('neg', ex.Binary('*', _c(a), ex.Pow(ex.Var(), 2.0))))
    wave = ex.Unary('cos', ex.Binary('*', _c(omega), ex.Var()))
    tree = ex.Binary('*', _c(A), ex.Binary('*', decay, wave))
    return Potential(tree, L, name=f"damped_osc(A={A:g}, a={a:g}, omega={omega:g}, L={L:g})")


def polynomial(coeffs, L):
    """Polynomial sum_k coeffs[k] x^k in Horner form."""
    coeffs = [float(c) for c in coeffs] or [0.0]
    tree = _c(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        tree = ex.Binary('+', _c(c), ex.Binary('*', ex.Var(), tree))
    return Potential(tree, L, name=f"polynomial({', '.join(f'{c:g}' for c in coeffs)})")


def coulomb_squared(A, a2, L, clip_below=None):
    """
    Coulomb interaction as a function of the squared distance s:
    A / sqrt(a^2 + s). With a^2 = 0 the function is singular at s = 0 and is
    held constant below clip_below.
    """
    if a2 < 0:
        raise InvalidParameterError("a^2 must be non-negative")
    tree = ex.Binary('/', _c(A), ex.Unary('sqrt', ex.Binary('+', _c(a2), ex.Var())))
    if a2 == 0:
        if clip_below is None or clip_below <= 0:
            raise InvalidParameterError("bare Coulomb on squared distance needs a positive clip point")
        logger.warning("Coulomb interaction is singular at 0; clipping below s=%g", clip_below)
    return Potential(tree, L, name=f"coulomb_squared(A={A:g}, a2={a2:g})",
                     clip_below=clip_below if a2 == 0 else None)


BUILTINS = {
    'coulomb': coulomb,
    'damped_osc': damped_osc,
    'polynomial': polynomial,
    'coulomb_squared': coulomb_squared,
}


def make_builtin(kind, *args, **kwargs):
    """
    Construct a built-in potential by name.

    Args:
        kind (str): One of 'coulomb', 'damped_osc', 'polynomial', 'coulomb_squared'
        *args: Positional parameters of the chosen family

    Returns:
        Potential
    """
    try:
        factory = BUILTINS[kind]
    except KeyError:
        raise InvalidParameterError(f"unknown built-in potential {kind!r}") from None
    return factory(*args, **kwargs)


def from_expression(text, L):
    """Potential from expression text in x on [0, L]."""
    return Potential(ex.parse_expression(text), L, name=text)


def from_csv(path):
    """Tabulated potential from a two-column (x, V) CSV file."""
    frame = pd.read_csv(path)
    if frame.shape[1] < 2:
        raise InvalidParameterError(f"{path}: expected two columns (x, V)")
    xs = frame.iloc[:, 0].to_numpy(dtype=float)
    values = frame.iloc[:, 1].to_numpy(dtype=float)
    return Potential((xs, values), xs[-1] - xs[0], name=str(path))
