"""
Piecewise-Polynomial Approximation

Grid-aligned splines of a potential: two-point Hermite pieces, the greedy
fixed-degree partition (Algorithm 1), the degree-varying partition that
minimizes a gate-count objective (Algorithm 2), and dense a posteriori error
measurement.

Knots live on the lattice x~ = k L / 2^m, so every knot is a grid point of any
register with n >= m qubits and a comparator on the top m qubits can test it.
"""

import functools
import json
import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from numpy.polynomial import Polynomial
from scipy.interpolate import CubicSpline

from .errors import InfeasibleError, InvalidParameterError
from .objective import cnot_objective
from .parameters import (
    CUBIC_SPLINE_CONSTANT,
    HERMITE_CONSTANTS,
    degree_m,
    mhat_value,
)

logger = logging.getLogger(__name__)

_MAX_ERROR_SAMPLES = 1 << 22


@dataclass
class PiecewisePoly:
    """
    Spline on a knot lattice.

    Attributes:
        m (int): Knot lattice exponent
        L (float): Domain length
        knots (list): Integer knots k_0 = 0 < ... < k_M = 2^m
        pieces (list): Coefficients per piece, ascending powers of physical x
        degrees (list): Polynomial degree per piece
        algorithmic_pieces (int): Piece count before a posteriori refinement
        kind (str): 'hermite' or 'cubic_spline'
    """
    m: int
    L: float
    knots: list
    pieces: list
    degrees: list
    algorithmic_pieces: int = None
    kind: str = 'hermite'
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.algorithmic_pieces is None:
            self.algorithmic_pieces = len(self.pieces)

    @property
    def M_tilde(self):
        return len(self.pieces)

    @property
    def edges(self):
        return np.asarray(self.knots, dtype=float) * self.L / (1 << self.m)

    def coefficient_matrix(self):
        width = max(len(c) for c in self.pieces)
        matrix = np.zeros((len(self.pieces), width))
        for i, coeffs in enumerate(self.pieces):
            matrix[i, :len(coeffs)] = coeffs
        return matrix

    def piece_index(self, x):
        idx = np.searchsorted(self.edges, np.asarray(x, dtype=float), side='right') - 1
        return np.clip(idx, 0, len(self.pieces) - 1)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        coeffs = self.coefficient_matrix()[self.piece_index(x)]
        out = np.zeros_like(x)
        for k in reversed(range(coeffs.shape[-1])):
            out = out * x + coeffs[..., k]
        return out

    def to_dict(self):
        return {
            'm': self.m,
            'L': self.L,
            'knots': [int(k) for k in self.knots],
            'degrees': [int(p) for p in self.degrees],
            'coefficients': [[float(c) for c in coeffs] for coeffs in self.pieces],
            'algorithmic_pieces': self.algorithmic_pieces,
            'kind': self.kind,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(m=data['m'], L=data['L'], knots=data['knots'],
                   pieces=[np.asarray(c, dtype=float) for c in data['coefficients']],
                   degrees=data['degrees'],
                   algorithmic_pieces=data.get('algorithmic_pieces'),
                   kind=data.get('kind', 'hermite'))


# ---------------------------------------------------------------------------
# Two-point Hermite pieces
# ---------------------------------------------------------------------------

def _hermite_local(va, vb, da, db, h, p, side='left'):
    """Coefficients in t = x - a of the two-point Hermite interpolant."""
    delta_v = vb - va
    if p == 1:
        return np.array([va, delta_v / h])
    if p == 2:
        if side == 'left':
            return np.array([va, da, (delta_v - da * h) / h ** 2])
        # matches V'(b): q(t) = vb + db (t - h) + c (t - h)^2
        c = (va - vb + db * h) / h ** 2
        return np.array([vb - db * h + c * h * h, db - 2 * c * h, c])
    if p == 3:
        c2 = (3 * delta_v - (2 * da + db) * h) / h ** 2
        c3 = (-2 * delta_v + (da + db) * h) / h ** 3
        return np.array([va, da, c2, c3])
    raise InvalidParameterError(f"Hermite degree must be 1, 2 or 3, got {p}")


def _to_global(local, a):
    """Re-expand sum_k c_k (x - a)^k in powers of x."""
    coeffs = Polynomial(local)(Polynomial([-a, 1.0])).coef
    out = np.zeros(len(local))
    out[:len(coeffs)] = coeffs[:len(local)]
    return out


def fit_hermite_piece(V, a, b, p, side='left'):
    """
    Two-point Hermite interpolant of V on [a, b].

    p = 1 matches V(a), V(b); p = 2 additionally V'(a) (or V'(b) with
    side='right'); p = 3 matches V and V' at both ends.

    Returns:
        ndarray: Coefficients in the monomial basis of x (length p + 1)
    """
    if not 0 <= a < b <= V.L * (1 + 1e-12):
        raise InvalidParameterError(f"invalid piece [{a}, {b}] on [0, {V.L}]")
    order = 0 if p == 1 else 1
    da_db = V.derivatives(np.array([a, b]), order)
    va, vb = da_db[0]
    da, db = (da_db[1] if order else (0.0, 0.0))
    return _to_global(_hermite_local(va, vb, da, db, b - a, p, side), a)


def _fit_pieces(V, m, knots, degrees, side='left'):
    xk = np.asarray(knots, dtype=float) * V.L / (1 << m)
    table = V.derivatives(xk, 1)
    pieces = []
    for i, p in enumerate(degrees):
        a, b = xk[i], xk[i + 1]
        local = _hermite_local(table[0, i], table[0, i + 1], table[1, i], table[1, i + 1],
                               b - a, p, side)
        pieces.append(_to_global(local, a))
    return pieces


def _fit_cubic_spline(V, m, knots):
    """Clamped (type I) cubic spline through the knots."""
    xk = np.asarray(knots, dtype=float) * V.L / (1 << m)
    yk = np.asarray(V(xk), dtype=float)
    spline = CubicSpline(xk, yk, bc_type=((1, V.deriv(0.0, 1)), (1, V.deriv(V.L, 1))))
    return [_to_global(spline.c[::-1, i], xk[i]) for i in range(len(xk) - 1)]


# ---------------------------------------------------------------------------
# Error measurement
# ---------------------------------------------------------------------------

def _sample_grid(pp, resolution):
    cells = 1 << pp.m
    per_cell = max(2, int(resolution))
    while cells * per_cell > _MAX_ERROR_SAMPLES and per_cell > 2:
        per_cell //= 2
    return np.linspace(0.0, pp.L, cells * per_cell + 1), per_cell


def piece_errors(pp, V, resolution=None):
    """Dense-sampled max |pp - V| on each piece."""
    xs, per_cell = _sample_grid(pp, resolution or V.resolution)
    err = np.abs(pp(xs) - np.asarray(V(xs)))
    starts = np.asarray(pp.knots[:-1], dtype=int) * per_cell
    per_piece = np.maximum.reduceat(err[:-1], starts)
    ends = np.asarray(pp.knots[1:], dtype=int) * per_cell
    return np.maximum(per_piece, err[ends])


def piecewise_max_error(pp, V, resolution=None):
    """
    Max |pp(x) - V(x)| over dense samples (at least ``resolution`` per cell
    of the knot lattice).
    """
    return float(np.max(piece_errors(pp, V, resolution)))


def _refine(V, delta, pp, side='left'):
    """Bisect pieces whose dense error exceeds delta, at lattice midpoints."""
    knots = list(pp.knots)
    degrees = list(pp.degrees)
    for _ in range(pp.m + 1):
        errors = piece_errors(pp, V)
        bad = [i for i, e in enumerate(errors) if e > delta and knots[i + 1] - knots[i] > 1]
        if not bad:
            break
        logger.warning("refining %d piece(s) whose sampled error exceeds delta=%g", len(bad), delta)
        for i in reversed(bad):
            mid = (knots[i] + knots[i + 1]) // 2
            knots.insert(i + 1, mid)
            degrees.insert(i + 1, degrees[i])
        pp = PiecewisePoly(pp.m, pp.L, knots, _fit_pieces(V, pp.m, knots, degrees, side),
                           degrees, pp.algorithmic_pieces, pp.kind)
        knots = list(pp.knots)
        degrees = list(pp.degrees)
    return pp


# ---------------------------------------------------------------------------
# Algorithm 1: fixed degree
# ---------------------------------------------------------------------------

def greedy_knots(bounds_per_cell, exponent, h, delta, constant):
    """
    Greedy merge of lattice cells: extend [j1, j2] while
    constant * max_norm[j1:j2] * ((j2 - j1) h)^exponent <= delta.
    """
    norms = list(bounds_per_cell)
    cells = len(norms)
    knots = [0]
    j1, j2 = 0, 1
    running = norms[0]
    while True:
        j2 += 1
        if j2 > cells:
            break
        candidate = max(running, norms[j2 - 1])
        if constant * candidate * ((j2 - j1) * h) ** exponent <= delta:
            running = candidate
            continue
        knots.append(j2 - 1)
        j1 = j2 - 1
        j2 = j1 + 1
        running = norms[j1]
    knots.append(cells)
    return knots


def algorithm1(V, delta, p, merge=True, m_override=None, kind='hermite', refine=True,
               side='left'):
    """
    Fixed-degree spline with grid-aligned knots.

    Args:
        V (Potential): Target function
        delta (float): Precision target
        p (int): Degree 1, 2 or 3
        merge (bool): Greedily merge lattice cells (False gives 2^m uniform pieces)
        m_override (int): Use this lattice instead of m_p
        kind (str): 'hermite' or 'cubic_spline' (p = 3 only, constant 5/384)
        refine (bool): Apply the a posteriori bisection safety net

    Returns:
        PiecewisePoly
    """
    if p not in HERMITE_CONSTANTS:
        raise InvalidParameterError(f"spline degree must be 1, 2 or 3, got {p}")
    if kind not in ('hermite', 'cubic_spline'):
        raise InvalidParameterError(f"unknown spline kind {kind!r}")
    if kind == 'cubic_spline' and p != 3:
        raise InvalidParameterError("the clamped cubic spline has degree 3")
    constant = CUBIC_SPLINE_CONSTANT if kind == 'cubic_spline' else HERMITE_CONSTANTS[p]

    if V.sup_norm(p + 1) == 0:
        m = 0 if m_override is None else int(m_override)
        knots = [0, 1 << m]
    else:
        m = degree_m(V, delta, p, constant) if m_override is None else int(m_override)
        cells = 1 << m
        if merge:
            norms = V.cell_norms(m)[p + 1]
            knots = greedy_knots(norms, p + 1, V.L / cells, delta, constant)
        else:
            knots = list(range(cells + 1))

    if kind == 'cubic_spline':
        if len(knots) < 3:
            pieces = _fit_pieces(V, m, knots, [3] * (len(knots) - 1), side)
        else:
            pieces = _fit_cubic_spline(V, m, knots)
        pp = PiecewisePoly(m, V.L, knots, pieces, [3] * (len(knots) - 1), kind=kind)
        pp.notes['constant'] = constant
        return pp

    degrees = [p] * (len(knots) - 1)
    pp = PiecewisePoly(m, V.L, knots, _fit_pieces(V, m, knots, degrees, side), degrees)
    if refine and merge:
        pp = _refine(V, delta, pp, side)
    logger.debug("algorithm1 p=%d delta=%g: m=%d M~=%d", p, delta, pp.m, pp.M_tilde)
    return pp


# ---------------------------------------------------------------------------
# Algorithm 2: degree-varying
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=512)
def _degree_partition(V, delta, m, degree_set):
    """
    Minimal feasible degree per lattice cell, then merge runs of equal degree
    while the merged bound holds.

    Returns:
        tuple: ((knots, degrees), None) or (None, offending_cell)
    """
    norms = V.cell_norms(m)
    cells = 1 << m
    h = V.L / cells
    chosen = np.zeros(cells, dtype=int)
    for p in reversed(degree_set):
        feasible = HERMITE_CONSTANTS[p] * norms[p + 1] * h ** (p + 1) <= delta
        chosen = np.where(feasible, p, chosen)
    if np.any(chosen == 0):
        return None, int(np.argmax(chosen == 0))

    chosen = chosen.tolist()
    rows = {p: norms[p + 1].tolist() for p in degree_set}
    knots, degrees = [0], []
    j1 = 0
    p = chosen[0]
    running = rows[p][0]
    for cell in range(1, cells):
        if chosen[cell] == p:
            candidate = max(running, rows[p][cell])
            if HERMITE_CONSTANTS[p] * candidate * ((cell + 1 - j1) * h) ** (p + 1) <= delta:
                running = candidate
                continue
        knots.append(cell)
        degrees.append(p)
        j1 = cell
        p = chosen[cell]
        running = rows[p][cell]
    knots.append(cells)
    degrees.append(p)
    return (tuple(knots), tuple(degrees)), None


def algorithm2(V, delta, n, degree_set=(1, 2, 3), m_set=None, objective=None,
               refine=True):
    """
    Degree-varying spline minimizing a gate-count objective over lattices.

    Args:
        V (Potential): Target function
        delta (float): Precision target
        n (int): Grid parameter the circuit will act on
        degree_set (iterable): Allowed degrees, subset of {1, 2, 3}
        m_set (iterable): Candidate lattice exponents (default 1..n)
        objective (callable): (m, degrees, n) -> cost; default PPP CNOT count
        refine (bool): Apply the a posteriori bisection safety net

    Returns:
        PiecewisePoly

    Raises:
        InfeasibleError: No candidate lattice admits a feasible degree per cell
    """
    degree_set = tuple(sorted(set(int(p) for p in degree_set)))
    if not degree_set or any(p not in HERMITE_CONSTANTS for p in degree_set):
        raise InvalidParameterError(f"degree set must be a non-empty subset of {{1, 2, 3}}")
    m_values = sorted(set(m_set)) if m_set is not None else list(range(1, n + 1))
    if any(not 1 <= m <= n for m in m_values):
        raise InvalidParameterError(f"lattice exponents must lie in 1..{n}")
    objective = objective or cnot_objective

    best = None
    infeasible = None
    for m in m_values:
        partition, bad_cell = _degree_partition(V, float(delta), m, degree_set)
        if partition is None:
            infeasible = (m, bad_cell)
            continue
        knots, degrees = partition
        score = objective(m, list(degrees), n)
        if best is None or score < best[0]:
            best = (score, m, list(knots), list(degrees))
    if best is None:
        m, cell = infeasible
        a = cell * V.L / (1 << m)
        b = (cell + 1) * V.L / (1 << m)
        raise InfeasibleError(
            f"no degree in {degree_set} reaches delta={delta:g} on cell {cell} "
            f"[{a:g}, {b:g}] of lattice m={m}", cell=(m, cell))

    score, m, knots, degrees = best
    pp = PiecewisePoly(m, V.L, knots, _fit_pieces(V, m, knots, degrees), degrees)
    pp.notes['objective'] = score
    if refine:
        pp = _refine(V, delta, pp)
        pp.notes['objective'] = score
    logger.debug("algorithm2 delta=%g n=%d: m*=%d M~=%d", delta, n, pp.m, pp.M_tilde)
    return pp


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def profile_frame(pp, V, resolution=16):
    """Sampled (x, V, pp, error) profile as a DataFrame."""
    xs, _ = _sample_grid(pp, resolution)
    xs = xs[:-1]
    values = np.asarray(V(xs))
    approx = pp(xs)
    return pd.DataFrame({'x': xs, 'V': values, 'pp': approx, 'error': approx - values})


def ratio_study(V, deltas, degrees=(1, 2, 3)):
    """
    Piece counts of Algorithm 1 against the integral lower bound.

    Returns:
        DataFrame: columns delta, p, m, M_tilde, M_hat, ratio
    """
    rows = []
    for delta in deltas:
        for p in degrees:
            pp = algorithm1(V, delta, p)
            m_hat = 1 if pp.m == 0 else mhat_value(V, delta, p, pp.m)
            rows.append({
                'delta': delta,
                'p': p,
                'm': pp.m,
                'M_tilde': pp.algorithmic_pieces,
                'M_hat': m_hat,
                'ratio': pp.algorithmic_pieces / m_hat,
            })
    return pd.DataFrame(rows)
