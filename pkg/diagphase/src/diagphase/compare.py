"""
Method Comparison

Closed-form count records for every construction, the PPP2/PPP3, WAL/PPP2
and LIU/WAL crossover functions with their delta-membership sets, the APK
register and Toffoli formulas, method selection, and the count sweeps behind
the CNOT-versus-n plots.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
import pandas as pd
from scipy.optimize import bisect

from . import formulas
from .config import get_setting, thread_count
from .errors import InfeasibleError, InvalidParameterError
from .parameters import coarse_params, degree_m, m0_value, mhat_value
from .spline import algorithm1, algorithm2

logger = logging.getLogger(__name__)

COUNT_METHODS = ('WAL', 'LIU', 'mLIU', 'PPP1', 'PPP2', 'PPP3', 'PPPV', 'APK')
SWEEP_COLUMNS = ['delta', 'n', 'method', 'cnot', 'rz', 'h', 'depth_bound', 'ancilla',
                 'm', 'M_tilde']


@dataclass
class CountRecord:
    """
    Analytic resources of one construction.

    Attributes:
        method (str): Method name
        n (int): Grid parameter the counts refer to
        params (dict): m, M_tilde, degrees, ... as applicable
        h, rz, cnot (int): Decomposed counts
        depth_bound (int): Analytic depth bound
        ancilla (int): Ancilla qubits
        toffoli (int): Toffoli tally (APK only)
    """
    method: str
    n: int
    params: dict
    h: int = 0
    rz: int = 0
    cnot: int = 0
    depth_bound: int = 0
    ancilla: int = 0
    toffoli: int = 0

    def to_dict(self):
        return asdict(self)


def analytic_counts(method, n, params):
    """
    Closed-form counts for a method.

    Args:
        method (str): WAL, LIU, mLIU, PPP1, PPP2, PPP3, PPPV or APK
        n (int): Grid parameter
        params (dict): 'm' for WAL/LIU/mLIU; 'm' and 'M_tilde' for PPPp;
            'm' and 'degrees' for PPPV; the apk_resources dict for APK

    Returns:
        CountRecord
    """
    params = dict(params)
    if method == 'APK':
        return CountRecord('APK', n, params, toffoli=int(params['toffoli']),
                           ancilla=int(params['ancilla']))
    m = int(params['m'])
    if m > n:
        raise InvalidParameterError(f"{method}: m={m} exceeds n={n}")
    ancilla = 0
    if method == 'WAL':
        counts = formulas.wal_counts(m)
    elif method == 'LIU':
        counts = formulas.liu_counts(n, m)
    elif method == 'mLIU':
        counts = formulas.mliu_counts(n, m)
    elif method in ('PPP1', 'PPP2', 'PPP3'):
        counts = formulas.ppp_uniform_counts(n, m, int(params['M_tilde']), int(method[-1]))
        ancilla = 1
    elif method == 'PPPV':
        degrees = list(params['degrees'])
        params.setdefault('M_tilde', len(degrees))
        counts = formulas.ppp_counts(n, m, degrees)
        ancilla = 1
    else:
        raise InvalidParameterError(f"unknown method {method!r}")
    return CountRecord(method, n, params, h=counts['h'], rz=counts['rz'], cnot=counts['cnot'],
                       depth_bound=counts['depth_bound'], ancilla=ancilla)


# ---------------------------------------------------------------------------
# Crossover analysis
# ---------------------------------------------------------------------------

def cc_ppp2(n, m2, M2):
    return n * (n - 1) + (2 * n + 4 * n * (n - 1) + 8 * m2 ** 2) * (M2 - 1)


def cc_ppp3(n, m3, M3):
    cubic = n * (n - 1) * (n - 2)
    return (n * (n - 1) + 4 * cubic / 3
            + (2 * n + 4 * n * (n - 1) + 10 * cubic / 3 + 8 * m3 ** 2) * (M3 - 1))


def crossover_g(n, m2, m3, M2, M3):
    """CNOT(PPP2) - CNOT(PPP3); valid for real n."""
    return cc_ppp2(n, m2, M2) - cc_ppp3(n, m3, M3)


def crossover_g_bar(n, m2, M2):
    """CNOT(WAL) - CNOT(PPP2)."""
    return 2.0 ** n - 2 - n * (n - 1) - (4 * n * n - 2 * n + 8 * m2 ** 2) * (M2 - 1)


def crossover_g_tilde(n, m1):
    """CNOT(LIU) - CNOT(WAL); zero at n = m1."""
    return 2 * (n - m1) * (2 ** m1 + 2 * m1 ** 2 - 2) + 2 ** m1 - 2.0 ** n


def stationary_points(M2, M3):
    """Roots n_-, n_+ of g'(n) = 0 (None when the discriminant is negative)."""
    b = 3 * M3 + 2 * M2 - 3
    a = 5 * M3 - 3
    disc = b * b - a * (7 * M3 + 3 * M2 - 6) / 3.0
    if disc < 0:
        return None, None
    root = math.sqrt(disc)
    return (b - root) / a, (b + root) / a


def second_root_g_tilde(m1):
    """The root n_4 > m1 of g~ (g~ rises from zero at m1 then falls)."""
    lo = m1 + 1e-3
    if crossover_g_tilde(lo, m1) <= 0:
        return float(m1)
    hi = m1 + 1.0
    while crossover_g_tilde(hi, m1) > 0:
        hi = m1 + 2 * (hi - m1)
    return bisect(crossover_g_tilde, lo, hi, args=(m1,), xtol=1e-9)


@dataclass
class CrossoverReport:
    """
    Crossover functions at one precision.

    Attributes:
        n_values (list): Integer grid the functions were evaluated on
        g, g_bar, g_tilde (list): Function values on n_values
        n_minus, n_plus (float): Stationary points of g
        n4 (float): Second root of g_tilde
        in_delta_V, in_delta_bar, in_delta_tilde (bool): Membership of delta
    """
    delta: float
    m0: int
    m1: int
    m2: int
    m3: int
    M2: int
    M3: int
    n_values: list = field(default_factory=list)
    g: list = field(default_factory=list)
    g_bar: list = field(default_factory=list)
    g_tilde: list = field(default_factory=list)
    n_minus: float = None
    n_plus: float = None
    n4: float = None
    in_delta_V: bool = False
    in_delta_bar: bool = False
    in_delta_tilde: bool = False

    def to_dict(self):
        return asdict(self)


def _piece_counts(V, delta, use_lower_bound):
    m = {p: degree_m(V, delta, p) for p in (1, 2, 3)}
    if use_lower_bound:
        M = {p: (1 if m[p] == 0 else mhat_value(V, delta, p, m[p])) for p in (2, 3)}
    else:
        M = {p: algorithm1(V, delta, p, refine=False).algorithmic_pieces for p in (2, 3)}
    return m, M


def _membership(m0, m, M):
    m1, m2, m3 = m[1], m[2], m[3]
    M2, M3 = M[2], M[3]
    n_minus, n_plus = stationary_points(M2, M3)
    if n_plus is None or n_plus <= m1:
        in_v = crossover_g(m1, m2, m3, M2, M3) < 0
    else:
        in_v = crossover_g(min(n_plus, m0), m2, m3, M2, M3) < 0
    in_bar = m2 >= 2 and crossover_g_bar(m1, m2, M2) < 0
    n4 = second_root_g_tilde(m1)
    in_tilde = m0 > n4
    return n_minus, n_plus, n4, in_v, in_bar, in_tilde


def crossover_analysis(V, delta, n_range=None, use_lower_bound=False):
    """
    Evaluate the crossover functions and the delta-set membership.

    Args:
        V (Potential): Target potential (not a polynomial of degree <= 3)
        delta (float): Precision
        n_range (iterable): Integer n grid (default m1..m0)
        use_lower_bound (bool): Use M_hat instead of Algorithm 1 piece counts

    Returns:
        CrossoverReport
    """
    if V.sup_norm(4) == 0:
        raise InvalidParameterError("crossover analysis is degenerate for polynomials of degree <= 3")
    m0 = m0_value(V, delta)
    m, M = _piece_counts(V, delta, use_lower_bound)
    n_values = list(n_range) if n_range is not None else list(range(m[1], max(m[1], m0) + 1))
    n_minus, n_plus, n4, in_v, in_bar, in_tilde = _membership(m0, m, M)
    report = CrossoverReport(
        delta=delta, m0=m0, m1=m[1], m2=m[2], m3=m[3], M2=M[2], M3=M[3],
        n_values=n_values,
        g=[crossover_g(n, m[2], m[3], M[2], M[3]) for n in n_values],
        g_bar=[crossover_g_bar(n, m[2], M[2]) for n in n_values],
        g_tilde=[crossover_g_tilde(n, m[1]) for n in n_values],
        n_minus=n_minus, n_plus=n_plus, n4=n4,
        in_delta_V=in_v, in_delta_bar=in_bar, in_delta_tilde=in_tilde,
    )
    logger.debug("crossover at delta=%g: n+=%s n4=%.3f", delta, n_plus, n4)
    return report


def _intervals(grid, flags):
    intervals = []
    start = None
    for i, flag in enumerate(flags):
        if flag and start is None:
            start = i
        if not flag and start is not None:
            intervals.append((float(grid[start]), float(grid[i - 1])))
            start = None
    if start is not None:
        intervals.append((float(grid[start]), float(grid[-1])))
    return intervals


def delta_sets(V, lo=1e-7, hi=1e-1, points_per_decade=None, use_lower_bound=False):
    """
    Membership of the three delta sets on a log-spaced grid, merged into
    intervals of consecutive members.

    Returns:
        dict: 'delta_V', 'delta_bar', 'delta_tilde' -> list of (lo, hi)
    """
    density = points_per_decade or get_setting('delta_grid_density')
    points = int(round(density * math.log10(hi / lo))) + 1
    grid = np.logspace(math.log10(lo), math.log10(hi), points)
    flags = {'delta_V': [], 'delta_bar': [], 'delta_tilde': []}
    for delta in grid:
        report = crossover_analysis(V, float(delta), n_range=[], use_lower_bound=use_lower_bound)
        flags['delta_V'].append(report.in_delta_V)
        flags['delta_bar'].append(report.in_delta_bar)
        flags['delta_tilde'].append(report.in_delta_tilde)
    return {key: _intervals(grid, values) for key, values in flags.items()}


# ---------------------------------------------------------------------------
# APK
# ---------------------------------------------------------------------------

def _log2_ceil(value):
    return max(0, math.ceil(math.log2(value))) if value > 0 else 0


def apk_register_widths(a_norms, L, v_norm, delta, c_p=1.0):
    """
    Fixed-point widths for the arithmetic pipeline.

    Args:
        a_norms (list): max_l |a_q^(l)| for q = 0..p
        L (float): Domain length
        v_norm (float): ||V||_inf
        delta (float): Precision

    Returns:
        tuple: (b_dec, b_tot, b_ext)
    """
    p = len(a_norms) - 1
    error_scale = c_p * (1 + sum((a_norms[q] + 1) * L ** q for q in range(1, p + 1)))
    b_dec = 1 + _log2_ceil(error_scale / delta)
    b_tot = b_dec + _log2_ceil(sum(a_norms[q] * L ** q for q in range(p + 1)))
    b_ext = max(0, b_dec - b_tot + _log2_ceil(8 * math.pi * v_norm / delta))
    return b_dec, b_tot, b_ext


def apk_linear_widths(L, v_norm, dv_norm, delta):
    """Closed-form b_tot bound for p = 1."""
    return (1 + _log2_ceil(L * dv_norm + v_norm) + _log2_ceil(1 + L + L * dv_norm)
            + _log2_ceil(1.0 / delta))


def apk_toffoli(n, p, M, b_dec, b_tot, b_ext):
    """Toffoli tallies per pipeline stage; uncomputation doubles the first three."""
    label = 12 * (n - 1) * (M - 1)
    load = 2 * (p + 1) * (M - 1)
    horner = p * (1.5 * b_tot ** 2 + 3 * b_dec * b_tot - 3 * b_dec ** 2
                  + 6.5 * b_tot - 3 * b_dec - 1)
    kickback = 2 * (b_tot + b_ext) - 1
    return {
        'label': int(label),
        'load': int(load),
        'evaluate': int(math.ceil(horner)),
        'kickback': int(kickback),
        'total': int(2 * (label + load + math.ceil(horner)) + kickback),
    }


def apk_resources(V, p, delta, n=None, c_p=None):
    """
    Register widths and Toffoli estimates of the arithmetic (APK) method.

    The spline is fitted at delta/2, the result register and the kickback
    each take a quarter of the budget.

    Args:
        V (Potential): Target potential
        p (int): Spline degree
        delta (float): Precision
        n (int): Grid parameter (default m_p)
        c_p (float): Truncation constant (default from config, 1)

    Returns:
        dict: b_dec, b_tot, b_ext, M_tilde, toffoli tallies, ancilla count and
        the order-of-magnitude expressions
    """
    if p < 1:
        raise InvalidParameterError("APK needs p >= 1")
    c_p = get_setting('apk_constant') if c_p is None else c_p
    pp = algorithm1(V, delta / 2, p)
    n = pp.m if n is None else n
    matrix = pp.coefficient_matrix()
    a_norms = [float(v) for v in np.max(np.abs(matrix), axis=0)]
    b_dec, b_tot, b_ext = apk_register_widths(a_norms, V.L, V.sup_norm(0), delta, c_p)
    M = pp.M_tilde
    toffoli = apk_toffoli(n, p, M, b_dec, b_tot, b_ext)
    ancilla = (n + 1 + _log2_ceil(M) + (p + 1) * b_tot + b_tot + (p + 1) * b_tot
               + b_tot + 2 * b_ext)
    log_inv = math.log2(1.0 / delta) if delta < 1 else 0.0
    return {
        'p': p,
        'n': n,
        'M_tilde': M,
        'b_dec': b_dec,
        'b_tot': b_tot,
        'b_ext': b_ext,
        'toffoli': toffoli['total'],
        'toffoli_stages': toffoli,
        'ancilla': ancilla,
        'toffoli_order': (n + p) * delta ** (-1.0 / (p + 1)) + p * (p + log_inv) ** 2,
        'clifford_order': (n + p) * delta ** (-1.0 / (p + 1)) + p * (p + log_inv) ** 2,
        'phase_order': log_inv ** 2,
        'ancilla_order': 1 + p * (p + log_inv),
    }


# ---------------------------------------------------------------------------
# Method selection
# ---------------------------------------------------------------------------

@dataclass
class MethodChoice:
    method: str
    n_eff: int
    counts: CountRecord
    table: list

    @property
    def params(self):
        return self.counts.params


def _ppp_record(V, delta, n_eff, p, cache=None):
    m = degree_m(V, delta, p)
    key = (delta, p, min(m, n_eff))
    if cache is not None and key in cache:
        pp = cache[key]
    else:
        pp = algorithm1(V, delta, p, m_override=n_eff if m > n_eff else None, refine=False)
        if cache is not None:
            cache[key] = pp
    return analytic_counts(f"PPP{p}", n_eff, {'m': pp.m, 'M_tilde': pp.algorithmic_pieces})


def _liu_record(method, n_eff, m1):
    if m1 < 1 or m1 >= n_eff:
        record = analytic_counts('WAL', n_eff, {'m': n_eff})
        record.method = method
        record.params['reduced_to'] = 'WAL'
        return record
    return analytic_counts(method, n_eff, {'m': m1})


def select_method(V, n, delta, periodic=None):
    """
    Pick the construction with the fewest decomposed CNOTs.

    Beyond n = m0 every candidate acts on the top m0 qubits only. Ties break
    toward fewer ancillas, then smaller depth bound, then candidate order.

    Returns:
        MethodChoice
    """
    params = coarse_params(V, delta, degrees=(1, 2))
    n_eff = min(n, params.m0)
    if n_eff == 0:
        record = analytic_counts('WAL', 0, {'m': 0})
        return MethodChoice('WAL', 0, record, [record])
    periodic = V.is_periodic() if periodic is None else periodic
    table = [analytic_counts('WAL', n_eff, {'m': n_eff}),
             _liu_record('LIU' if periodic else 'mLIU', n_eff, params.m1),
             _ppp_record(V, delta, n_eff, 2)]
    order = {record.method: i for i, record in enumerate(table)}
    best = min(table, key=lambda r: (r.cnot, r.ancilla, r.depth_bound, order[r.method]))
    logger.info("selected %s for n=%d (effective %d) at delta=%g", best.method, n, n_eff, delta)
    return MethodChoice(best.method, n_eff, best, table)


# ---------------------------------------------------------------------------
# Sweeps and tables
# ---------------------------------------------------------------------------

def _row(delta, record):
    params = record.params
    return {
        'delta': delta,
        'n': record.n,
        'method': record.method,
        'cnot': record.cnot,
        'rz': record.rz,
        'h': record.h,
        'depth_bound': record.depth_bound,
        'ancilla': record.ancilla,
        'm': params.get('m'),
        'M_tilde': params.get('M_tilde'),
    }


def _sweep_delta(V, delta, methods, n_values):
    params = coarse_params(V, delta, degrees=(1,))
    m0, m1 = params.m0, params.m1
    clamp = n_values is None
    if clamp:
        n_values = range(max(1, m1), m0 + 3)
    cache = {}
    rows = []
    for n in n_values:
        n_eff = min(n, m0) if clamp else n
        if n_eff < 1:
            continue
        for method in methods:
            if method == 'WAL':
                record = analytic_counts('WAL', n_eff, {'m': min(m0, n_eff)})
            elif method in ('LIU', 'mLIU'):
                record = _liu_record(method, n_eff, m1)
            elif method in ('PPP1', 'PPP2', 'PPP3'):
                record = _ppp_record(V, delta, n_eff, int(method[-1]), cache)
            elif method == 'PPPV':
                try:
                    pp = algorithm2(V, delta, n_eff, refine=False)
                except InfeasibleError as exc:
                    logger.info("no degree-varying row at n=%d: %s", n, exc)
                    continue
                record = analytic_counts('PPPV', n_eff, {'m': pp.m, 'degrees': pp.degrees,
                                                         'M_tilde': pp.algorithmic_pieces})
            else:
                raise InvalidParameterError(f"{method} is not part of a count sweep")
            record.n = n
            row = _row(delta, record)
            row['m0'] = m0
            row['m1'] = m1
            rows.append(row)
    return rows


def sweep_counts(V, deltas=None, methods=None, n_values=None, periodic=None):
    """
    CNOT/Rz/H/depth rows per (delta, n, method).

    Without n_values the rows cover n = m1 .. m0 + 2 with counts clamped to
    the top m0 qubits; explicit n_values are evaluated as given.

    Returns:
        DataFrame: SWEEP_COLUMNS plus m0, m1 markers
    """
    deltas = list(deltas or get_setting('sweep_deltas'))
    if methods is None:
        periodic = V.is_periodic() if periodic is None else periodic
        methods = ['WAL', 'LIU' if periodic else 'mLIU', 'PPP1', 'PPP2', 'PPP3', 'PPPV']
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        chunks = list(pool.map(lambda d: _sweep_delta(V, d, methods, n_values), deltas))
    frame = pd.DataFrame([row for chunk in chunks for row in chunk],
                         columns=SWEEP_COLUMNS + ['m0', 'm1'])
    return frame


def spline_table(V, deltas, n=19):
    """
    Spline variants per precision: lattice, piece count and PPP CNOT count.

    Returns:
        DataFrame: delta, spline, m, M_tilde, cnot
    """
    rows = []
    for delta in deltas:
        variants = [
            ('uniform linear', algorithm1(V, delta, 1, merge=False)),
            ('linear', algorithm1(V, delta, 1, refine=False)),
            ('quadratic', algorithm1(V, delta, 2, refine=False)),
            ('cubic spline', algorithm1(V, delta, 3, kind='cubic_spline')),
            ('cubic Hermite', algorithm1(V, delta, 3, refine=False)),
            ('degree-varying', algorithm2(V, delta, n, refine=False)),
        ]
        for label, pp in variants:
            cnot = None if pp.m > n else formulas.ppp_counts(n, pp.m, pp.degrees)['cnot']
            rows.append({'delta': delta, 'spline': label, 'm': pp.m,
                         'M_tilde': pp.algorithmic_pieces, 'cnot': cnot})
    return pd.DataFrame(rows)
