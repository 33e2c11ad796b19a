"""
Synthesis Methods

One entry point per construction plus ``synthesize`` which dispatches on the
method name, the way every construction is reachable from the model and the
command line.
"""

import logging

from ..errors import InvalidParameterError
from ..parameters import degree_m
from ..spline import algorithm1, algorithm2
from .liu import synth_liu, synth_mliu
from .ppp import synth_comparator, synth_poly_phase, synth_ppp
from .walsh import synth_wal

logger = logging.getLogger(__name__)

METHODS = ('WAL', 'LIU', 'mLIU', 'PPP1', 'PPP2', 'PPP3', 'PPPV')


def fit_for_register(V, delta, n, method, degree_set=(1, 2, 3)):
    """
    Spline used by a PPP method on an n-qubit register.

    A lattice finer than the register is clamped to m = n. A single-cell
    piece then holds one grid point, its left knot, which the interpolant
    reproduces exactly; merged pieces still meet delta.
    """
    if method == 'PPPV':
        return algorithm2(V, delta, n, degree_set=degree_set)
    p = int(method[-1])
    m = degree_m(V, delta, p)
    if m > n:
        logger.info("m_%d=%d exceeds n=%d; clamping the knot lattice", p, m, n)
        return algorithm1(V, delta, p, m_override=n)
    return algorithm1(V, delta, p)


def synthesize(method, V, n, delta, mode='analytic', **kwargs):
    """
    Build the circuit of a method for e^{-i V} on n qubits.

    Args:
        method (str): One of METHODS
        V (Potential): Target potential
        n (int): Grid parameter
        delta (float): Precision target
        mode (str): 'analytic' or 'minimal'
        **kwargs: m_override (WAL), m1_override (LIU/mLIU), degree_set (PPPV)

    Returns:
        tuple: (Circuit, PiecewisePoly or None)
    """
    if method == 'WAL':
        return synth_wal(V, n, delta, m_override=kwargs.get('m_override'), mode=mode), None
    if method == 'LIU':
        return synth_liu(V, n, delta, kwargs.get('m1_override'), mode=mode), None
    if method == 'mLIU':
        return synth_mliu(V, n, delta, kwargs.get('m1_override'), mode=mode), None
    if method in ('PPP1', 'PPP2', 'PPP3', 'PPPV'):
        pp = fit_for_register(V, delta, n, method, kwargs.get('degree_set', (1, 2, 3)))
        return synth_ppp(pp, n, mode=mode), pp
    raise InvalidParameterError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")


__all__ = [
    'METHODS',
    'fit_for_register',
    'synthesize',
    'synth_comparator',
    'synth_liu',
    'synth_mliu',
    'synth_poly_phase',
    'synth_ppp',
    'synth_wal',
]
