"""
Coarse-Graining Parameters

This module turns a potential and a precision target into the integers every
method is sized by: m0 (piecewise-constant / WAL), m1 (linear interpolation),
m_p (degree-p splines) and the integral lower bound M_hat_p on the number of
spline pieces.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from .errors import InvalidParameterError

logger = logging.getLogger(__name__)


# Sharp two-point Hermite constants per degree: error <= C_p h^(p+1) ||V^(p+1)||
HERMITE_CONSTANTS = {1: 1.0 / 8.0, 2: 2.0 / 81.0, 3: 1.0 / 384.0}

# Clamped cubic spline (table reproduction only)
CUBIC_SPLINE_CONSTANT = 5.0 / 384.0


def ceil_tol(value, tol=1e-9):
    """Ceiling that ignores floating noise just above an integer."""
    return int(math.ceil(value - tol * max(1.0, abs(value))))


@dataclass
class CoarseParams:
    """
    Coarse-graining parameters of a potential at precision delta.

    Attributes:
        m0 (int): Qubits needed by a piecewise-constant approximation
        m1 (int): Qubits needed by a piecewise-linear approximation
        m_p (dict): Lattice exponent per spline degree p in {1, 2, 3}
        Mhat_p (dict): Lower bound on the number of pieces per degree
    """
    delta: float
    m0: int
    m1: int
    m_p: dict = field(default_factory=dict)
    Mhat_p: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'delta': self.delta,
            'm0': self.m0,
            'm1': self.m1,
            'm_p': dict(self.m_p),
            'Mhat_p': dict(self.Mhat_p),
        }


def _check_delta(delta):
    if not delta > 0:
        raise InvalidParameterError(f"precision delta must be positive, got {delta}")


def _clamped_log2_ceil(value, label):
    if value <= 0:
        return 0
    result = ceil_tol(math.log2(value), 1e-12)
    if result < 0:
        logger.warning("%s formula is negative (%d); clamping to 0", label, result)
        return 0
    return result


def m0_value(V, delta):
    """m0 = ceil(log2(L ||V'|| / delta)), clamped to >= 0."""
    _check_delta(delta)
    norm = V.sup_norm(1)
    if norm == 0:
        return 0
    return _clamped_log2_ceil(V.L * norm / delta, 'm0')


def degree_m(V, delta, p, constant=None):
    """
    Lattice exponent for a degree-p spline.

    m_p = ceil(log2(L (C_p ||V^(p+1)|| / delta)^(1/(p+1)))), clamped to >= 0;
    a vanishing derivative norm gives 0.
    """
    _check_delta(delta)
    if p not in HERMITE_CONSTANTS:
        raise InvalidParameterError(f"spline degree must be 1, 2 or 3, got {p}")
    c = HERMITE_CONSTANTS[p] if constant is None else constant
    norm = V.sup_norm(p + 1)
    if norm == 0:
        return 0
    return _clamped_log2_ceil(V.L * (c * norm / delta) ** (1.0 / (p + 1)), f"m_{p}")


def m1_value(V, delta):
    """m1 = ceil(log2(L sqrt(||V''|| / (8 delta))))."""
    return degree_m(V, delta, 1)


def mhat_value(V, delta, p, m=None, constant=None):
    """
    Integral lower bound on the number of degree-p pieces:
    ceil(int_0^L (C_p |V^(p+1)(x)| / delta)^(1/(p+1)) dx).
    """
    _check_delta(delta)
    c = HERMITE_CONSTANTS[p] if constant is None else constant
    if m is None:
        m = degree_m(V, delta, p, constant)
    panels = max((1 << m) * V.resolution, 4096)
    xs = np.linspace(0.0, V.L, panels + 1)
    integrand = (c * np.abs(V.derivatives(xs, p + 1)[p + 1]) / delta) ** (1.0 / (p + 1))
    integral = float(trapezoid(np.nan_to_num(integrand), xs))
    if integral == 0:
        return 1
    return max(1, ceil_tol(integral))


def coarse_params(V, delta, degrees=(1, 2, 3)):
    """
    Compute m0, m1, m_p and M_hat_p for a potential.

    Args:
        V (Potential): Target function
        delta (float): Precision target
        degrees (tuple): Spline degrees to evaluate

    Returns:
        CoarseParams
    """
    _check_delta(delta)
    params = CoarseParams(delta=delta, m0=m0_value(V, delta), m1=0)
    for p in degrees:
        m = degree_m(V, delta, p)
        params.m_p[p] = m
        params.Mhat_p[p] = 1 if m == 0 else mhat_value(V, delta, p, m)
    params.m1 = params.m_p[1] if 1 in params.m_p else m1_value(V, delta)
    logger.debug("coarse params for %s at delta=%g: %s", V.name, delta, params)
    return params
