"""
LIU and mLIU Synthesis

Linear interpolation of a coarse diagonal: the top m1 qubits carry the
coarse samples u_k, and each lower (fine) qubit k'_p adds the fraction
k'_p / 2^j of the difference u_{k+1} - u_k, with j = n - m1 - p.

LIU realizes the controlled difference with two controlled increments
around the coarse diagonal scaled by 2^-j (the wrap u_M := u_0 makes it exact
for periodic potentials). mLIU applies the difference vector directly as a
controlled diagonal and uses u_M := V(L), so it also serves non-periodic
potentials.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..circuit import Circuit
from ..errors import InvalidParameterError
from ..parameters import m1_value
from .fourier import append_increment
from .walsh import append_diagonal, synth_wal

logger = logging.getLogger(__name__)


@dataclass
class LiuPlan:
    """
    Attributes:
        n (int): Fine qubits
        m1 (int): Coarse qubits
        u (ndarray): Coarse samples u_k = V(k L / 2^m1), plus u_M
        wrap (str): 'periodic' (u_M := u_0) or 'endpoint' (u_M := V(L))
    """
    n: int
    m1: int
    u: np.ndarray
    wrap: str

    def interpolated(self):
        """Classical interpolant v~_j = u_k + k'(u_{k+1} - u_k) / 2^(n - m1)."""
        j = np.arange(1 << self.n)
        shift = self.n - self.m1
        k = j >> shift
        frac = (j & ((1 << shift) - 1)) / float(1 << shift)
        return self.u[k] + frac * (self.u[k + 1] - self.u[k])


def plan_liu(V, n, delta=None, m1_override=None, wrap='periodic'):
    """Resolve m1 and the coarse samples for a (m)LIU synthesis."""
    if n < 2:
        raise InvalidParameterError("LIU needs n >= 2")
    if m1_override is None:
        if delta is None:
            raise InvalidParameterError("delta is required when m1 is not given")
        m1 = min(m1_value(V, delta), n)
    else:
        m1 = min(int(m1_override), n)
    if m1 <= 0:
        raise InvalidParameterError("LIU needs m1 >= 1")
    u = V.sample(m1)
    last = u[0] if wrap == 'periodic' else V(V.L)
    return LiuPlan(n=n, m1=m1, u=np.append(u, last), wrap=wrap)


def synth_liu(V, n, delta=None, m1_override=None, mode='analytic'):
    """
    LIU circuit (no ancilla).

    Per fine qubit p, in time order: U_M^(j)-dagger, controlled increment,
    U_M^(j), controlled decrement, where U_M^(j) is the coarse diagonal of V/2^j.
    The pair leaves a phase -(u_{k+1} - u_k)/2^j when the control is set.

    Returns:
        Circuit
    """
    plan = plan_liu(V, n, delta, m1_override, wrap='periodic')
    if plan.m1 >= n:
        logger.info("m1 >= n: LIU reduces to WAL")
        return synth_wal(V, n, m_override=n, mode=mode)
    keep_zero = mode == 'analytic'
    m1 = plan.m1
    coarse = plan.u[:-1]
    top = list(range(n - m1, n))
    circuit = Circuit(n, n)
    append_diagonal(circuit, top, -coarse, keep_zero=keep_zero)
    for p in range(n - m1):
        j = n - m1 - p
        scaled = coarse / float(1 << j)
        append_diagonal(circuit, top, scaled, keep_zero=keep_zero)
        append_increment(circuit, top, control=p)
        append_diagonal(circuit, top, -scaled, keep_zero=keep_zero)
        decrement = Circuit(n, n)
        append_increment(decrement, top, control=p)
        circuit.extend(decrement.inverse())
    return circuit


def synth_mliu(V, n, delta=None, m1_override=None, mode='analytic'):
    """
    mLIU circuit (no ancilla): each controlled W_j is a Walsh circuit on the
    coarse qubits with its phases promoted to controlled phases.

    Returns:
        Circuit
    """
    plan = plan_liu(V, n, delta, m1_override, wrap='endpoint')
    if plan.m1 >= n:
        logger.info("m1 >= n: mLIU reduces to WAL")
        return synth_wal(V, n, m_override=n, mode=mode)
    keep_zero = mode == 'analytic'
    m1 = plan.m1
    top = list(range(n - m1, n))
    circuit = Circuit(n, n)
    append_diagonal(circuit, top, -plan.u[:-1], keep_zero=keep_zero)
    differences = np.diff(plan.u)
    for p in range(n - m1):
        j = n - m1 - p
        append_diagonal(circuit, top, -differences / float(1 << j),
                        control=p, keep_zero=keep_zero)
    return circuit
