"""
WAL Synthesis

Walsh-Hadamard spectrum of a phase vector and its realization as a
sequency-ordered Gray-code circuit of phase gates and CNOTs, coarse-grained
onto the top m qubits of the register.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..circuit import Circuit, parity_walk
from ..errors import InvalidParameterError
from ..parameters import m0_value

logger = logging.getLogger(__name__)


@dataclass
class WalshSpectrum:
    m: int
    coeffs: np.ndarray

    def inverse(self):
        """Values reconstructed from the coefficients."""
        return fast_walsh_hadamard(self.coeffs)


def fast_walsh_hadamard(values):
    """Unnormalized transform out[s] = sum_j (-1)^popcount(s & j) values[j]."""
    out = np.array(values, dtype=float)
    size = len(out)
    h = 1
    while h < size:
        view = out.reshape(-1, 2, h)
        a = view[:, 0].copy()
        view[:, 0] = a + view[:, 1]
        view[:, 1] = a - view[:, 1]
        h *= 2
    return out


def walsh_spectrum(values):
    """
    Walsh coefficients coeffs[s] = 2^-m sum_j (-1)^popcount(s & j) values[j].

    Args:
        values (array): Length 2^m

    Returns:
        WalshSpectrum
    """
    values = np.asarray(values, dtype=float)
    size = len(values)
    if size == 0 or size & (size - 1):
        raise InvalidParameterError(f"length {size} is not a power of two")
    m = size.bit_length() - 1
    return WalshSpectrum(m=m, coeffs=fast_walsh_hadamard(values) / size)


def append_diagonal(circuit, qubits, phases, control=None, keep_zero=True):
    """
    Append the diagonal sum_k e^{i phases[k]} |k><k| on ``qubits`` (LSB first).

    Writing phases[k] = sum_s w_s (-1)^{s.k} = sum_s w_s - 2 sum_{s>0} w_s parity_s(k),
    the constant part is a global phase (a phase on the control qubit when
    controlled, folded into the first controlled phase) and each s > 0
    contributes one phase gate of angle -2 w_s on the parity qubit.
    """
    spectrum = walsh_spectrum(phases)
    constant = float(np.sum(spectrum.coeffs))
    weights = -2.0 * spectrum.coeffs
    if control is None:
        circuit.global_phase(constant)
        if qubits:
            parity_walk(circuit, list(qubits), weights, keep_zero=keep_zero)
    elif qubits:
        parity_walk(circuit, list(qubits), weights, control=control,
                    keep_zero=keep_zero, first_control_angle=constant)
    else:
        circuit.phase(control, constant)
    return circuit


def synth_wal(V, n, delta=None, m_override=None, mode='analytic'):
    """
    WAL circuit for e^{-i V} on n qubits.

    The top m = min(m0, n) qubits carry the diagonal of the coarse samples
    u_k = V(k L / 2^m); lower qubits are untouched, so each fine point takes
    the value at the left coarse knot.

    Args:
        V (Potential): Target potential
        n (int): Grid parameter (system qubits)
        delta (float): Precision used for m0 (unless m_override is given)
        m_override (int): Explicit coarse qubit count
        mode (str): 'analytic' keeps zero-angle gates, 'minimal' prunes them

    Returns:
        Circuit
    """
    if n < 1:
        raise InvalidParameterError("WAL needs n >= 1")
    if m_override is None:
        if delta is None:
            raise InvalidParameterError("delta is required when m is not given")
        m = min(m0_value(V, delta), n)
    else:
        m = int(m_override)
        if not 0 <= m <= n:
            raise InvalidParameterError(f"m={m} outside 0..{n}")
    circuit = Circuit(n, n)
    phases = -V.sample(m)
    top = list(range(n - m, n))
    append_diagonal(circuit, top, phases, keep_zero=(mode == 'analytic'))
    logger.debug("WAL n=%d m=%d: %d gates", n, m, len(circuit))
    return circuit
