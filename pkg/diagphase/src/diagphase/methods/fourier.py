"""
Fourier-Space Building Blocks

QFT without the final swaps, and constant addition as phase gates applied to
the Fourier-transformed register. With the swaps omitted, register qubit i
ends up carrying the phase e^{2 pi i x 2^(m-1-i) / 2^m}, so adding a constant a
is the phase pi * a / 2^i on qubit i.
"""

import math

from ..circuit import Circuit, Gate


def qft_gates(qubits):
    """Swap-free QFT on ``qubits`` (LSB first): m H and m(m-1)/2 controlled phases."""
    gates = []
    m = len(qubits)
    for i in reversed(range(m)):
        gates.append(Gate('h', (qubits[i],)))
        for j in reversed(range(i)):
            gates.append(Gate('cp', (qubits[j], qubits[i]), math.pi / (1 << (i - j))))
    return gates


def append_qft(circuit, qubits, inverse=False):
    gates = qft_gates(list(qubits))
    if inverse:
        gates = [g.inverse() for g in reversed(gates)]
    return circuit.extend(gates)


def append_fourier_add(circuit, qubits, amount, control=None):
    """Add ``amount`` (mod 2^m) to a register that is currently in Fourier space."""
    for i, q in enumerate(qubits):
        theta = math.pi * amount / (1 << i)
        if control is None:
            circuit.phase(q, theta)
        else:
            circuit.cphase(control, q, theta)
    return circuit


def append_increment(circuit, qubits, control=None, amount=1):
    """
    |k> -> |k + amount mod 2^m> via QFT, Fourier-space addition and inverse QFT.

    Only the addition phases carry the control, so the controlled version
    costs 2m H and m^2 controlled phases and acts as the identity when the
    control is 0.
    """
    append_qft(circuit, qubits)
    append_fourier_add(circuit, qubits, amount, control)
    append_qft(circuit, qubits, inverse=True)
    return circuit


def qft_circuit(m):
    """Standalone swap-free QFT on m qubits."""
    circuit = Circuit(m, m)
    return append_qft(circuit, list(range(m)))


def synth_controlled_increment(m, controlled=True):
    """
    Increment circuit on an m-qubit register (qubits 0..m-1).

    Args:
        m (int): Register size (>= 1)
        controlled (bool): Add a control qubit at index m

    Returns:
        Circuit
    """
    width = m + 1 if controlled else m
    circuit = Circuit(width, width)
    return append_increment(circuit, list(range(m)), control=m if controlled else None)
