"""
Statevector Oracle

Applies a circuit to every system basis state |j>|0...0> at once (as the
columns of one state matrix) and reports whether the result is diagonal,
whether ancillas were restored, and the phase picked up by each |j>.

Diagonal gates and permutation gates (X, CNOT) are tracked lazily as a phase
vector and a row relabelling; only Hadamards touch the full matrix.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .config import get_setting
from .errors import SimulationWidthError

logger = logging.getLogger(__name__)

# Columns x rows processed per chunk
_CHUNK_ELEMENTS = 1 << 22


@dataclass
class SimulationResult:
    """
    Attributes:
        phases (ndarray): arg of <j|U|j> for each system basis state j
        diagonal (bool): Every input maps onto itself with unit modulus
        ancilla_clean (bool): Ancillas return to |0> on every input
        max_leakage (float): Largest amplitude found off the input index
    """
    phases: np.ndarray
    diagonal: bool
    ancilla_clean: bool
    max_leakage: float


class _LazyState:
    def __init__(self, width, columns):
        self.width = width
        dim = 1 << width
        self.index = np.arange(dim)
        self.state = np.zeros((dim, len(columns)), dtype=complex)
        self.state[columns, np.arange(len(columns))] = 1.0
        self.loc = np.arange(dim)
        self.permuted = False
        self.phase = np.zeros(dim)
        self.global_phase = 0.0

    def bits(self, q):
        return (self.index >> q) & 1

    def add_diagonal(self, logical_phase):
        self.phase[self.loc] += logical_phase

    def permute(self, mapping):
        # mapping is an involution on logical indices
        self.loc = self.loc[mapping]
        self.permuted = True

    def materialize(self):
        if np.any(self.phase):
            self.state *= np.exp(1j * self.phase)[:, None]
            self.phase[:] = 0.0
        if self.permuted:
            self.state = self.state[self.loc]
            self.loc = np.arange(1 << self.width)
            self.permuted = False

    def hadamard(self, q):
        self.materialize()
        dim, cols = self.state.shape
        view = self.state.reshape(dim >> (q + 1), 2, 1 << q, cols)
        a = view[:, 0].copy()
        b = view[:, 1]
        view[:, 0] = (a + b) / np.sqrt(2.0)
        view[:, 1] = (a - b) / np.sqrt(2.0)

    def finish(self):
        self.materialize()
        if self.global_phase:
            self.state *= np.exp(1j * self.global_phase)
        return self.state


def apply_gates(circuit, columns):
    """
    Run the circuit on the basis inputs given by ``columns``.

    Returns:
        ndarray: Output state matrix, shape (2^width, len(columns))
    """
    sim = _LazyState(circuit.width, np.asarray(columns, dtype=int))
    for gate in circuit.gates:
        kind = gate.kind
        if kind == 'gphase':
            sim.global_phase += gate.angle
        elif kind == 'p':
            sim.add_diagonal(gate.angle * sim.bits(gate.qubits[0]))
        elif kind == 'cp':
            c, t = gate.qubits
            bc = sim.bits(c)
            sim.add_diagonal(bc * (gate.control_angle + gate.angle * sim.bits(t)))
        elif kind == 'mcp':
            ones = np.ones_like(sim.index)
            for q in gate.qubits:
                ones = ones & sim.bits(q)
            sim.add_diagonal(gate.angle * ones)
        elif kind == 'x':
            sim.permute(sim.index ^ (1 << gate.qubits[0]))
        elif kind == 'cx':
            c, t = gate.qubits
            sim.permute(sim.index ^ (sim.bits(c) << t))
        elif kind == 'h':
            sim.hadamard(gate.qubits[0])
    return sim.finish()


def simulate_phases(circuit, max_width=None, tol=1e-9):
    """
    Phase oracle for a (supposedly) diagonal circuit.

    Args:
        circuit (Circuit): Circuit to check
        max_width (int): Width cap (defaults to the configured 14 qubits)
        tol (float): Modulus tolerance for the diagonal test

    Returns:
        SimulationResult
    """
    max_width = max_width or get_setting('max_simulation_width')
    if circuit.width > max_width:
        raise SimulationWidthError(
            f"circuit has {circuit.width} qubits; the oracle is capped at {max_width}"
        )
    n_inputs = 1 << circuit.n_sys
    chunk = max(1, _CHUNK_ELEMENTS >> circuit.width)
    phases = np.zeros(n_inputs)
    diagonal = True
    clean = True
    leakage = 0.0
    for start in range(0, n_inputs, chunk):
        columns = np.arange(start, min(n_inputs, start + chunk))
        out = apply_gates(circuit, columns)
        cols = np.arange(len(columns))
        amps = out[columns, cols]
        phases[columns] = np.angle(amps)
        moduli = np.abs(amps)
        if np.any(np.abs(moduli - 1.0) > tol):
            diagonal = False
        off = out.copy()
        off[columns, cols] = 0.0
        leak = float(np.max(np.abs(off))) if off.size else 0.0
        leakage = max(leakage, leak)
        if leak > 1e-6:
            diagonal = False
        system_mass = np.sum(np.abs(out[:n_inputs]) ** 2, axis=0)
        if np.any(system_mass < 1.0 - 1e-9):
            clean = False
    if not diagonal:
        logger.debug("circuit is not diagonal (max off-diagonal amplitude %.3g)", leakage)
    return SimulationResult(phases=phases, diagonal=diagonal, ancilla_clean=clean,
                            max_leakage=leakage)


def basis_output(circuit, j):
    """Output index and amplitude for the single basis input j."""
    out = apply_gates(circuit, [j])[:, 0]
    k = int(np.argmax(np.abs(out)))
    return k, out[k]


def phase_difference(phases, target):
    """Elementwise phases - target, wrapped into (-pi, pi]."""
    return np.angle(np.exp(1j * (np.asarray(phases) - np.asarray(target))))
