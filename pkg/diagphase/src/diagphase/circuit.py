"""
Circuit Intermediate Representation

Sequential gate lists over ``n_sys`` system qubits plus optional ancillas,
together with the services built on them: decomposition-convention gate
counting, ASAP depth on the {H, Rz, CNOT} base set, and JSON / OpenQASM 2.0
export. Qubit 0 is the least significant bit of the basis index.

Gate kinds:
- ``gphase``  global phase e^{i theta}
- ``h``       Hadamard
- ``x``       Pauli-X
- ``p``       phase diag(1, e^{i theta})
- ``cx``      CNOT (control, target)
- ``cp``      controlled phase (control, target); an optional control_angle
              alpha makes it diag(1, 1, e^{i alpha}, e^{i (alpha + theta)})
- ``mcp``     multi-controlled phase (controls..., target)
"""

import json
import logging
import math
from collections import Counter
from dataclasses import dataclass, field

from .errors import InvalidParameterError, UnsupportedGateError

logger = logging.getLogger(__name__)

GATE_KINDS = ('gphase', 'h', 'x', 'p', 'cx', 'cp', 'mcp')
DIAGONAL_KINDS = ('gphase', 'p', 'cp', 'mcp')

# Decomposition conventions for k-controlled phases (k = 1, 2, 3)
CONTROLLED_RZ = {1: 3, 2: 7, 3: 15}
CONTROLLED_CNOT = {1: 2, 2: 8, 3: 20}


def wrap_angle(theta):
    """Map an angle into (-pi, pi]."""
    wrapped = math.remainder(theta, 2 * math.pi)
    if wrapped == -math.pi:
        wrapped = math.pi
    return wrapped


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple = ()
    angle: float = 0.0
    control_angle: float = 0.0

    @property
    def controls(self):
        if self.kind in ('cx', 'cp', 'mcp'):
            return self.qubits[:-1]
        return ()

    @property
    def target(self):
        return self.qubits[-1] if self.qubits else None

    def inverse(self):
        if self.kind in ('h', 'x', 'cx'):
            return self
        return Gate(self.kind, self.qubits, -self.angle, -self.control_angle)

    def to_dict(self):
        record = {'kind': self.kind, 'qubits': list(self.qubits), 'angle': self.angle}
        if self.control_angle:
            record['control_angle'] = self.control_angle
        return record


@dataclass
class Circuit:
    """
    Ordered gate list.

    Attributes:
        width (int): Total qubit count
        n_sys (int): System qubits (the low-order indices)
        gates (list): Gate sequence in time order
    """
    width: int
    n_sys: int
    gates: list = field(default_factory=list)

    def __post_init__(self):
        if self.n_sys < 0 or self.width < self.n_sys:
            raise InvalidParameterError(f"invalid circuit shape width={self.width}, n_sys={self.n_sys}")

    @property
    def ancilla_count(self):
        return self.width - self.n_sys

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    # -- builders -------------------------------------------------------

    def append(self, gate):
        if gate.kind not in GATE_KINDS:
            raise UnsupportedGateError(f"unknown gate kind {gate.kind!r}")
        qubits = gate.qubits
        if len(set(qubits)) != len(qubits) or any(q < 0 or q >= self.width for q in qubits):
            raise InvalidParameterError(f"bad qubits {qubits} for width {self.width}")
        self.gates.append(gate)
        return self

    def global_phase(self, theta):
        return self.append(Gate('gphase', (), wrap_angle(theta)))

    def h(self, q):
        return self.append(Gate('h', (q,)))

    def x(self, q):
        return self.append(Gate('x', (q,)))

    def phase(self, q, theta):
        return self.append(Gate('p', (q,), wrap_angle(theta)))

    def cnot(self, c, t):
        return self.append(Gate('cx', (c, t)))

    def cphase(self, c, t, theta, control_angle=0.0):
        return self.append(Gate('cp', (c, t), wrap_angle(theta), wrap_angle(control_angle)))

    def mcphase(self, controls, t, theta):
        """Phase theta on the all-ones state of controls + [t]."""
        controls = tuple(controls)
        if not controls:
            return self.phase(t, theta)
        if len(controls) == 1:
            return self.cphase(controls[0], t, theta)
        return self.append(Gate('mcp', controls + (t,), wrap_angle(theta)))

    def extend(self, other, qubit_map=None):
        """Append another circuit's gates, optionally relabelling its qubits."""
        gates = other.gates if isinstance(other, Circuit) else other
        for gate in gates:
            if qubit_map is not None:
                gate = Gate(gate.kind, tuple(qubit_map[q] for q in gate.qubits),
                            gate.angle, gate.control_angle)
            self.append(gate)
        return self

    def inverse(self):
        return Circuit(self.width, self.n_sys, [g.inverse() for g in reversed(self.gates)])

    def copy(self):
        return Circuit(self.width, self.n_sys, list(self.gates))


# ---------------------------------------------------------------------------
# Gray-code parity walk
# ---------------------------------------------------------------------------

def parity_walk(circuit, qubits, weights, control=None, keep_zero=True,
                first_control_angle=0.0):
    """
    Emit the diagonal sum_s weights[s] * parity_s(j) over the given qubits.

    For each target position t the lower bits walk a Gray code so that the
    parity of s = 2^t | g accumulates on qubits[t] with one CNOT per step,
    followed by one restoring CNOT. Without pruning this gives exactly
    2^K - 1 phase gates and 2^K - 2 CNOTs on K qubits.

    Args:
        circuit (Circuit): Circuit to append to
        qubits (list): Local qubit order (bit t of s refers to qubits[t])
        weights (sequence): Angle per subset mask s (entry 0 ignored)
        control (int): If given, phases become controlled phases on this qubit
        keep_zero (bool): Keep zero-angle phases (analytic-count mode)
        first_control_angle (float): Control-side phase folded into the first
            controlled phase emitted (requires control)
    """
    pending_control = first_control_angle
    start = len(circuit.gates)
    for t in range(len(qubits)):
        target = qubits[t]
        previous = 0
        for i in range(1 << t):
            gray = i ^ (i >> 1)
            if i:
                flipped = (previous ^ gray).bit_length() - 1
                circuit.cnot(qubits[flipped], target)
            previous = gray
            theta = weights[(1 << t) | gray]
            if theta == 0 and not keep_zero and not pending_control:
                continue
            if control is None:
                circuit.phase(target, theta)
            else:
                circuit.cphase(control, target, theta, pending_control)
                pending_control = 0.0
        if t:
            circuit.cnot(qubits[t - 1], target)
    if pending_control:
        circuit.phase(control, pending_control)
    if not keep_zero:
        circuit.gates[start:] = cancel_cnot_runs(circuit.gates[start:])


def cancel_cnot_runs(gates):
    """
    Remove CNOTs that cancel inside runs of consecutive CNOTs sharing a
    target (such CNOTs commute, so only controls with odd multiplicity remain).
    """
    out = []
    i = 0
    while i < len(gates):
        gate = gates[i]
        if gate.kind != 'cx':
            out.append(gate)
            i += 1
            continue
        target = gate.target
        run = Counter()
        order = []
        while i < len(gates) and gates[i].kind == 'cx' and gates[i].target == target:
            c = gates[i].qubits[0]
            if c not in run:
                order.append(c)
            run[c] += 1
            i += 1
        out.extend(Gate('cx', (c, target)) for c in order if run[c] % 2)
    return out


# ---------------------------------------------------------------------------
# Decomposition, counting and depth
# ---------------------------------------------------------------------------

def decompose(gate):
    """
    Rewrite a gate over the base set {h, x, p, cx}.

    Controlled phases with k controls use the Gray-code construction on the
    k + 1 involved qubits; global phases decompose to nothing.
    """
    if gate.kind in ('h', 'x', 'p', 'cx'):
        return [gate]
    if gate.kind == 'gphase':
        return []
    if gate.kind == 'cp':
        c, t = gate.qubits
        half = gate.angle / 2
        return [
            Gate('p', (c,), half + gate.control_angle),
            Gate('cx', (c, t)),
            Gate('p', (t,), -half),
            Gate('cx', (c, t)),
            Gate('p', (t,), half),
        ]
    if gate.kind == 'mcp':
        k = len(gate.qubits) - 1
        if k > 3:
            raise UnsupportedGateError(f"{k}-controlled phase has no base-set decomposition here")
        size = k + 1
        scale = gate.angle / (1 << k)
        weights = [0.0] + [
            scale if bin(s).count('1') % 2 else -scale for s in range(1, 1 << size)
        ]
        scratch = Circuit(max(gate.qubits) + 1, max(gate.qubits) + 1)
        parity_walk(scratch, list(gate.qubits), weights)
        return scratch.gates
    raise UnsupportedGateError(f"cannot decompose {gate.kind!r}")


@dataclass
class GateCounts:
    """
    Gate tallies.

    Attributes:
        raw (dict): Per-kind counts (multi-controlled phases keyed mcp<k>)
        h, rz, cnot (int): Decomposed {H, Rz, CNOT} view
        depth (int): ASAP depth on the base set
        undecomposed (int): Gates beyond the counting conventions (k > 3)
    """
    raw: dict
    h: int
    rz: int
    cnot: int
    depth: int = 0
    undecomposed: int = 0

    def to_dict(self):
        return {'raw': dict(self.raw), 'h': self.h, 'rz': self.rz, 'cnot': self.cnot,
                'depth': self.depth, 'undecomposed': self.undecomposed}


def raw_counts(circuit):
    """Per-kind tallies, with multi-controlled phases split by control count."""
    tally = Counter()
    for gate in circuit.gates:
        if gate.kind == 'mcp':
            tally[f"mcp{len(gate.qubits) - 1}"] += 1
        else:
            tally[gate.kind] += 1
    return dict(tally)


def decomposed_counts(circuit, with_depth=True):
    """
    Gate counts under the decomposition conventions: a controlled phase is
    3 Rz + 2 CNOT, 2- and 3-controlled phases are 7/15 Rz and 8/20 CNOT.
    Global phases and X gates do not enter the decomposed view.
    """
    raw = raw_counts(circuit)
    h = raw.get('h', 0)
    rz = raw.get('p', 0) + CONTROLLED_RZ[1] * raw.get('cp', 0)
    cnot = raw.get('cx', 0) + CONTROLLED_CNOT[1] * raw.get('cp', 0)
    undecomposed = 0
    for key, count in raw.items():
        if key.startswith('mcp'):
            k = int(key[3:])
            if k in CONTROLLED_CNOT:
                rz += CONTROLLED_RZ[k] * count
                cnot += CONTROLLED_CNOT[k] * count
            else:
                undecomposed += count
    depth = circuit_depth(circuit) if with_depth and not undecomposed else 0
    return GateCounts(raw=raw, h=h, rz=rz, cnot=cnot, depth=depth, undecomposed=undecomposed)


def circuit_depth(circuit):
    """ASAP layer count after decomposing onto the base set."""
    ready = [0] * circuit.width
    depth = 0
    for gate in circuit.gates:
        for base in decompose(gate):
            level = max(ready[q] for q in base.qubits) + 1
            for q in base.qubits:
                ready[q] = level
            depth = max(depth, level)
    return depth


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------

def circuit_to_json(circuit):
    payload = {
        'width': circuit.width,
        'n_sys': circuit.n_sys,
        'gates': [g.to_dict() for g in circuit.gates],
    }
    return json.dumps(payload, indent=1)


def circuit_from_json(text):
    payload = json.loads(text)
    circuit = Circuit(payload['width'], payload['n_sys'])
    for record in payload['gates']:
        circuit.append(Gate(record['kind'], tuple(record['qubits']),
                            float(record.get('angle', 0.0)),
                            float(record.get('control_angle', 0.0))))
    return circuit


def circuit_to_qasm(circuit):
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f'qreg q[{circuit.width}];']
    global_phase = 0.0
    for gate in circuit.gates:
        if gate.kind == 'gphase':
            global_phase += gate.angle
            continue
        for base in decompose(gate):
            if base.kind == 'h':
                lines.append(f'h q[{base.qubits[0]}];')
            elif base.kind == 'x':
                lines.append(f'x q[{base.qubits[0]}];')
            elif base.kind == 'p':
                # p(theta) = exp(i theta / 2) rz(theta)
                global_phase += base.angle / 2
                lines.append(f'rz({base.angle!r}) q[{base.qubits[0]}];')
            else:
                lines.append(f'cx q[{base.qubits[0]}],q[{base.qubits[1]}];')
    if global_phase:
        lines.insert(3, f'// global phase {wrap_angle(global_phase)!r}')
    return '\n'.join(lines) + '\n'


def export_circuit(circuit, fmt='json'):
    """
    Serialize a circuit.

    Args:
        circuit (Circuit): Circuit to export
        fmt (str): 'json' (lossless) or 'qasm2' (decomposed base set)

    Returns:
        bytes: Encoded circuit
    """
    if fmt == 'json':
        return circuit_to_json(circuit).encode('utf-8')
    if fmt in ('qasm', 'qasm2'):
        return circuit_to_qasm(circuit).encode('utf-8')
    raise UnsupportedGateError(f"unknown export format {fmt!r}")


def import_circuit(data):
    """Inverse of export_circuit for the JSON format."""
    if isinstance(data, bytes):
        data = data.decode('utf-8')
    return circuit_from_json(data)
