"""
PPP Synthesis

Piecewise-polynomial phase circuits. A polynomial phase e^{-i f(x_j)} with
x_j = j L / 2^n is expanded over the bits of j; since j_l^2 = j_l, every
product of bits collapses onto the set of distinct indices it touches and all
terms on the same set combine into one multi-controlled phase. Pieces are
switched on by a one-ancilla comparator on the top m qubits.
"""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from ..circuit import Circuit
from ..errors import InvalidParameterError
from .fourier import append_fourier_add, append_qft

logger = logging.getLogger(__name__)

MAX_PHASE_DEGREE = 3


@dataclass
class PolyPhaseSpec:
    """
    Combined angles of a polynomial phase gate.

    Attributes:
        n (int): Qubits of the register
        L (float): Domain length
        coeffs (ndarray): a_0..a_p in powers of physical x
        angles (dict): Sorted qubit-index tuple S -> accumulated angle theta_S
        global_phase (float): -a_0
    """
    n: int
    L: float
    coeffs: np.ndarray
    angles: dict = field(default_factory=dict)
    global_phase: float = 0.0

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def phase_of(self, j):
        """Sum of the angles switched on by basis index j (global phase included)."""
        total = self.global_phase
        for subset, theta in self.angles.items():
            if all((j >> q) & 1 for q in subset):
                total += theta
        return total


def _trim(coeffs, degree=None):
    coeffs = np.atleast_1d(np.asarray(coeffs, dtype=float))
    if degree is None:
        nonzero = np.flatnonzero(coeffs)
        degree = int(nonzero[-1]) if len(nonzero) else 0
    if np.any(coeffs[degree + 1:] != 0):
        raise InvalidParameterError(f"coefficients exceed the declared degree {degree}")
    if degree > MAX_PHASE_DEGREE:
        raise InvalidParameterError(
            f"polynomial phase gates are limited to degree {MAX_PHASE_DEGREE}, got {degree}")
    out = np.zeros(degree + 1)
    out[:min(len(coeffs), degree + 1)] = coeffs[:degree + 1]
    return out


def poly_phase_spec(coeffs, n, L, degree=None):
    """
    Expand f(x) = sum_k a_k x^k over the bits of j.

    a_k x_j^k = a_k (L/N)^k (sum_l j_l 2^l)^k; each index tuple (l_1..l_k)
    contributes a_k (L/N)^k 2^(l_1 + ... + l_k) to the set {l_1..l_k}.
    Every set of size 1..min(p, n) gets an entry (possibly zero).

    Returns:
        PolyPhaseSpec
    """
    if n < 1:
        raise InvalidParameterError("a polynomial phase gate needs n >= 1")
    coeffs = _trim(coeffs, degree)
    p = len(coeffs) - 1
    step = L / float(1 << n)
    angles = {}
    for k in range(1, min(p, n) + 1):
        for subset in itertools.combinations(range(n), k):
            angles[subset] = 0.0
    for k in range(1, p + 1):
        scale = coeffs[k] * step ** k
        if scale == 0:
            continue
        for indices in itertools.product(range(n), repeat=k):
            subset = tuple(sorted(set(indices)))
            angles[subset] -= scale * float(1 << sum(indices))
    return PolyPhaseSpec(n=n, L=L, coeffs=coeffs, angles=angles, global_phase=-coeffs[0])


def append_poly_phase(circuit, qubits, coeffs, L, control=None, degree=None,
                      keep_zero=True):
    """
    Append U_ph[f] on ``qubits`` (LSB first).

    With a control, every gate gains it as an extra control and the global
    phase becomes a phase gate on the control.
    """
    spec = poly_phase_spec(coeffs, len(qubits), L, degree)
    if control is None:
        if spec.global_phase or keep_zero:
            circuit.global_phase(spec.global_phase)
    elif spec.global_phase or keep_zero:
        circuit.phase(control, spec.global_phase)
    for subset, theta in spec.angles.items():
        if theta == 0 and not keep_zero:
            continue
        mapped = [qubits[q] for q in subset]
        controls = mapped[:-1] if control is None else [control] + mapped[:-1]
        circuit.mcphase(controls, mapped[-1], theta)
    return circuit


def synth_poly_phase(coeffs, n, L, control=False, degree=None, mode='analytic'):
    """
    Standalone polynomial phase circuit.

    Args:
        coeffs (sequence): a_0..a_p, p <= 3
        n (int): System qubits
        L (float): Domain length
        control (bool): Add a control ancilla at index n
        degree (int): Declared degree (defaults to the highest nonzero power)
        mode (str): 'analytic' keeps zero angles, 'minimal' drops them

    Returns:
        Circuit
    """
    width = n + 1 if control else n
    circuit = Circuit(width, n)
    return append_poly_phase(circuit, list(range(n)), coeffs, L,
                             control=n if control else None, degree=degree,
                             keep_zero=(mode == 'analytic'))


# ---------------------------------------------------------------------------
# Comparator
# ---------------------------------------------------------------------------

def append_comparator(circuit, qubits, flag, k):
    """
    |0>|j> -> |[j < k]>|j> for the m-qubit register ``qubits``.

    The flag is the most significant bit of an (m+1)-qubit register: subtract
    k there (the borrow lands on the flag), then add k back on the low m
    qubits. 4m + 2 H, 2m + 1 phases and 2m^2 controlled phases.
    """
    qubits = list(qubits)
    m = len(qubits)
    if not 1 <= k <= (1 << m) - 1:
        raise InvalidParameterError(f"comparator threshold {k} outside 1..{(1 << m) - 1}")
    register = qubits + [flag]
    append_qft(circuit, register)
    append_fourier_add(circuit, register, -k)
    append_qft(circuit, register, inverse=True)
    append_qft(circuit, qubits)
    append_fourier_add(circuit, qubits, k)
    append_qft(circuit, qubits, inverse=True)
    return circuit


def synth_comparator(k, m):
    """Comparator on qubits 0..m-1 with the flag ancilla at index m."""
    if m < 1:
        raise InvalidParameterError("a comparator needs m >= 1")
    circuit = Circuit(m + 1, m)
    return append_comparator(circuit, range(m), m, k)


# ---------------------------------------------------------------------------
# Piecewise assembly
# ---------------------------------------------------------------------------

def _difference(current, previous):
    size = max(len(current), len(previous))
    out = np.zeros(size)
    out[:len(current)] += current
    out[:len(previous)] -= previous
    return out


def synth_ppp(pp, n, mode='analytic'):
    """
    PPP circuit for e^{-i pp(x_j)} on n system qubits plus one ancilla (index n).

    U_ph[f_0] first; then for each further knot k_l: comparator on the top m
    qubits, X on the flag, the difference f_l - f_(l-1) controlled by the flag
    (so it fires for j >= knot), X, and the inverse comparator.

    Args:
        pp (PiecewisePoly): Spline with pp.m <= n
        n (int): System qubits
        mode (str): 'analytic' or 'minimal'

    Returns:
        Circuit
    """
    if pp.m > n:
        raise InvalidParameterError(f"knot lattice m={pp.m} exceeds n={n}")
    cells = 1 << pp.m
    for k in pp.knots[1:-1]:
        if not 0 < k < cells:
            raise InvalidParameterError(f"knot {k} is not representable on {pp.m} qubits")
    keep_zero = mode == 'analytic'
    system = list(range(n))
    top = list(range(n - pp.m, n))
    ancilla = n
    circuit = Circuit(n + 1, n)
    append_poly_phase(circuit, system, pp.pieces[0], pp.L, degree=pp.degrees[0],
                      keep_zero=keep_zero)
    for ell in range(1, pp.M_tilde):
        comparator = Circuit(n + 1, n)
        append_comparator(comparator, top, ancilla, int(pp.knots[ell]))
        circuit.extend(comparator)
        circuit.x(ancilla)
        append_poly_phase(circuit, system, _difference(pp.pieces[ell], pp.pieces[ell - 1]),
                          pp.L, control=ancilla,
                          degree=max(pp.degrees[ell], pp.degrees[ell - 1]),
                          keep_zero=keep_zero)
        circuit.x(ancilla)
        circuit.extend(comparator.inverse())
    logger.debug("PPP n=%d m=%d M~=%d: %d gates", n, pp.m, pp.M_tilde, len(circuit))
    return circuit


def telescoped_values(pp, n):
    """
    Classical check of the assembly: f_0 plus every difference whose knot is
    at or below j, evaluated at each grid point.
    """
    xs = np.arange(1 << n) * pp.L / float(1 << n)
    shift = n - pp.m
    top = np.arange(1 << n) >> shift
    total = np.polynomial.polynomial.polyval(xs, pp.pieces[0])
    for ell in range(1, pp.M_tilde):
        diff = _difference(pp.pieces[ell], pp.pieces[ell - 1])
        total = total + np.where(top >= pp.knots[ell],
                                 np.polynomial.polynomial.polyval(xs, diff), 0.0)
    return total
