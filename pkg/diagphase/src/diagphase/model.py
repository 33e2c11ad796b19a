"""
Main Model Module

This module provides the DiagonalPhaseModel class that coordinates a
compilation: potential, grid parameter, precision and method in; coarse
parameters, spline, circuit, verification and counts out.
"""

import json
import logging

import numpy as np

from .circuit import circuit_to_qasm, decomposed_counts
from .compare import analytic_counts
from .errors import InvalidParameterError
from .methods import synth_liu, synth_mliu, synth_ppp, synth_wal
from .parameters import coarse_params, degree_m
from .simulator import phase_difference, simulate_phases
from .spline import algorithm1, algorithm2, piecewise_max_error

logger = logging.getLogger(__name__)

MODEL_METHODS = ('wal', 'liu', 'mliu', 'ppp', 'pppv')


class DiagonalPhaseModel:
    """
    Coordinator for one diagonal-unitary compilation.

    This class ties the components together:
    - Coarse-graining parameters (m0, m1, m_p)
    - Spline fit (PPP methods)
    - Circuit synthesis
    - Statevector verification
    - Analytic versus as-built gate counts
    """

    def __init__(self, data):
        """
        Initialize the model with input data.

        Args:
            data (dict): Dictionary containing the compilation inputs
                Required keys:
                - potential: Potential to compile
                - n: Grid parameter (system qubits)
                - delta: Precision target
                Optional keys:
                - method: wal, liu, mliu, ppp or pppv (default ppp)
                - degree: PPP degree (default 1)
                - merge: Merge lattice cells in Algorithm 1 (default True)
                - mode: analytic or minimal (default analytic)
                - degree_set: Degrees allowed for pppv
        """
        self.data = data
        self.V = data['potential']
        self.n = int(data['n'])
        self.delta = float(data['delta'])
        self.method = data.get('method', 'ppp').lower()
        self.degree = int(data.get('degree', 1))
        self.merge = bool(data.get('merge', True))
        self.mode = data.get('mode', 'analytic')
        if self.method not in MODEL_METHODS:
            raise InvalidParameterError(
                f"unknown method {self.method!r}; expected one of {', '.join(MODEL_METHODS)}")
        if self.n < 1:
            raise InvalidParameterError("n must be at least 1")

        self.params = None
        self.spline = None
        self.circuit = None
        self.verification = None

    def build(self):
        """Coarse parameters, plus the spline for the PPP methods."""
        self.params = coarse_params(self.V, self.delta)
        if self.method == 'ppp':
            m = degree_m(self.V, self.delta, self.degree)
            override = self.n if m > self.n else None
            self.spline = algorithm1(self.V, self.delta, self.degree, merge=self.merge,
                                     m_override=override)
        elif self.method == 'pppv':
            self.spline = algorithm2(self.V, self.delta, self.n,
                                     degree_set=self.data.get('degree_set', (1, 2, 3)))
        return self

    def synthesize(self):
        if self.params is None:
            self.build()
        V, n, mode = self.V, self.n, self.mode
        if self.method == 'wal':
            self.circuit = synth_wal(V, n, m_override=min(self.params.m0, n), mode=mode)
        elif self.method == 'liu':
            self.circuit = synth_liu(V, n, m1_override=self.params.m1, mode=mode)
        elif self.method == 'mliu':
            self.circuit = synth_mliu(V, n, m1_override=self.params.m1, mode=mode)
        else:
            self.circuit = synth_ppp(self.spline, n, mode=mode)
        logger.info("%s circuit: %d qubits, %d gates", self.method, self.circuit.width,
                    len(self.circuit))
        return self.circuit

    def verify(self, max_width=None):
        """
        Simulate the circuit on every basis state and compare with e^{-i V(x_j)}.

        Returns:
            dict: max_error, diagonal, ancilla_clean, passed
        """
        if self.circuit is None:
            self.synthesize()
        result = simulate_phases(self.circuit, max_width=max_width)
        error = phase_difference(result.phases, -self.V.grid_values(self.n))
        max_error = float(np.max(np.abs(error)))
        self.verification = {
            'max_error': max_error,
            'diagonal': result.diagonal,
            'ancilla_clean': result.ancilla_clean,
            'passed': bool(result.diagonal and result.ancilla_clean
                           and max_error <= self.delta * (1 + 1e-9)),
        }
        if self.spline is not None:
            self.verification['spline_error'] = piecewise_max_error(self.spline, self.V)
        return self.verification

    def _analytic(self):
        n = self.n
        if self.method == 'wal':
            return analytic_counts('WAL', n, {'m': min(self.params.m0, n)})
        if self.method in ('liu', 'mliu'):
            if self.params.m1 >= n:
                return analytic_counts('WAL', n, {'m': n})
            return analytic_counts('LIU' if self.method == 'liu' else 'mLIU', n,
                                   {'m': self.params.m1})
        if len(set(self.spline.degrees)) == 1:
            return analytic_counts(f"PPP{self.spline.degrees[0]}", n,
                                   {'m': self.spline.m, 'M_tilde': self.spline.M_tilde})
        return analytic_counts('PPPV', n, {'m': self.spline.m, 'degrees': self.spline.degrees})

    def counts(self):
        """
        Analytic and as-built counts side by side.

        Returns:
            dict: 'analytic' and 'built' records with h, rz, cnot and depth
        """
        if self.circuit is None:
            self.synthesize()
        analytic = self._analytic()
        built = decomposed_counts(self.circuit)
        return {
            'analytic': {'h': analytic.h, 'rz': analytic.rz, 'cnot': analytic.cnot,
                         'depth': analytic.depth_bound},
            'built': {'h': built.h, 'rz': built.rz, 'cnot': built.cnot, 'depth': built.depth},
        }

    def get_solution(self):
        """
        Collect the results of the compilation.

        Returns:
            dict: method, n, delta, coarse parameters, spline, counts and
            verification (when run)
        """
        if self.circuit is None:
            self.synthesize()
        return {
            'method': self.method,
            'potential': self.V.name,
            'n': self.n,
            'delta': self.delta,
            'params': self.params.to_dict(),
            'spline': self.spline.to_dict() if self.spline is not None else None,
            'width': self.circuit.width,
            'counts': self.counts(),
            'verification': self.verification,
        }

    def print_solution_summary(self):
        solution = self.get_solution()

        print("\n" + "=" * 80)
        print("COMPILATION SUMMARY")
        print("=" * 80)
        print(f"Potential: {solution['potential']} | n = {self.n} | delta = {self.delta:g} | "
              f"method = {self.method}")

        print("\n--- COARSE PARAMETERS ---")
        params = solution['params']
        print(f"m0 = {params['m0']} | m1 = {params['m1']} | "
              + " | ".join(f"m_{p} = {m}" for p, m in params['m_p'].items()))

        if self.spline is not None:
            print("\n--- SPLINE ---")
            print(f"m = {self.spline.m} | pieces = {self.spline.M_tilde} "
                  f"(algorithmic {self.spline.algorithmic_pieces})")

        print("\n--- GATE COUNTS ---")
        for label, record in solution['counts'].items():
            print(f"{label:>8}: H {record['h']:8d} | Rz {record['rz']:8d} | "
                  f"CNOT {record['cnot']:8d} | depth {record['depth']:8d}")

        if self.verification is not None:
            print("\n--- VERIFICATION ---")
            status = "PASS" if self.verification['passed'] else "FAIL"
            print(f"{status}: max phase error {self.verification['max_error']:.3e} | "
                  f"ancilla clean: {self.verification['ancilla_clean']}")

        print("\n" + "=" * 80)

    def export_solution(self, filename='solution.json'):
        """
        Export the result: .qasm writes the circuit, .json the solution
        dictionary, anything else a text report.

        Args:
            filename (str): Output filename
        """
        if filename.endswith('.qasm'):
            with open(filename, 'w') as f:
                f.write(circuit_to_qasm(self.circuit or self.synthesize()))
        elif filename.endswith('.json'):
            with open(filename, 'w') as f:
                json.dump(self.get_solution(), f, indent=1, default=str)
        else:
            solution = self.get_solution()
            with open(filename, 'w') as f:
                f.write("=" * 80 + "\n")
                f.write("DIAGONAL PHASE COMPILATION - DETAILED SOLUTION\n")
                f.write("=" * 80 + "\n\n")
                f.write(f"Potential: {solution['potential']}\n")
                f.write(f"n = {self.n}, delta = {self.delta:g}, method = {self.method}\n\n")
                f.write("GATE COUNTS\n")
                f.write("-" * 80 + "\n")
                for label, record in solution['counts'].items():
                    f.write(f"{label}: " + ", ".join(f"{k}={v}" for k, v in record.items()) + "\n")
                if self.spline is not None:
                    f.write("\n\nSPLINE PIECES\n")
                    f.write("-" * 80 + "\n")
                    for k0, k1, p in zip(self.spline.knots, self.spline.knots[1:],
                                         self.spline.degrees):
                        f.write(f"[{k0:6d}, {k1:6d})  degree {p}\n")
        print(f"\nSolution exported to {filename}")
