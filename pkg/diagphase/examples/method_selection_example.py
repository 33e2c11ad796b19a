"""
Method Selection Example - Picking and Verifying a Construction

For a fixed potential and precision this example asks, per register size,
which construction needs the fewest CNOTs, then compiles a few of them and
checks the circuit on every basis state.

SCENARIO:
- modified Coulomb potential on [0, 20]
- delta = 1e-2
- n from 4 to 24 qubits

EXPECTED BEHAVIOR:
- Walsh wins on small registers
- Beyond n = m0 the counts stop growing (only the top m0 qubits are touched)
- Every compiled circuit passes verification with error <= delta
"""

import os
import sys

# Add src directory to path to import diagphase
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(project_root, 'src'))

from diagphase import DiagonalPhaseModel
from diagphase.compare import select_method
from diagphase.potential import coulomb

DELTA = 1e-2


def main():
    print("=" * 80)
    print("METHOD SELECTION EXAMPLE")
    print("=" * 80)

    V = coulomb(1.0, 0.5, 20.0)

    print("\n[Step 1] Cheapest construction per register size...")
    print(f"\n{'n':>4}{'n_eff':>8}{'method':>10}{'CNOT':>12}{'ancilla':>10}")
    for n in (4, 6, 8, 10, 12, 16, 24):
        choice = select_method(V, n, DELTA)
        print(f"{n:>4}{choice.n_eff:>8}{choice.method:>10}{choice.counts.cnot:>12}"
              f"{choice.counts.ancilla:>10}")

    print("\n[Step 2] Compiling and verifying on n = 8...")
    for method in ('wal', 'liu', 'ppp', 'pppv'):
        model = DiagonalPhaseModel({'potential': V, 'n': 8, 'delta': DELTA,
                                    'method': method, 'degree': 2})
        model.synthesize()
        model.verify()
        model.print_solution_summary()

    print("\n" + "=" * 80)
    print("EXAMPLE COMPLETED")
    print("=" * 80)


if __name__ == "__main__":
    main()
