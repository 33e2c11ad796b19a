"""
Hamiltonian Simulation Example - Resource Estimates per Variant

Estimates gates, depth and qubits for real-time evolution of a small
molecule in first quantization, with every Coulomb interaction compiled as
a PPP circuit on a squared-distance register.

SCENARIO (configurable below):
- 2 electrons, 1 nucleus, 3 dimensions
- 8 qubits per dimension on a unit cell
- t = 10, total error 1e-2

The parallel variants group interaction terms by the pairing schedule, so
they trade ancilla qubits for depth.
"""

import os
import sys

# Add src directory to path to import diagphase
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(project_root, 'src'))

from diagphase.hamsim import SystemConfig, estimate_all_variants, format_estimate_table

# ============================================================================
# CONFIG
# ============================================================================
CONFIG = {
    'Ne': 2,
    'Nnuc': 1,
    'd': 3,
    'n': 8,
    'L': 1.0,
    't': 10.0,
    'eps': 1e-2,
    'p': 2,
}


def main():
    print("=" * 80)
    print("HAMILTONIAN SIMULATION RESOURCE EXAMPLE")
    print("=" * 80)

    cfg = SystemConfig.from_dict(CONFIG)
    print(f"\nElectrons: {cfg.Ne} | Nuclei: {cfg.Nnuc} | d = {cfg.d} | n = {cfg.n}")
    print(f"t = {cfg.t:g} | eps = {cfg.eps:g} | PPP degree {cfg.p}")

    estimates = estimate_all_variants(cfg)
    first = estimates[0]
    print(f"\nTrotter steps K = {first.K}")
    print(f"Per-interaction precision = {first.delta_interaction:.4e}")
    print(f"Distance register = {first.n_dis} qubits\n")
    print(format_estimate_table(estimates))

    print("\n--- INTERACTION TERMS ---")
    for label, term in first.terms.items():
        print(f"{label:>18}: n_eff = {term['n_eff']:3d} | m = {term['m']:3d} | "
              f"pieces = {term['M_tilde']:4d} | CNOT = {term['cnot']}")


if __name__ == "__main__":
    main()
