"""
Diagonal Unitary Compiler Package

This package compiles diagonal unitaries e^{-i V} on a uniform grid into
circuits over {H, Rz, CNOT} and estimates their resources.

Main components:
- expr, potential: the function V and its derivative norms
- parameters, spline: coarse-graining parameters and piecewise polynomials
- circuit, simulator: gate IR, counting, export and the statevector oracle
- methods: WAL, LIU, mLIU and PPP synthesis
- compare: analytic counts, crossover analysis, method selection, sweeps
- hamsim, pairing: Hamiltonian-simulation resource estimates
- model: DiagonalPhaseModel that ties everything together
"""

__version__ = '1.0.0'

from .model import DiagonalPhaseModel
from .potential import Potential, coulomb, damped_osc, polynomial

__all__ = ['DiagonalPhaseModel', 'Potential', 'coulomb', 'damped_osc', 'polynomial']
