"""
Tests for the statevector phase oracle.
"""

import numpy as np
import pytest

from diagphase.circuit import Circuit
from diagphase.errors import SimulationWidthError
from diagphase.simulator import basis_output, phase_difference, simulate_phases


def test_single_phase():
    result = simulate_phases(Circuit(1, 1).phase(0, 0.5))
    assert result.diagonal and result.ancilla_clean
    np.testing.assert_allclose(result.phases, [0.0, 0.5])


def test_global_phase():
    result = simulate_phases(Circuit(2, 2).global_phase(-0.3))
    np.testing.assert_allclose(result.phases, [-0.3] * 4)


def test_hadamard_pair_is_identity():
    result = simulate_phases(Circuit(2, 2).h(1).h(1))
    assert result.diagonal
    np.testing.assert_allclose(result.phases, 0.0, atol=1e-12)


def test_hadamard_is_not_diagonal():
    result = simulate_phases(Circuit(1, 1).h(0))
    assert not result.diagonal
    assert result.max_leakage == pytest.approx(1 / np.sqrt(2))


def test_dirty_ancilla():
    result = simulate_phases(Circuit(2, 1).x(1))
    assert not result.ancilla_clean
    assert not result.diagonal


def test_permutation_tracking():
    """Test that X/CNOT relabellings and phases compose in time order."""
    circuit = Circuit(2, 2).x(0).phase(0, 0.4).x(0).cnot(0, 1).phase(1, 0.2).cnot(0, 1)
    result = simulate_phases(circuit)
    assert result.diagonal
    # phase(0) fires when bit 0 was 0; phase(1) fires when bit0 xor bit1 is 1
    expected = [0.4, 0.2, 0.4 + 0.2, 0.0]
    assert np.max(np.abs(phase_difference(result.phases, expected))) < 1e-12


def test_width_cap():
    with pytest.raises(SimulationWidthError):
        simulate_phases(Circuit(5, 5), max_width=4)


def test_basis_output():
    index, amplitude = basis_output(Circuit(2, 2).x(0), 0)
    assert index == 1
    assert amplitude == pytest.approx(1.0)


def test_phase_difference_wraps():
    assert phase_difference([np.pi], [-np.pi])[0] == pytest.approx(0.0, abs=1e-12)
    assert phase_difference([3.0], [-3.0])[0] == pytest.approx(6.0 - 2 * np.pi)
