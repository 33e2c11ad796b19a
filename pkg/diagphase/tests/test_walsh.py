"""
Tests for the Walsh spectrum and WAL synthesis.
"""

import numpy as np
import pytest

from diagphase.circuit import Circuit, decomposed_counts
from diagphase.errors import InvalidParameterError
from diagphase.formulas import wal_counts
from diagphase.methods.walsh import (
    append_diagonal,
    fast_walsh_hadamard,
    synth_wal,
    walsh_spectrum,
)
from diagphase.potential import polynomial
from diagphase.simulator import phase_difference, simulate_phases


def test_spectrum_of_small_vector():
    spectrum = walsh_spectrum([1.0, 2.0, 3.0, 4.0])
    assert spectrum.m == 2
    np.testing.assert_allclose(spectrum.coeffs, [2.5, -0.5, -1.0, 0.0])
    np.testing.assert_allclose(spectrum.inverse(), [1.0, 2.0, 3.0, 4.0])


def test_transform_is_involutive_up_to_scale(rng):
    values = rng.normal(size=32)
    np.testing.assert_allclose(fast_walsh_hadamard(fast_walsh_hadamard(values)), 32 * values)


def test_length_must_be_power_of_two():
    with pytest.raises(InvalidParameterError):
        walsh_spectrum([1.0, 2.0, 3.0])


def test_append_diagonal_exact(rng):
    """Test that arbitrary phases are reproduced, global phase included."""
    phases = rng.uniform(-np.pi, np.pi, size=16)
    circuit = append_diagonal(Circuit(4, 4), [0, 1, 2, 3], phases)
    result = simulate_phases(circuit)
    assert np.max(np.abs(phase_difference(result.phases, phases))) < 1e-10


def test_controlled_diagonal(rng):
    """Test that a controlled diagonal is idle on control 0 and exact on control 1."""
    phases = rng.uniform(-1.0, 1.0, size=8)
    circuit = Circuit(4, 4)
    append_diagonal(circuit, [0, 1, 2], phases, control=3)
    result = simulate_phases(circuit)
    assert np.max(np.abs(result.phases[:8])) < 1e-10
    assert np.max(np.abs(phase_difference(result.phases[8:], phases))) < 1e-10


def test_wal_is_exact_on_full_register(coulomb_potential):
    circuit = synth_wal(coulomb_potential, 5, m_override=5)
    result = simulate_phases(circuit)
    target = -coulomb_potential.grid_values(5)
    assert np.max(np.abs(phase_difference(result.phases, target))) < 1e-10


def test_wal_coarse_grains_onto_top_qubits(coulomb_potential):
    """Test that every fine point takes the value of its left coarse knot."""
    n, m = 5, 3
    circuit = synth_wal(coulomb_potential, n, m_override=m)
    result = simulate_phases(circuit)
    coarse = coulomb_potential.sample(m)
    target = -coarse[np.arange(1 << n) >> (n - m)]
    assert np.max(np.abs(phase_difference(result.phases, target))) < 1e-10


def test_wal_precision(coulomb_potential):
    delta = 1e-1
    circuit = synth_wal(coulomb_potential, 8, delta)
    result = simulate_phases(circuit)
    error = phase_difference(result.phases, -coulomb_potential.grid_values(8))
    assert np.max(np.abs(error)) <= delta


def test_wal_counts_match_formula(coulomb_potential):
    for m in range(1, 6):
        counts = decomposed_counts(synth_wal(coulomb_potential, 6, m_override=m))
        expected = wal_counts(m)
        assert counts.rz == expected['rz']
        assert counts.cnot == expected['cnot']
        assert counts.h == 0


def test_minimal_mode_prunes_linear_phase():
    """Test that a linear potential needs only single-qubit phases."""
    V = polynomial([0.0, 1.0], 8.0)
    circuit = synth_wal(V, 3, m_override=3, mode='minimal')
    counts = decomposed_counts(circuit)
    assert counts.rz == 3
    assert counts.cnot == 0
    result = simulate_phases(circuit)
    assert np.max(np.abs(phase_difference(result.phases, -np.arange(8.0)))) < 1e-10


def test_wal_argument_checks(coulomb_potential):
    with pytest.raises(InvalidParameterError):
        synth_wal(coulomb_potential, 4)
    with pytest.raises(InvalidParameterError):
        synth_wal(coulomb_potential, 4, m_override=5)


def test_wal_is_exact_on_random_potentials(rng):
    """Test exactness on the full register for random cubics on random domains."""
    for _ in range(50):
        n = int(rng.integers(1, 9))
        V = polynomial(rng.uniform(-1.0, 1.0, size=4).tolist(), float(rng.uniform(0.5, 4.0)))
        result = simulate_phases(synth_wal(V, n, m_override=n))
        target = -V.grid_values(n)
        assert np.max(np.abs(phase_difference(result.phases, target))) < 1e-9
