"""
Tests for the potential model, its constructors and norm queries.
"""

import logging
import math

import numpy as np
import pytest

from diagphase.errors import InvalidParameterError
from diagphase.potential import (
    Potential,
    coulomb,
    coulomb_squared,
    damped_osc,
    from_csv,
    from_expression,
    make_builtin,
    polynomial,
)


def test_coulomb_peak(coulomb_potential):
    """Test that the modified Coulomb potential peaks at L/2 with 1/sqrt(a^2)."""
    assert coulomb_potential(10.0) == pytest.approx(1.0 / math.sqrt(0.5))
    assert coulomb_potential.sup_norm(0) == pytest.approx(1.0 / math.sqrt(0.5), rel=1e-9)


def test_coulomb_needs_softening():
    with pytest.raises(InvalidParameterError):
        coulomb(1.0, 0.0, 20.0)


def test_polynomial_derivatives():
    V = polynomial([1.0, 2.0, 3.0], 1.0)
    np.testing.assert_allclose(V.derivatives(0.5, 3), [2.75, 5.0, 6.0, 0.0])
    assert V.sup_norm(3) == 0.0


def test_damped_oscillator_value(damped_potential):
    x = 2.0
    assert damped_potential(x) == pytest.approx(math.exp(-0.01 * x * x) * math.cos(x))


def test_grid_values(coulomb_potential):
    values = coulomb_potential.grid_values(4)
    xs = np.arange(16) * 20.0 / 16
    assert values.shape == (16,)
    np.testing.assert_allclose(values, 1.0 / np.sqrt(0.5 + (xs - 10.0) ** 2))


def test_sample_with_endpoint(coulomb_potential):
    samples = coulomb_potential.sample(3, endpoint=True)
    assert len(samples) == 9
    assert samples[-1] == pytest.approx(coulomb_potential(20.0))


def test_periodicity(coulomb_potential, damped_potential):
    assert coulomb_potential.is_periodic()
    assert not damped_potential.is_periodic()
    forced = Potential(damped_potential.expr, damped_potential.L, periodic=True)
    assert forced.is_periodic()


def test_scaled(coulomb_potential):
    doubled = coulomb_potential.scaled(2.0)
    assert doubled(3.0) == pytest.approx(2.0 * coulomb_potential(3.0))
    assert doubled.sup_norm(2) == pytest.approx(2.0 * coulomb_potential.sup_norm(2))


def test_sup_norm_on_interval():
    V = polynomial([0.0, 0.0, 1.0], 4.0)
    assert V.sup_norm(0, (1.0, 2.0)) == pytest.approx(4.0)
    with pytest.raises(InvalidParameterError):
        V.sup_norm(0, (3.0, 5.0))


def test_cell_norms_shape_and_bound(coulomb_potential):
    norms = coulomb_potential.cell_norms(5)
    assert norms.shape == (5, 32)
    assert np.max(norms[2]) == pytest.approx(coulomb_potential.sup_norm(2), rel=1e-6)


def test_from_expression():
    V = from_expression("x*x", 4.0)
    assert V(1.5) == pytest.approx(2.25)
    assert V.L == 4.0


def test_from_csv(tmp_path, caplog):
    """Test tabulated potentials: linear interpolation, derivatives with a warning."""
    path = tmp_path / "samples.csv"
    path.write_text("x,V\n0,0\n1,1\n2,4\n3,9\n")
    V = from_csv(path)
    assert V.L == 3.0
    assert V(0.5) == pytest.approx(0.5)
    with caplog.at_level(logging.WARNING, logger='diagphase.potential'):
        V.derivatives(1.0, 1)
    assert "divided differences" in caplog.text


def test_tabulated_needs_increasing_abscissae():
    with pytest.raises(InvalidParameterError):
        Potential(([0.0, 2.0, 1.0], [0.0, 1.0, 2.0]), 2.0)


def test_coulomb_squared_clipping():
    V = coulomb_squared(1.0, 0.0, 4.0, clip_below=0.25)
    assert V(0.1) == pytest.approx(V(0.25))
    assert V(1.0) == pytest.approx(1.0)
    assert V.derivatives(0.1, 2)[1] == 0.0


def test_coulomb_squared_needs_clip():
    with pytest.raises(InvalidParameterError):
        coulomb_squared(1.0, 0.0, 4.0)


def test_make_builtin():
    V = make_builtin('damped_osc', 1.0, 0.1, 2.0, 5.0)
    assert V(0.0) == pytest.approx(1.0)
    with pytest.raises(InvalidParameterError):
        make_builtin('square_well', 1.0)


def test_domain_must_be_positive():
    with pytest.raises(InvalidParameterError):
        from_expression("x", 0.0)
