"""
Tests for the coarse-graining parameters.
"""

import logging

import pytest

from diagphase.errors import InvalidParameterError
from diagphase.parameters import (
    ceil_tol,
    coarse_params,
    degree_m,
    m0_value,
    m1_value,
    mhat_value,
)
from diagphase.potential import polynomial


@pytest.mark.parametrize("p, delta, expected", [
    (1, 1e-1, 6),
    (1, 1e-2, 7),
    (2, 1e-3, 7),
    (2, 1e-4, 8),
    (3, 1e-6, 9),
])
def test_degree_m_benchmark(coulomb_potential, p, delta, expected):
    """Test the lattice exponents of the modified Coulomb benchmark."""
    assert degree_m(coulomb_potential, delta, p) == expected


def test_m0_and_m1(coulomb_potential):
    assert m0_value(coulomb_potential, 1e-1) == 8
    assert m0_value(coulomb_potential, 1e-3) == 14
    assert m1_value(coulomb_potential, 1e-3) == 9


def test_vanishing_norm_gives_zero():
    V = polynomial([1.0, 2.0], 8.0)
    assert degree_m(V, 1e-6, 1) == 0
    assert m0_value(polynomial([3.0], 8.0), 1e-6) == 0


def test_negative_formula_is_clamped(caplog):
    V = polynomial([0.0, 1e-6], 1.0)
    with caplog.at_level(logging.WARNING, logger='diagphase.parameters'):
        assert m0_value(V, 1.0) == 0
    assert any(r.levelno == logging.WARNING and 'clamping to 0' in r.getMessage()
               for r in caplog.records)


def test_invalid_inputs(coulomb_potential):
    with pytest.raises(InvalidParameterError):
        degree_m(coulomb_potential, 0.0, 1)
    with pytest.raises(InvalidParameterError):
        degree_m(coulomb_potential, 1e-3, 4)


def test_mhat_is_a_lower_bound(coulomb_potential):
    """Test that M_hat never exceeds the lattice size and is positive."""
    for p in (1, 2, 3):
        m = degree_m(coulomb_potential, 1e-3, p)
        m_hat = mhat_value(coulomb_potential, 1e-3, p, m)
        assert 1 <= m_hat <= 2 ** m


def test_coarse_params(coulomb_potential):
    params = coarse_params(coulomb_potential, 1e-3)
    assert params.m0 == 14
    assert params.m1 == params.m_p[1] == 9
    assert params.m_p[2] == 7
    assert set(params.Mhat_p) == {1, 2, 3}
    data = params.to_dict()
    assert data['m_p'][2] == 7


def test_ceil_tol():
    assert ceil_tol(3.0 + 1e-12) == 3
    assert ceil_tol(3.1) == 4
    assert ceil_tol(-0.5) == 0
