"""
Shared fixtures for the diagphase tests.
"""

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from diagphase.potential import coulomb, damped_osc, polynomial  # noqa: E402


@pytest.fixture
def coulomb_potential():
    """Modified Coulomb potential used throughout the benchmark tables."""
    return coulomb(1.0, 0.5, 20.0)


@pytest.fixture
def damped_potential():
    return damped_osc(1.0, 0.01, 1.0, 10.0)


@pytest.fixture
def cubic_potential():
    """A cubic on [0, 2]: every degree-3 spline reproduces it exactly."""
    return polynomial([0.3, -0.2, 0.5, 0.1], 2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
