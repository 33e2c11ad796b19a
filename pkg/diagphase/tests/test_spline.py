"""
Tests for Hermite pieces, the fixed-degree and degree-varying partitions,
and error measurement.
"""

import numpy as np
import pytest

from diagphase.errors import InfeasibleError, InvalidParameterError
from diagphase.formulas import ppp_counts
from diagphase.potential import polynomial
from diagphase.spline import (
    PiecewisePoly,
    algorithm1,
    algorithm2,
    fit_hermite_piece,
    greedy_knots,
    piece_errors,
    piecewise_max_error,
    profile_frame,
    ratio_study,
)


@pytest.mark.parametrize("p, delta, m, pieces", [
    (1, 1e-1, 6, 12),
    (1, 1e-2, 7, 26),
    (2, 1e-3, 7, 30),
    (2, 1e-4, 8, 60),
    (3, 1e-6, 9, 94),
])
def test_benchmark_partitions(coulomb_potential, p, delta, m, pieces):
    """Test lattice and piece counts of the modified Coulomb benchmark."""
    pp = algorithm1(coulomb_potential, delta, p, refine=False)
    assert pp.m == m
    assert abs(pp.algorithmic_pieces - pieces) <= 2


def test_uniform_partition(coulomb_potential):
    pp = algorithm1(coulomb_potential, 1e-1, 1, merge=False)
    assert pp.m == 6
    assert pp.M_tilde == 64
    assert pp.knots == list(range(65))


@pytest.mark.parametrize("p, delta, ratio", [
    (1, 1e-4, 0.980),
    (1, 1e-6, 0.997),
    (2, 1e-6, 0.962),
])
def test_measured_error_is_close_to_delta(coulomb_potential, p, delta, ratio):
    """Test that the partitions are tight: the measured error sits just below delta."""
    pp = algorithm1(coulomb_potential, delta, p)
    measured = piecewise_max_error(pp, coulomb_potential) / delta
    assert measured <= 1.0
    assert measured == pytest.approx(ratio, rel=0.02)


def test_error_within_delta(coulomb_potential):
    for p, delta in ((1, 1e-2), (2, 1e-3), (3, 1e-5)):
        pp = algorithm1(coulomb_potential, delta, p)
        assert piecewise_max_error(pp, coulomb_potential) <= delta


def test_knots_are_lattice_points(coulomb_potential):
    pp = algorithm1(coulomb_potential, 1e-2, 2)
    assert pp.knots[0] == 0
    assert pp.knots[-1] == 2 ** pp.m
    assert all(a < b for a, b in zip(pp.knots, pp.knots[1:]))
    assert len(pp.degrees) == pp.M_tilde == len(pp.knots) - 1


def test_linear_potential_is_one_piece():
    """Test that a vanishing second derivative gives one exact linear piece."""
    V = polynomial([1.0, 2.0], 8.0)
    pp = algorithm1(V, 1e-6, 1)
    assert pp.m == 0
    assert pp.M_tilde == 1
    np.testing.assert_allclose(pp.pieces[0], [1.0, 2.0])


def test_hermite_cubic_reproduces_cubic(cubic_potential):
    coeffs = fit_hermite_piece(cubic_potential, 0.5, 1.5, 3)
    np.testing.assert_allclose(coeffs, [0.3, -0.2, 0.5, 0.1], atol=1e-12)


@pytest.mark.parametrize("side", ['left', 'right'])
def test_hermite_quadratic_matches_derivative(coulomb_potential, side):
    a, b = 9.0, 10.0
    coeffs = fit_hermite_piece(coulomb_potential, a, b, 2, side=side)
    q = np.polynomial.Polynomial(coeffs)
    assert q(a) == pytest.approx(coulomb_potential(a))
    assert q(b) == pytest.approx(coulomb_potential(b))
    x = a if side == 'left' else b
    assert q.deriv()(x) == pytest.approx(coulomb_potential.deriv(x, 1))


def test_hermite_piece_must_lie_in_domain(coulomb_potential):
    L = coulomb_potential.L
    fit_hermite_piece(coulomb_potential, L - 1.0, L, 2)
    for a, b in ((L - 1.0, L + 0.5), (-1.0, 1.0), (2.0, 2.0)):
        with pytest.raises(InvalidParameterError):
            fit_hermite_piece(coulomb_potential, a, b, 2)


def test_invalid_degree(coulomb_potential):
    with pytest.raises(InvalidParameterError):
        algorithm1(coulomb_potential, 1e-2, 4)
    with pytest.raises(InvalidParameterError):
        algorithm1(coulomb_potential, 1e-2, 2, kind='cubic_spline')


def test_cubic_spline_kind(coulomb_potential):
    pp = algorithm1(coulomb_potential, 1e-5, 3, kind='cubic_spline')
    assert pp.kind == 'cubic_spline'
    assert set(pp.degrees) == {3}
    assert piecewise_max_error(pp, coulomb_potential) < 1e-3


def test_lattice_override(coulomb_potential):
    pp = algorithm1(coulomb_potential, 1e-4, 2, m_override=5)
    assert pp.m == 5
    assert pp.knots[-1] == 32


def test_greedy_knots_uniform_norms():
    assert greedy_knots([1.0] * 8, 2, 1.0, 4.0, 1.0) == [0, 2, 4, 6, 8]


def test_evaluation_follows_pieces():
    pp = PiecewisePoly(m=1, L=2.0, knots=[0, 1, 2],
                       pieces=[np.array([0.0, 1.0]), np.array([2.0, -1.0])], degrees=[1, 1])
    np.testing.assert_allclose(pp(np.array([0.5, 1.0, 1.5])), [0.5, 1.0, 0.5])
    assert list(pp.piece_index([0.0, 0.99, 1.0, 2.0])) == [0, 0, 1, 1]


def test_piece_errors_zero_for_exact_fit(cubic_potential):
    pp = algorithm1(cubic_potential, 1e-6, 3)
    assert np.max(piece_errors(pp, cubic_potential)) < 1e-12


def test_degree_varying_benchmark(coulomb_potential):
    """Test that the cheapest degree-varying lattice at delta=0.1, n=19 is m=6."""
    pp = algorithm2(coulomb_potential, 1e-1, 19)
    assert pp.m == 6
    assert abs(pp.M_tilde - 12) <= 2
    assert pp.notes['objective'] == ppp_counts(19, pp.m, pp.degrees)['cnot']


@pytest.mark.parametrize("delta, pieces, cnot", [
    (1e-3, 70, 44790),
    (1e-4, 124, 121002),
])
def test_degree_varying_reference_counts(coulomb_potential, delta, pieces, cnot):
    """Test the cheapest degree-varying partitions at n = 19 and their CNOT counts."""
    pp = algorithm2(coulomb_potential, delta, 19, refine=False)
    assert pp.m == 8
    assert pp.M_tilde == pieces
    assert pp.notes['objective'] == cnot
    assert ppp_counts(19, pp.m, pp.degrees)['cnot'] == cnot


def test_degree_varying_respects_delta(coulomb_potential):
    pp = algorithm2(coulomb_potential, 1e-3, 10)
    assert set(pp.degrees) <= {1, 2, 3}
    assert piecewise_max_error(pp, coulomb_potential) <= 1e-3


def test_degree_varying_custom_objective(coulomb_potential):
    """Test that a piece-count objective never yields more pieces than the CNOT one."""
    by_cnot = algorithm2(coulomb_potential, 1e-3, 10, refine=False)
    by_pieces = algorithm2(coulomb_potential, 1e-3, 10, refine=False,
                           objective=lambda m, degrees, n: len(degrees))
    assert by_pieces.M_tilde <= by_cnot.M_tilde


def test_degree_varying_infeasible(coulomb_potential):
    with pytest.raises(InfeasibleError) as info:
        algorithm2(coulomb_potential, 1e-3, 4, degree_set=(1,), m_set=[1])
    assert info.value.cell[0] == 1


def test_degree_varying_lattice_range(coulomb_potential):
    with pytest.raises(InvalidParameterError):
        algorithm2(coulomb_potential, 1e-3, 4, m_set=[5])


def test_profile_frame(coulomb_potential):
    pp = algorithm1(coulomb_potential, 1e-2, 1)
    frame = profile_frame(pp, coulomb_potential, resolution=4)
    assert list(frame.columns) == ['x', 'V', 'pp', 'error']
    assert len(frame) == 4 * 2 ** pp.m
    assert frame['error'].abs().max() <= 1e-2


def test_ratio_study(coulomb_potential):
    frame = ratio_study(coulomb_potential, [1e-2, 1e-3], degrees=(1, 2))
    assert len(frame) == 4
    assert list(frame.columns) == ['delta', 'p', 'm', 'M_tilde', 'M_hat', 'ratio']
    assert (frame['ratio'] > 0).all()


@pytest.mark.parametrize("family, deltas", [
    ('coulomb_potential', [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6]),
    ('damped_potential', [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]),
])
def test_piece_count_ratio_law(request, family, deltas):
    """Test that merged piece counts stay within 7/3 of the integral bound and tighten."""
    V = request.getfixturevalue(family)
    frame = ratio_study(V, deltas)
    assert len(frame) == 3 * len(deltas)
    assert (frame['ratio'] >= 1.0).all()
    assert (frame['ratio'] <= 7 / 3).all()
    for _, rows in frame.groupby('p'):
        rows = rows.sort_values('delta', ascending=False)
        assert rows['ratio'].iloc[-1] <= rows['ratio'].iloc[0]
