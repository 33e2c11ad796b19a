"""
Tests for the compilation coordinator.
"""

import json

import pytest

from diagphase.errors import InvalidParameterError
from diagphase.model import DiagonalPhaseModel


def _model(potential, **overrides):
    data = {'potential': potential, 'n': 6, 'delta': 1e-1, 'method': 'ppp'}
    data.update(overrides)
    return DiagonalPhaseModel(data)


@pytest.mark.parametrize("method, n", [('ppp', 6), ('wal', 5), ('liu', 8), ('pppv', 8)])
def test_verified_compilation(coulomb_potential, method, n):
    """Test that each method passes verification and builds its analytic counts."""
    model = _model(coulomb_potential, method=method, n=n)
    model.synthesize()
    result = model.verify()
    assert result['passed']
    counts = model.counts()
    for key in ('h', 'rz', 'cnot'):
        assert counts['analytic'][key] == counts['built'][key]


def test_ppp_spline_is_checked(coulomb_potential):
    model = _model(coulomb_potential).build()
    assert model.spline.m == 6
    result = model.verify()
    assert result['spline_error'] <= 1e-1


def test_register_smaller_than_lattice(coulomb_potential):
    """Test that the lattice is clamped to the register."""
    model = _model(coulomb_potential, n=4, delta=1e-2)
    model.synthesize()
    assert model.spline.m == 4
    assert model.verify()['passed']


def test_invalid_inputs(coulomb_potential):
    with pytest.raises(InvalidParameterError):
        _model(coulomb_potential, method='qrom')
    with pytest.raises(InvalidParameterError):
        _model(coulomb_potential, n=0)


def test_get_solution(coulomb_potential):
    solution = _model(coulomb_potential, method='wal', n=4).get_solution()
    assert solution['method'] == 'wal'
    assert solution['width'] == 4
    assert solution['spline'] is None
    assert solution['params']['m0'] == 8


def test_export_solution(coulomb_potential, tmp_path):
    model = _model(coulomb_potential, method='wal', n=4)
    qasm = tmp_path / 'circuit.qasm'
    model.export_solution(str(qasm))
    assert qasm.read_text().startswith('OPENQASM 2.0;')

    report = tmp_path / 'solution.json'
    model.export_solution(str(report))
    assert json.loads(report.read_text())['n'] == 4

    text = tmp_path / 'solution.txt'
    _model(coulomb_potential).export_solution(str(text))
    assert 'SPLINE PIECES' in text.read_text()


def test_print_solution_summary(coulomb_potential, capsys):
    model = _model(coulomb_potential)
    model.verify()
    model.print_solution_summary()
    out = capsys.readouterr().out
    assert 'COMPILATION SUMMARY' in out
    assert '--- GATE COUNTS ---' in out
    assert 'PASS' in out
