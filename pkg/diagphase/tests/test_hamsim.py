"""
Tests for the Hamiltonian simulation resource estimator.
"""

import json

import pytest

from diagphase.errors import InvalidParameterError
from diagphase.hamsim import (
    VARIANTS,
    SystemConfig,
    distance_width,
    estimate_all_variants,
    format_estimate_table,
    hamsim_estimate,
    kinetic_cost,
    qubit_budget,
    trotter_params,
)


def _small_config(**overrides):
    data = {'Ne': 2, 'Nnuc': 1, 'd': 1, 'n': 3, 'L': 1.0, 't': 1.0, 'eps': 1e-2}
    data.update(overrides)
    return SystemConfig.from_dict(data)


def test_trotter_params():
    params = trotter_params(10.0, 1e-2, 1.0, 2, 1)
    assert params['K'] == 448
    assert params['delta_interaction'] == pytest.approx(1e-2 / 60)


def test_trotter_params_need_positive_inputs():
    with pytest.raises(InvalidParameterError):
        trotter_params(0.0, 1e-2, 1.0, 2, 1)


def test_distance_width():
    assert distance_width(8, 3) == 18
    assert distance_width(8, 1) == 16


def test_qubit_budget():
    assert qubit_budget('qft_sequential', 2, 3, 8) == (19, 67)
    assert qubit_budget('arith_sequential', 2, 3, 8) == (54, 102)
    with pytest.raises(InvalidParameterError):
        qubit_budget('serial', 2, 3, 8)


def test_kinetic_cost():
    assert kinetic_cost(3)['gates'] == 54


def test_invalid_config():
    with pytest.raises(InvalidParameterError):
        _small_config(Ne=0)
    with pytest.raises(InvalidParameterError):
        _small_config(eps=0.0)
    with pytest.raises(InvalidParameterError):
        _small_config(variant='serial')


def test_small_estimate():
    estimate = hamsim_estimate(_small_config())
    assert estimate.K == 15
    assert estimate.n_dis == 6
    assert estimate.gate_total == estimate.potential_gates + estimate.kinetic_gates
    assert estimate.terms['electron_electron']['n_eff'] <= 6


def test_parallel_variant_is_shallower():
    """Test that pairing cuts depth without changing the gate total."""
    sequential = hamsim_estimate(_small_config())
    parallel = hamsim_estimate(_small_config(variant='qft_parallel'))
    assert parallel.depth_total < sequential.depth_total
    assert parallel.gate_total == sequential.gate_total


def test_estimate_table():
    estimates = estimate_all_variants(_small_config())
    assert [e.variant for e in estimates] == list(VARIANTS)
    text = format_estimate_table(estimates)
    assert 'Gate count' in text
    for variant in VARIANTS:
        assert variant in text


def test_config_from_file(tmp_path):
    path = tmp_path / 'system.json'
    path.write_text(json.dumps({'system': {'Ne': 2, 'Nnuc': 1, 'd': 3, 'n': 8, 'eps': 1e-2,
                                           't': 10.0}}))
    cfg = SystemConfig.from_file(path)
    assert (cfg.Ne, cfg.d, cfg.n, cfg.N_tot) == (2, 3, 8, 3)
    assert cfg.variant == 'qft_sequential'


def _closed_form_budget(variant, Ne, d, n):
    lg = (d - 1).bit_length()
    tri = d * (d + 1) // 2
    forms = {
        'qft_sequential': (2 * n + 1 + lg, (d * Ne + 2) * n + 1 + lg),
        'arith_sequential': (2 * d * n + tri, (Ne + 2) * d * n + tri),
        'qft_parallel': (Ne * (2 * n + 1 + lg), Ne * ((d + 2) * n + 1 + lg)),
        'arith_parallel': (Ne * (2 * d * n + tri), Ne * (3 * d * n + tri)),
    }
    return forms[variant]


def test_qubit_budget_on_random_systems(rng):
    for _ in range(20):
        Ne, d, n = int(rng.integers(1, 9)), int(rng.integers(1, 5)), int(rng.integers(1, 17))
        for variant in VARIANTS:
            assert qubit_budget(variant, Ne, d, n) == _closed_form_budget(variant, Ne, d, n)
        assert qubit_budget('qft_parallel', Ne, d, n)[1] >= qubit_budget('qft_sequential', Ne, d, n)[1]
        assert qubit_budget('arith_parallel', Ne, d, n)[1] >= qubit_budget('arith_sequential', Ne, d, n)[1]


def test_parallel_variant_needs_more_qubits():
    sequential = hamsim_estimate(_small_config(d=2, n=4))
    parallel = hamsim_estimate(_small_config(d=2, n=4, variant='qft_parallel'))
    assert (sequential.total_qubits, parallel.total_qubits) == (26, 36)
    assert parallel.total_qubits >= sequential.total_qubits
    assert parallel.depth_total < sequential.depth_total


def test_error_budget_is_split_in_halves(rng):
    """Test that Trotter error and interaction error each take about eps / 2."""
    for _ in range(20):
        t, eps = float(rng.uniform(0.5, 20.0)), float(10 ** rng.uniform(-4, -1))
        C = float(rng.uniform(0.5, 2.0))
        Ne, Nnuc = int(rng.integers(1, 6)), int(rng.integers(1, 4))
        params = trotter_params(t, eps, C, Ne, Nnuc)
        K, delta = params['K'], params['delta_interaction']
        assert C * t ** 3 / K ** 2 <= eps / 2 * (1 + 1e-9)
        if K > 1:
            assert C * t ** 3 / (K - 1) ** 2 > eps / 2
        # two half-step potential layers and K - 1 merged full-step layers
        potential_time = 2 * t / (2 * K) + (K - 1) * t / K
        pairs = Ne * Nnuc + Ne * (Ne - 1) // 2
        assert potential_time * delta * pairs == pytest.approx(eps / 2)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_gate_total_scaling_in_eps(p):
    """Test that halving eps multiplies the gate total by about 2^(1/2 + 1/(p+1))."""
    totals = [hamsim_estimate(_small_config(d=2, n=4, p=p, eps=1e-2 / 2 ** k)).gate_total
              for k in range(4)]
    growth = (totals[-1] / totals[0]) ** (1 / 3)
    target = 2 ** (0.5 + 1 / (p + 1))
    assert 0.8 * target <= growth <= 1.25 * target
