"""
Tests for the pairing schedule and its round-minimization model.
"""

import pytest

from diagphase.pairing import Schedule, pairing_schedule, verify_pairing


def test_odd_schedule():
    schedule = pairing_schedule(3)
    assert schedule.sets == [[(1, 1), (3, 2)], [(2, 2), (1, 3)], [(3, 3), (2, 1)]]


def test_even_schedule():
    schedule = pairing_schedule(4)
    assert schedule.sets == [
        [(3, 2), (1, 4)],
        [(1, 3), (2, 4)],
        [(2, 1), (3, 4)],
        [(1, 1), (2, 2), (3, 3), (4, 4)],
    ]


def test_smallest_schedules():
    assert pairing_schedule(1).sets == [[(1, 1)]]
    assert pairing_schedule(2).sets == [[(1, 2)], [(1, 1), (2, 2)]]


@pytest.mark.parametrize("N", range(1, 65))
def test_schedule_is_valid(N):
    schedule = pairing_schedule(N)
    assert verify_pairing(schedule).all_ok
    assert len(schedule.sets) == N
    assert schedule.pair_count == N * (N + 1) // 2


def test_invalid_particle_count():
    with pytest.raises(ValueError):
        pairing_schedule(0)


def test_reuse_is_detected():
    schedule = Schedule(N=2, sets=[[(1, 1), (1, 2)], [(2, 2)]])
    check = verify_pairing(schedule)
    assert check.cover_ok and check.disjoint_ok
    assert not check.no_reuse_ok
    assert not check.all_ok


def test_missing_pair_is_detected():
    check = verify_pairing(Schedule(N=2, sets=[[(1, 2)], [(1, 1)]]))
    assert not check.cover_ok


def test_json_round_trip():
    schedule = pairing_schedule(5)
    restored = Schedule.from_json(schedule.to_json())
    assert restored.N == 5
    assert restored.sets == schedule.sets


@pytest.mark.parametrize("N, rounds", [(3, 3), (4, 4)])
def test_model_certifies_minimum(N, rounds):
    """Test that no schedule with fewer than N rounds exists."""
    pytest.importorskip('pyomo')
    pytest.importorskip('highspy')
    from diagphase.pairing_model import PairingScheduleModel

    model = PairingScheduleModel({'N': N})
    result = model.solve()
    assert result['objective_value'] == rounds
    schedule = model.get_solution()
    assert len(schedule.sets) == rounds
    assert verify_pairing(schedule).all_ok
