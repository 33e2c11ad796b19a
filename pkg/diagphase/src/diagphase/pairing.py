"""
Pairing Schedule

Partition of all particle pairs {(i, j): 1 <= i <= j <= N} into N rounds in
which no particle takes part twice, so every round of interaction terms can
run in parallel.

Indices are 1-based and reduced with the convention [N]_N = N.
"""

import json
from dataclasses import dataclass, field


@dataclass
class Schedule:
    """
    Attributes:
        N (int): Particle count
        sets (list): Rounds, each a list of (i, j) pairs
    """
    N: int
    sets: list = field(default_factory=list)

    @property
    def pair_count(self):
        return sum(len(s) for s in self.sets)

    def to_json(self):
        return json.dumps([[list(pair) for pair in s] for s in self.sets])

    @classmethod
    def from_json(cls, text, N=None):
        sets = [[tuple(pair) for pair in s] for s in json.loads(text)]
        if N is None:
            N = max((max(pair) for s in sets for pair in s), default=0)
        return cls(N=N, sets=sets)


@dataclass
class PairingCheck:
    cover_ok: bool
    disjoint_ok: bool
    no_reuse_ok: bool

    @property
    def all_ok(self):
        return self.cover_ok and self.disjoint_ok and self.no_reuse_ok


def _reduce(value, N):
    r = value % N
    return N if r == 0 else r


def _odd_sets(N):
    half = (N - 1) // 2
    return [[(_reduce(k - j, N), _reduce(k + j, N)) for j in range(half + 1)]
            for k in range(1, N + 1)]


def pairing_schedule(N):
    """
    Build the N-round schedule.

    Odd N: round k holds ([k - j]_N, [k + j]_N) for j = 0..(N-1)/2. Even N:
    round k < N is round k of the (N-1)-schedule with (k, k) replaced by
    (k, N); the last round holds every self pair.

    Args:
        N (int): Particle count (>= 1)

    Returns:
        Schedule
    """
    if N < 1:
        raise ValueError(f"pairing needs N >= 1, got {N}")
    if N % 2:
        return Schedule(N=N, sets=_odd_sets(N))
    sets = []
    for k, round_ in enumerate(_odd_sets(N - 1), start=1):
        sets.append([pair for pair in round_ if pair != (k, k)] + [(k, N)])
    sets.append([(k, k) for k in range(1, N + 1)])
    return Schedule(N=N, sets=sets)


def verify_pairing(schedule):
    """
    Check a schedule: every unordered pair covered, no pair in two places,
    and no particle used twice within a round.

    Returns:
        PairingCheck
    """
    N = schedule.N
    normalized = [tuple(sorted(pair)) for s in schedule.sets for pair in s]
    expected = {(i, j) for i in range(1, N + 1) for j in range(i, N + 1)}
    cover_ok = set(normalized) == expected
    disjoint_ok = len(normalized) == len(set(normalized))
    no_reuse_ok = True
    for s in schedule.sets:
        used = [q for pair in s for q in set(pair)]
        if len(used) != len(set(used)):
            no_reuse_ok = False
            break
    return PairingCheck(cover_ok=cover_ok, disjoint_ok=disjoint_ok, no_reuse_ok=no_reuse_ok)
