"""
Tests that synthesized circuits reproduce the closed-form counts on random
potentials, registers and lattices.
"""

from diagphase.circuit import decomposed_counts
from diagphase.formulas import liu_counts, mliu_counts, ppp_counts, wal_counts
from diagphase.methods.liu import synth_liu, synth_mliu
from diagphase.methods.ppp import synth_ppp
from diagphase.methods.walsh import synth_wal
from diagphase.potential import polynomial
from diagphase.spline import algorithm1

METHODS = ('WAL', 'LIU', 'mLIU', 'PPP1', 'PPP2')


def _build(method, V, n, m):
    if method == 'WAL':
        return synth_wal(V, n, m_override=m), wal_counts(m)
    if method == 'LIU':
        return synth_liu(V, n, m1_override=m), liu_counts(n, m)
    if method == 'mLIU':
        return synth_mliu(V, n, m1_override=m), mliu_counts(n, m)
    pp = algorithm1(V, 1e-2, int(method[-1]), m_override=m, refine=False)
    return synth_ppp(pp, n), ppp_counts(n, pp.m, pp.degrees)


def test_counts_on_random_configurations(rng):
    for _ in range(200):
        method = METHODS[int(rng.integers(len(METHODS)))]
        n = int(rng.integers(2, 7))
        m = int(rng.integers(1, n))
        V = polynomial(rng.uniform(-1.0, 1.0, size=4).tolist(), float(rng.uniform(0.5, 4.0)))
        circuit, expected = _build(method, V, n, m)
        counts = decomposed_counts(circuit, with_depth=False)
        assert (counts.h, counts.rz, counts.cnot) == \
            (expected['h'], expected['rz'], expected['cnot']), (method, n, m)
