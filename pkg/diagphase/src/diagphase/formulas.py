"""
Closed-Form Gate Counts

Pure arithmetic for the decomposed {H, Rz, CNOT} counts and depth bounds of
each construction. Every function returns a dict with keys h, rz, cnot and
depth_bound. These are the counts the synthesized circuits reproduce exactly
under the decomposition conventions of the circuit module.
"""

from math import comb

from .errors import InvalidParameterError


def _record(h, rz, cnot, depth_bound):
    return {'h': int(h), 'rz': int(rz), 'cnot': int(cnot), 'depth_bound': int(depth_bound)}


def wal_counts(m):
    """Walsh circuit on m qubits: 2^m - 1 Rz, 2^m - 2 CNOT, depth 2^m."""
    if m == 0:
        return _record(0, 0, 0, 0)
    return _record(0, (1 << m) - 1, (1 << m) - 2, 1 << m)


def liu_counts(n, m):
    if not 1 <= m <= n:
        raise InvalidParameterError(f"LIU needs 1 <= m <= n (m={m}, n={n})")
    fine = n - m
    return _record(
        4 * m * fine,
        2 * ((1 << m) + 3 * m * m - 1) * fine + (1 << m) - 1,
        2 * ((1 << m) + 2 * m * m - 2) * fine + (1 << m) - 2,
        2 * ((1 << m) + 16 * m - 16) * fine + (1 << m),
    )


def mliu_counts(n, m):
    if not 1 <= m <= n:
        raise InvalidParameterError(f"mLIU needs 1 <= m <= n (m={m}, n={n})")
    fine = n - m
    return _record(
        0,
        (3 * (1 << m) - 3) * fine + (1 << m) - 1,
        (3 * (1 << m) - 4) * fine + (1 << m) - 2,
        2 * ((1 << (m + 1)) + 16 * m) * fine + (1 << (m + 1)),
    )


def comparator_counts(m):
    """One comparator: 4m + 2 H, 2m + 1 phases and 2m^2 controlled phases."""
    return _record(4 * m + 2, 2 * m + 1 + 6 * m * m, 4 * m * m, 0)


def poly_phase_counts(n, p, controlled=False):
    """
    Polynomial phase gate of degree p on n qubits: C(n, k) gates with k - 1
    controls for k = 1..p, one more control each when controlled (the global
    phase then becomes one extra phase gate on the control).
    """
    if p > 3:
        raise InvalidParameterError("polynomial phase gates are limited to degree 3")
    c1, c2, c3 = n, comb(n, 2) if p >= 2 else 0, comb(n, 3) if p >= 3 else 0
    if p < 1:
        c1 = 0
    if controlled:
        rz = 1 + 3 * c1 + 7 * c2 + 15 * c3
        cnot = 2 * c1 + 8 * c2 + 20 * c3
    else:
        rz = c1 + 3 * c2 + 7 * c3
        cnot = 2 * c2 + 8 * c3
    return _record(0, rz, cnot, 0)


def ppp_counts(n, m, degrees):
    """
    Piecewise-polynomial phase circuit with the given per-piece degrees:
    one uncontrolled polynomial phase gate, then per further piece two
    comparators and a controlled difference polynomial of degree
    max(p_l, p_{l-1}).

    Args:
        n (int): Grid parameter
        m (int): Knot lattice exponent
        degrees (list): Degree of each piece (length M~)

    Returns:
        dict: h, rz, cnot, depth_bound
    """
    degrees = list(degrees)
    if not degrees:
        raise InvalidParameterError("at least one piece is required")
    if m > n:
        raise InvalidParameterError(f"knot lattice m={m} exceeds n={n}")
    first = poly_phase_counts(n, degrees[0])
    h, rz, cnot = first['h'], first['rz'], first['cnot']
    comp = comparator_counts(m)
    for previous, current in zip(degrees, degrees[1:]):
        diff = poly_phase_counts(n, max(previous, current), controlled=True)
        h += 2 * comp['h']
        rz += 2 * comp['rz'] + diff['rz']
        cnot += 2 * comp['cnot'] + diff['cnot']
    pieces = len(degrees)
    uniform = len(set(degrees)) == 1
    if uniform and degrees[0] == 1:
        depth = 1 + (4 * n + 64 * m - 32) * (pieces - 1)
    elif uniform and degrees[0] == 2:
        depth = (pieces - 1) * (6 * n * n + 2 * n + 64 * m - 32) + 4 * n
    else:
        # no layered bound available: every gate in its own layer
        depth = h + rz + cnot
    return _record(h, rz, cnot, depth)


def ppp_uniform_counts(n, m, pieces, p):
    return ppp_counts(n, m, [p] * pieces)


def qft_counts(n):
    """Swap-free QFT: n H and n(n-1)/2 controlled phases."""
    pairs = n * (n - 1) // 2
    return _record(n, 3 * pairs, 2 * pairs, 2 * n - 1 if n else 0)
