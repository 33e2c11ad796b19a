"""
Count Objective Module

The objective minimized by the degree-varying spline search: a weighted sum
of the decomposed gate counts of the resulting PPP circuit. The default
weights reduce it to the CNOT count.
"""

from .formulas import ppp_counts


class CountObjective:
    """
    Weighted gate-count objective for a candidate partition.

    This class keeps the objective terms in one place so the weights can be
    adjusted without touching the search:
    - CNOT term (default weight 1)
    - Rz term
    - Hadamard term
    - depth-bound term
    """

    def __init__(self, data=None):
        """
        Initialize objective weights.

        Args:
            data (dict): Optional; reads 'objective_weights' with keys
                cnot, rz, h, depth
        """
        data = data or {}
        self.weights = data.get('objective_weights', {
            'cnot': 1.0,
            'rz': 0.0,
            'h': 0.0,
            'depth': 0.0,
        })

    def __call__(self, m, degrees, n):
        """
        Evaluate the objective for a partition.

        Args:
            m (int): Knot lattice exponent
            degrees (list): Per-piece polynomial degrees
            n (int): Grid parameter of the target register

        Returns:
            float: Weighted count (lower is better)
        """
        counts = ppp_counts(n, m, degrees)
        return (
            self.weights.get('cnot', 0.0) * counts['cnot'] +
            self.weights.get('rz', 0.0) * counts['rz'] +
            self.weights.get('h', 0.0) * counts['h'] +
            self.weights.get('depth', 0.0) * counts['depth_bound']
        )


def cnot_objective(m, degrees, n):
    """Decomposed CNOT count of the PPP circuit for a partition."""
    return ppp_counts(n, m, degrees)['cnot']
