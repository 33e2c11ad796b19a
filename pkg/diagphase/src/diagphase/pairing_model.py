"""
Pairing Optimality Model

Mixed-integer model that assigns every particle pair to a round so that no
particle is used twice in a round, minimizing the number of rounds. For small
N it certifies that the N-round schedule is the shortest possible.
"""

import logging

import pyomo.environ as pyo
from pyomo.opt import SolverFactory

from .errors import SolverUnavailableError
from .pairing import Schedule

logger = logging.getLogger(__name__)


class PairingScheduleModel:
    """
    Round-minimization model for the pairing schedule.

    This class coordinates the model components:
    - Sets (pairs, rounds, particles)
    - Variables (pair-to-round assignment, round usage)
    - Constraints (cover, no reuse, round ordering)
    - Objective (rounds used)
    """

    def __init__(self, data):
        """
        Initialize the model.

        Args:
            data (dict): Model input
                Required keys:
                - N: Particle count
                Optional keys:
                - max_rounds: Rounds available to the solver (default N + 1)
        """
        self.data = data
        self.N = int(data['N'])
        self.model = pyo.ConcreteModel(name="Pairing_Schedule")

        self._define_sets()
        self._define_variables()
        self._define_constraints()
        self._define_objective()

    def _define_sets(self):
        model = self.model
        N = self.N
        self.pairs = [(i, j) for i in range(1, N + 1) for j in range(i, N + 1)]

        model.PARTICLES = pyo.RangeSet(1, N)
        model.PAIRS = pyo.RangeSet(1, len(self.pairs))
        model.ROUNDS = pyo.RangeSet(1, int(self.data.get('max_rounds', N + 1)))

    def _define_variables(self):
        model = self.model

        model.x = pyo.Var(
            model.PAIRS, model.ROUNDS,
            domain=pyo.Binary,
            doc="Pair p is scheduled in round r"
        )
        model.y = pyo.Var(
            model.ROUNDS,
            domain=pyo.Binary,
            doc="Round r is used"
        )

    def _define_constraints(self):
        model = self.model
        pairs = self.pairs

        def cover_rule(m, p):
            return sum(m.x[p, r] for r in m.ROUNDS) == 1
        model.cover = pyo.Constraint(model.PAIRS, rule=cover_rule)

        # self pair (k, k) occupies particle k once
        touching = {k: [p for p, pair in enumerate(pairs, start=1) if k in pair]
                    for k in model.PARTICLES}

        def no_reuse_rule(m, k, r):
            return sum(m.x[p, r] for p in touching[k]) <= m.y[r]
        model.no_reuse = pyo.Constraint(model.PARTICLES, model.ROUNDS, rule=no_reuse_rule)

        def ordering_rule(m, r):
            if r == m.ROUNDS.last():
                return pyo.Constraint.Skip
            return m.y[r] >= m.y[r + 1]
        model.ordering = pyo.Constraint(model.ROUNDS, rule=ordering_rule)

    def _define_objective(self):
        model = self.model
        model.objective = pyo.Objective(
            expr=sum(model.y[r] for r in model.ROUNDS),
            sense=pyo.minimize
        )

    def solve(self, solver_name='appsi_highs', tee=False, **solver_options):
        """
        Solve the model.

        Args:
            solver_name (str): Pyomo solver name
            tee (bool): Show solver output
            **solver_options: Passed to the solver (e.g. time_limit)

        Returns:
            dict: status, termination_condition, objective_value

        Raises:
            SolverUnavailableError: The solver cannot be created
        """
        solver = SolverFactory(solver_name)
        if solver is None or not solver.available(exception_flag=False):
            raise SolverUnavailableError(f"solver {solver_name!r} is not available")
        for key, value in solver_options.items():
            solver.options[key] = value

        logger.info("solving pairing model for N=%d", self.N)
        results = solver.solve(self.model, tee=tee)

        solution_info = {
            'status': results.solver.status,
            'termination_condition': results.solver.termination_condition,
            'objective_value': None,
        }
        if results.solver.termination_condition == pyo.TerminationCondition.optimal:
            solution_info['objective_value'] = int(round(pyo.value(self.model.objective)))
            logger.info("minimum rounds: %d", solution_info['objective_value'])
        else:
            logger.warning("pairing model terminated with %s",
                           results.solver.termination_condition)
        return solution_info

    def get_solution(self):
        """
        Schedule read off the solved assignment (unused rounds dropped).

        Returns:
            Schedule
        """
        model = self.model
        sets = []
        for r in model.ROUNDS:
            round_pairs = [self.pairs[p - 1] for p in model.PAIRS
                           if pyo.value(model.x[p, r]) > 0.5]
            if round_pairs:
                sets.append(round_pairs)
        return Schedule(N=self.N, sets=sets)

    def print_solution_summary(self):
        schedule = self.get_solution()

        print("\n" + "=" * 80)
        print("PAIRING SCHEDULE")
        print("=" * 80)
        print(f"Particles: {self.N} | Rounds used: {len(schedule.sets)}")
        print("\n--- ROUNDS ---")
        for r, round_pairs in enumerate(schedule.sets, start=1):
            print(f"Round {r:2d}: " + " ".join(f"({i},{j})" for i, j in round_pairs))
        print("\n" + "=" * 80)
