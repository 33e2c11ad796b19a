"""
Pairing Schedule Example - Parallel Rounds of Pair Interactions

Builds the N-round schedule for a few particle counts, checks it, and for
small N solves the round-minimization model to confirm that no shorter
schedule exists.

Requires pyomo and HiGHS (highspy) for the optimality check.
"""

import os
import sys

# Add src directory to path to import diagphase
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(project_root, 'src'))

from diagphase.pairing import pairing_schedule, verify_pairing
from diagphase.pairing_model import PairingScheduleModel


def main():
    print("=" * 80)
    print("PAIRING SCHEDULE EXAMPLE")
    print("=" * 80)

    for N in (3, 4, 7, 8):
        schedule = pairing_schedule(N)
        check = verify_pairing(schedule)
        print(f"\nN = {N}: {len(schedule.sets)} rounds, {schedule.pair_count} pairs, "
              f"valid = {check.all_ok}")
        for k, round_pairs in enumerate(schedule.sets, start=1):
            print(f"  [{k}] " + " ".join(f"({i},{j})" for i, j in round_pairs))

    print("\n[Optimality] Solving the round-minimization model...")
    for N in (3, 4, 5):
        model = PairingScheduleModel({'N': N})
        try:
            results = model.solve(solver_name='appsi_highs', time_limit=60)
        except Exception as e:
            print(f"\n  Error: {str(e)}")
            raise
        print(f"  N = {N}: minimum rounds = {results['objective_value']}")
    model.print_solution_summary()


if __name__ == "__main__":
    main()
