"""Learn the envelope from simulated trajectories, and watch the noise floor.

The tabular learners approach the same fixed point as exact value iteration,
but how close they land is set by the step-size schedule a(n) = 1/(1 + n/n0).
A large n0 keeps the table plastic (fast early progress, noisy late values);
a small n0 freezes it sooner (smooth late values, slower early progress).
This script runs the asynchronous single-trajectory learner at increasing
budgets under both regimes and prints the sup error against the dp solution.

Run:  python demos/q_learning_walkthrough.py   (about half a minute)
"""
from __future__ import annotations

import numpy as np

import cvxenv as cv


def main() -> None:
    tf = cv.get_function("doublewell")
    grid = cv.grid_for(tf, points=51)
    f = cv.sample_on_grid(tf, grid)
    spread = float(f.max() - f.min())

    dp = cv.value_iteration(grid, f, cv.SolveConfig(tolerance=1e-12))
    print(f"dp reference: {dp.sweeps} sweeps on {grid.spec.n_states} states")
    print(f"value spread max f - min f = {spread:.4f}\n")

    budgets = (50_000, 200_000, 800_000, 2_000_000)
    print("async learner, sup|learned - dp| / spread:")
    print(f"{'steps':>10}  {'n0=1e6 (slow decay)':>22}  {'n0=2e4 (fast decay)':>20}")
    for steps in budgets:
        row = []
        for n0 in (1_000_000.0, 20_000.0):
            cfg = cv.LearnConfig(total_steps=steps, n0=n0, seed=0)
            learned = cv.asynchronous_q_learning(grid, f, cfg)
            sup = float(np.abs(cv.extract_value(learned.q) - dp.values).max())
            row.append(sup / spread)
        print(f"{steps:>10}  {row[0]:>22.4f}  {row[1]:>20.4f}")

    print("\nwith n0 = 1e6 the late step size is still ~1/3 after 2e6 steps, so")
    print("the table keeps bouncing at the per-sample noise scale; shrinking n0")
    print("decays the noise and the error drops an order of magnitude.")

    cfg = cv.LearnConfig(total_steps=2_000_000, seed=0)
    run = cv.asynchronous_q_learning(grid, f, cfg)
    stats = run.stats
    print(f"\nlast run bookkeeping: {stats.episodes} episodes, "
          f"coverage {stats.coverage:.3f}, "
          f"table bounds seen [{stats.q_min_seen:.4f}, {stats.q_max_seen:.4f}]")

    sync = cv.synchronous_q_learning(grid, f, cv.LearnConfig(total_steps=20_000, seed=0))
    sup = float(np.abs(cv.extract_value(sync.q) - dp.values).max())
    print(f"synchronous variant, 2e4 sweeps: sup error {sup:.4f} "
          "(every entry refreshed each sweep)")


if __name__ == "__main__":
    main()
