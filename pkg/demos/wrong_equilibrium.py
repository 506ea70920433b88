"""Show why the Q-table must start ABOVE the function, not at zero.

The backup operator is non-expansive but not a contraction, so it can have
several fixed points. Starting every free entry above max f and iterating
downward lands on the maximal one, the convex envelope. Starting at zero on
a nonnegative function gets stuck: every continue-entry keeps averaging
zeros, so the all-zero continuation table is itself a fixed point, far below
the envelope wherever the envelope is positive.

Run:  python demos/wrong_equilibrium.py
"""
from __future__ import annotations

import numpy as np

import cvxenv as cv


def main() -> None:
    tf = cv.get_function("doublewell")
    grid = cv.grid_for(tf, points=51)
    f = cv.sample_on_grid(tf, grid)
    xs = grid.coords()[:, 0]
    envelope = cv.envelope_1d(xs, f)

    high = cv.q_value_iteration(grid, f, cv.SolveConfig(tolerance=1e-12))
    v_high = cv.extract_value(high.q)
    print(f"high start (max f + 1): {high.sweeps} sweeps, "
          f"sup vs hull {np.abs(v_high - envelope).max():.2e}")

    cfg = cv.SolveConfig(tolerance=1e-12, require_init_above_f=False)
    zeros = np.zeros((grid.spec.n_states, grid.spec.d, 2))
    low = cv.q_value_iteration(grid, f, cfg, q0=zeros)
    v_low = cv.extract_value(low.q)
    print(f"zero start: {low.sweeps} sweeps, converged={low.converged} "
          "(a fixed point, just the wrong one)")

    shortfall = envelope - v_low
    worst = int(shortfall.argmax())
    print(f"\nlargest shortfall vs hull: {shortfall[worst]:.4f} at x = {xs[worst]:+.2f}")
    print(f"states below the hull by more than 1e-6: {(shortfall > 1e-6).sum()} "
          f"of {grid.spec.n_states}")

    print("\n   x       envelope   high start   zero start")
    for x_target in (-1.5, -0.75, 0.0, 0.75, 1.5):
        i = int(np.abs(xs - x_target).argmin())
        print(f"  {xs[i]:+.2f}   {envelope[i]:8.4f}   {v_high[i]:9.4f}   {v_low[i]:9.4f}")

    # The validation metrics flag the bad solve without knowing how it was made:
    # the zero-start table fails minimum preservation by a wide margin.
    print(f"\nmin gap, high start: {cv.min_gap(v_high, f):.1e}")
    print(f"min gap, zero start: {cv.min_gap(v_low, f):.4f}  <- detection signal")


if __name__ == "__main__":
    main()
