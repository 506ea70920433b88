"""Walk through the 1D double-well: solve it, cross-check it, read the policy.

The double-well min((x+1)^2, (x-1)^2) is the classic non-convex warm-up: two
parabolic wells with a hump between them. Its convex envelope keeps the outer
parabola arms and bridges the wells with a flat segment. This script solves
the stopping problem with exact value iteration, checks the result against
the geometric lower hull, and prints where the optimal policy stops versus
keeps diffusing.

Run:  python demos/envelope_1d_basics.py
"""
from __future__ import annotations

import numpy as np

import cvxenv as cv


def main() -> None:
    tf = cv.get_function("doublewell")
    grid = cv.grid_for(tf, points=201)
    f = cv.sample_on_grid(tf, grid)
    xs = grid.coords()[:, 0]

    print(f"function: {tf.name} on [{xs[0]:g}, {xs[-1]:g}], {xs.size} points")

    result = cv.value_iteration(grid, f, cv.SolveConfig(tolerance=1e-12))
    print(f"value iteration: {result.sweeps} sweeps, residual {result.residual:.2e}, "
          f"converged={result.converged}")

    envelope = cv.envelope_1d(xs, f)
    sup = np.abs(result.values - envelope).max()
    print(f"sup difference vs geometric lower hull: {sup:.2e}")
    print(f"dominance defect {cv.dominance_defect(result.values, f):.1e}, "
          f"convexity defect {cv.convexity_defect(grid, result.values):.1e}, "
          f"min gap {cv.min_gap(result.values, f):.1e}")

    # The stopping region is where the envelope touches f; in between, the
    # controlled walk keeps moving and the value is the flat bridge.
    policy = cv.extract_policy(grid, f, result.values)
    stopped = xs[policy.stop]
    moving = xs[~policy.stop]
    print(f"\npolicy: stop at {stopped.size} states, continue at {moving.size}")
    if moving.size:
        print(f"continuation region: [{moving.min():+.3f}, {moving.max():+.3f}] "
              "(the bridge between the wells)")

    print("\n   x        f(x)      envelope   action")
    for x_target in (-1.8, -1.0, -0.5, 0.0, 0.5, 1.0, 1.8):
        i = int(np.abs(xs - x_target).argmin())
        action = "stop" if policy.stop[i] else "continue"
        print(f"  {xs[i]:+.2f}   {f[i]:8.4f}   {result.values[i]:8.4f}   {action}")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("\nmatplotlib not available, skipping the figure")
        return
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(xs, f, label="f", lw=1.5)
    ax.plot(xs, result.values, label="envelope (dp)", lw=2)
    ax.plot(xs[policy.stop], f[policy.stop], ".", ms=3, label="stop set")
    ax.legend()
    ax.set_xlabel("x")
    fig.tight_layout()
    fig.savefig("envelope_1d_basics.png", dpi=120)
    print("\nwrote envelope_1d_basics.png")


if __name__ == "__main__":
    main()
