"""Geometric lower convex envelopes, the solver-independent cross-check.

The 1D route is a monotone-chain lower hull over the sample points. The 2D
route takes the lower facets of the 3D convex hull of the epigraph cloud
(scipy's Qhull) and evaluates their pointwise maximum at the nodes; a convex
piecewise-linear function is exactly the max of its facet planes. Constant
and affine clouds are handled before Qhull ever sees them (Qhull rejects flat
input), and results are clipped to [min f, f] so dominance and minimum
preservation hold exactly in floating point.
"""
from __future__ import annotations

import numpy as np
from scipy.spatial import ConvexHull

from .errors import ConfigurationError
from .grid import Grid


def envelope_1d(xs: np.ndarray, fs: np.ndarray) -> np.ndarray:
    """Lower convex hull of the samples (xs strictly increasing), evaluated
    back at xs. Equals fs at both endpoints and at every hull vertex."""
    xs = np.asarray(xs, dtype=float)
    fs = np.asarray(fs, dtype=float)
    if xs.ndim != 1 or xs.shape != fs.shape:
        raise ValueError("xs and fs must be 1D arrays of equal length")
    if xs.size < 2:
        raise ValueError("need at least two sample points")
    if not np.all(np.diff(xs) > 0):
        raise ValueError("xs must be strictly increasing")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(fs))):
        raise ValueError("samples must be finite")

    # Andrew's monotone chain, lower half only.
    hull: list[int] = []
    for i in range(xs.size):
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (xs[a] - xs[o]) * (fs[i] - fs[o]) - (fs[a] - fs[o]) * (xs[i] - xs[o])
            if cross <= 0.0:
                hull.pop()
            else:
                break
        hull.append(i)

    env = np.interp(xs, xs[hull], fs[hull])
    return np.minimum(np.maximum(env, fs.min()), fs)


def _affine_fit(coords: np.ndarray, f: np.ndarray) -> tuple[np.ndarray, float]:
    A = np.column_stack([coords, np.ones(len(f))])
    sol, *_ = np.linalg.lstsq(A, f, rcond=None)
    fit = A @ sol
    return fit, float(np.abs(fit - f).max())


def envelope_2d(grid: Grid, f: np.ndarray, coords: np.ndarray | None = None) -> np.ndarray:
    """Lower envelope of the 2D epigraph cloud at every node, flat id order."""
    if grid.spec.d != 2:
        raise ConfigurationError("envelope_2d requires a 2D grid")
    f = np.asarray(f, dtype=float)
    if f.shape != (grid.n_states,):
        raise ConfigurationError("field shape does not match the grid")
    if coords is None:
        coords = grid.coords()

    scale = 1.0 + float(np.abs(f).max())
    if np.ptp(f) == 0.0:
        return np.full_like(f, f[0])
    _, affine_resid = _affine_fit(coords, f)
    if affine_resid <= 1e-9 * scale:
        # already a plane (to rounding); its envelope is itself
        return f.copy()

    cloud = np.column_stack([coords, f])
    hull = ConvexHull(cloud)
    eqs = hull.equations  # rows (a, b, c, offset): a x + b y + c z + offset <= 0
    lower = eqs[:, 2] < -1e-12
    if not np.any(lower):
        raise RuntimeError("no downward-facing facets found; degenerate cloud?")
    a, b, c, off = (eqs[lower, i] for i in range(4))
    # plane as a function: z(x, y) = -(a x + b y + offset) / c
    px, py, p0 = -a / c, -b / c, -off / c

    x, y = coords[:, 0], coords[:, 1]
    env = np.full(grid.n_states, -np.inf)
    chunk = 256
    for start in range(0, px.size, chunk):
        sl = slice(start, start + chunk)
        vals = px[sl, None] * x[None, :] + py[sl, None] * y[None, :] + p0[sl, None]
        np.maximum(env, vals.max(axis=0), out=env)

    return np.minimum(np.maximum(env, f.min()), f)


def envelope_on_grid(grid: Grid, f: np.ndarray, coords: np.ndarray | None = None) -> np.ndarray:
    """Dispatch on dimension; d > 2 is out of scope."""
    if grid.spec.d == 1:
        xs = coords[:, 0] if coords is not None else grid.coords()[:, 0]
        return envelope_1d(xs, np.asarray(f, dtype=float))
    if grid.spec.d == 2:
        return envelope_2d(grid, f, coords)
    raise ConfigurationError(f"no envelope oracle for d={grid.spec.d}")
