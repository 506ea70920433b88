"""Deterministic solvers: value iteration and Q-value iteration.

Both solve the optimal-stopping equation

    V(x) = min(f(x),  min_u  E[V(X') | x, u])

on the lattice, with V held at f on the whole lattice boundary (faces and
corners). Boundary pinning makes the interior dynamics an exact martingale,
so the fixed point dominates every convex minorant of f; in 1D it equals the
lower convex hull of the samples, in 2D it is the axis-wise convex envelope
with f as boundary data, which can sit above the true convex envelope (the
gap is reported by the validation metrics, never assumed zero).

Iterating from above (V0 >= f) the Jacobi sweeps decrease monotonically to
the maximal fixed point. Starting below f instead can land on a spurious
lower fixed point; that is deliberately reachable behind
``SolveConfig.require_init_above_f = False`` for the negative tests.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .grid import Grid


@dataclass
class SolveConfig:
    tolerance: float = 1e-10  # sup-norm change between Jacobi sweeps
    max_sweeps: int = 10**6
    tie_epsilon: float = 1e-12
    require_init_above_f: bool = True
    threads: int = 1  # accepted for interface parity; sweeps are vectorized

    def __post_init__(self) -> None:
        if self.tolerance <= 0.0:
            raise ConfigurationError("tolerance must be positive")
        if self.max_sweeps < 1:
            raise ConfigurationError("max_sweeps must be >= 1")
        if self.threads < 1:
            raise ConfigurationError("threads must be >= 1")


@dataclass
class ValueResult:
    values: np.ndarray  # flat (n_states,)
    sweeps: int
    residual: float
    converged: bool
    monotone_violations: int


@dataclass
class QTable:
    """Q-values indexed (state, control, z) with z=0 stop, z=1 continue."""

    grid: Grid
    values: np.ndarray  # (n_states, d, 2)
    frozen: np.ndarray  # (n_states,) bool, states whose entries never update


@dataclass
class QValueResult:
    q: QTable
    sweeps: int
    residual: float
    converged: bool


@dataclass
class Policy:
    stop: np.ndarray  # (n_states,) bool
    direction: np.ndarray  # (n_states,) int, axis to play where not stopped, else -1


def _boundary_values(grid: Grid, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    f = np.asarray(f, dtype=float)
    if f.shape != (grid.n_states,):
        raise ConfigurationError(f"field shape {f.shape} does not match grid ({grid.n_states},)")
    return f, grid.is_boundary


def _check_init(v0: np.ndarray, f: np.ndarray, cfg: SolveConfig) -> None:
    if cfg.require_init_above_f and np.any(v0 < f):
        raise ConfigurationError(
            "initialization below f; the iteration from below converges to a "
            "spurious equilibrium (set require_init_above_f=False to run anyway)"
        )


def _axis_continuation(V: np.ndarray, d: int) -> np.ndarray:
    """min over axes of the two-neighbor average, on the open interior block."""
    inner = (slice(1, -1),) * d
    cont = None
    for u in range(d):
        lo = tuple(slice(0, -2) if i == u else slice(1, -1) for i in range(d))
        hi = tuple(slice(2, None) if i == u else slice(1, -1) for i in range(d))
        avg = 0.5 * (V[lo] + V[hi])
        cont = avg if cont is None else np.minimum(cont, avg)
    assert cont is not None and cont.shape == V[inner].shape
    return cont


def value_iteration(
    grid: Grid,
    f: np.ndarray,
    cfg: SolveConfig | None = None,
    v0: np.ndarray | None = None,
) -> ValueResult:
    """Monotone Jacobi iteration for the stopping value.

    Boundary states are terminal: they keep whatever the initialization put
    there and are never swept. The default start pins them to f and fills the
    rest with max(f) + 1. Stops when the sup-norm sweep change (equal to the
    Bellman residual of the previous iterate) drops to cfg.tolerance;
    non-convergence within max_sweeps is reported through the result, not
    raised.
    """
    cfg = cfg or SolveConfig()
    f, boundary = _boundary_values(grid, f)
    d = grid.spec.d
    shape = grid.shape

    if v0 is None:
        V = np.full(grid.n_states, f.max() + 1.0)
        V[boundary] = f[boundary]
    else:
        V = np.array(v0, dtype=float)
        if V.shape != (grid.n_states,):
            raise ConfigurationError("v0 shape does not match the grid")
        _check_init(V, f, cfg)

    Vg = V.reshape(shape)
    fg = f.reshape(shape)
    inner = (slice(1, -1),) * d
    f_inner = fg[inner]

    residual = np.inf
    violations = 0
    sweeps = 0
    for sweeps in range(1, cfg.max_sweeps + 1):
        new_inner = np.minimum(f_inner, _axis_continuation(Vg, d))
        diff = new_inner - Vg[inner]
        residual = float(np.abs(diff).max()) if diff.size else 0.0
        if sweeps > 1 and np.any(diff > 0.0):
            violations += 1
        Vg[inner] = new_inner
        if residual <= cfg.tolerance:
            break
    converged = residual <= cfg.tolerance

    return ValueResult(
        values=Vg.reshape(-1),
        sweeps=sweeps,
        residual=residual,
        converged=converged,
        monotone_violations=violations,
    )


def q_backup(grid: Grid, f: np.ndarray, q_values: np.ndarray) -> np.ndarray:
    """One exact Q-iteration sweep (the map whose fixed point is the Q-table).

    z=0 entries take the stop payoff f(x); z=1 entries take the expected best
    successor value along the chosen axis; boundary rows are terminal and pass
    through unchanged, so they keep whatever the initialization put there.
    Non-expansive in the sup norm.
    """
    f = np.asarray(f, dtype=float)
    d = grid.spec.d
    shape = grid.shape
    if q_values.shape != (grid.n_states, d, 2):
        raise ConfigurationError(f"Q shape {q_values.shape} != {(grid.n_states, d, 2)}")

    m = q_values.min(axis=(1, 2)).reshape(shape)
    out = np.empty_like(q_values)
    out[:, :, 0] = f[:, None]
    inner = (slice(1, -1),) * d
    for u in range(d):
        lo = tuple(slice(0, -2) if i == u else slice(1, -1) for i in range(d))
        hi = tuple(slice(2, None) if i == u else slice(1, -1) for i in range(d))
        cont = np.full(shape, np.nan)
        cont[inner] = 0.5 * (m[lo] + m[hi])
        out[:, u, 1] = cont.reshape(-1)
    boundary = grid.is_boundary
    out[boundary, :, :] = q_values[boundary, :, :]
    return out


def q_value_iteration(
    grid: Grid,
    f: np.ndarray,
    cfg: SolveConfig | None = None,
    q0: np.ndarray | None = None,
) -> QValueResult:
    """Q-table analog of value_iteration; same terminal rule, same fixed point.

    Default start pins boundary rows to f and puts max(f) + 1 in every free
    entry; a supplied q0 is taken verbatim, boundary rows included.
    extract_value of the default-start result matches the value_iteration
    output (both converge to the same V).
    """
    cfg = cfg or SolveConfig()
    f, boundary = _boundary_values(grid, f)
    d = grid.spec.d

    if q0 is None:
        Q = np.full((grid.n_states, d, 2), f.max() + 1.0)
        Q[boundary, :, :] = f[boundary, None, None]
    else:
        Q = np.array(q0, dtype=float)
        if Q.shape != (grid.n_states, d, 2):
            raise ConfigurationError("q0 shape does not match (n_states, d, 2)")
        _check_init(Q.min(axis=(1, 2)), f, cfg)

    residual = np.inf
    sweeps = 0
    for sweeps in range(1, cfg.max_sweeps + 1):
        newQ = q_backup(grid, f, Q)
        residual = float(np.abs(newQ - Q).max())
        Q = newQ
        if residual <= cfg.tolerance:
            break
    converged = residual <= cfg.tolerance

    table = QTable(grid=grid, values=Q, frozen=boundary.copy())
    return QValueResult(q=table, sweeps=sweeps, residual=residual, converged=converged)


def extract_value(q: QTable) -> np.ndarray:
    """V(x) = min over controls and stop/continue of Q(x, u, z)."""
    return q.values.min(axis=(1, 2))


def extract_policy(grid: Grid, f: np.ndarray, V: np.ndarray, tie_epsilon: float = 1e-12) -> Policy:
    """Greedy stopping rule from a value field.

    Boundary states are absorbed, hence marked stop. An interior state stops
    when no axis average improves on f(x) by more than tie_epsilon (ties
    stop); otherwise it continues along the best axis, lowest index on ties.
    """
    f, boundary = _boundary_values(grid, f)
    V = np.asarray(V, dtype=float)
    if V.shape != (grid.n_states,):
        raise ConfigurationError("V shape does not match the grid")
    d = grid.spec.d
    Vg = V.reshape(grid.shape)

    stop = np.ones(grid.n_states, dtype=bool)
    direction = np.full(grid.n_states, -1, dtype=np.int64)

    inner = (slice(1, -1),) * d
    conts = []
    for u in range(d):
        lo = tuple(slice(0, -2) if i == u else slice(1, -1) for i in range(d))
        hi = tuple(slice(2, None) if i == u else slice(1, -1) for i in range(d))
        conts.append(0.5 * (Vg[lo] + Vg[hi]))
    cont_stack = np.stack(conts)  # (d, interior shape)
    best = cont_stack.min(axis=0)
    best_axis = cont_stack.argmin(axis=0)

    f_inner = f.reshape(grid.shape)[inner]
    go = best < f_inner - tie_epsilon

    stop_g = stop.reshape(grid.shape)
    dir_g = direction.reshape(grid.shape)
    stop_g[inner] = ~go
    dir_g[inner] = np.where(go, best_axis, -1)
    return Policy(stop=stop, direction=direction)
