"""Stochastic Q-learning for the stopping problem, synchronous and
asynchronous variants.

Entries are Q(x, u, z) with z=0 the stop action (payoff f(x)) and z=1 the
continue action (expected best successor value along axis u). Only the 2^d
corner states are pinned at f here; face entries start at the high value L
like the interior and learn. Initialization must sit above the target fixed
point: starting at L > max f the scheme tracks the maximal equilibrium, while
a low start (e.g. all zeros) can settle on a spurious one; see the
deterministic q_value_iteration for that negative demonstration.

The step size schedule is a(n) = 1 / (1 + n / n0) on the global step counter,
shared by all entries. The synchronous variant updates every non-corner entry
each step from one fresh successor draw per (x, u), shared across z. The
asynchronous variant updates one entry per step along a single behavior
trajectory: control and z drawn uniformly, episodes restarted uniformly over
non-corner states on corner absorption or at the episode cap. Fixed seed and
draw order make both bit-reproducible.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .dp import QTable
from .errors import ConfigurationError
from .grid import Grid


@dataclass
class LearnConfig:
    total_steps: int
    L: float | None = None  # default max f + 1
    n0: float = 1_000_000.0
    episode_cap: int | None = None  # default 10 * (2M + 1)
    behavior: str = "uniform"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.total_steps < 1:
            raise ConfigurationError("total_steps must be >= 1")
        if self.n0 <= 0:
            raise ConfigurationError("n0 must be positive")
        if self.behavior != "uniform":
            raise ConfigurationError(f"unsupported behavior policy {self.behavior!r}")
        if self.episode_cap is not None and self.episode_cap < 1:
            raise ConfigurationError("episode_cap must be >= 1")


@dataclass
class LearnStats:
    steps: int
    episodes: int
    coverage: float  # fraction of non-corner (x, u, z) triples ever updated
    q_min_seen: float  # over all written values
    q_max_seen: float
    visit_counts: np.ndarray | None = field(default=None, repr=False)


@dataclass
class LearnResult:
    q: QTable
    stats: LearnStats


def step_size(n: int, n0: float = 1_000_000.0) -> float:
    """Schedule a(n) = 1 / (1 + n / n0), real division: a(0) = 1,
    a(n0) = 1/2, strictly decreasing."""
    return 1.0 / (1.0 + n / n0)


def init_q(grid: Grid, f: np.ndarray, L: float) -> QTable:
    """High initialization: every free entry at L, corner entries pinned to f."""
    f = np.asarray(f, dtype=float)
    if f.shape != (grid.n_states,):
        raise ConfigurationError("field shape does not match the grid")
    if not L > f.max():
        raise ConfigurationError(
            f"L must exceed max f on the grid (L={L}, max f={f.max()})"
        )
    values = np.full((grid.n_states, grid.spec.d, 2), float(L))
    corners = grid.is_corner
    values[corners, :, :] = f[corners, None, None]
    return QTable(grid=grid, values=values, frozen=corners.copy())


def _resolved(grid: Grid, f: np.ndarray, cfg: LearnConfig) -> tuple[np.ndarray, float, int]:
    f = np.asarray(f, dtype=float)
    L = cfg.L if cfg.L is not None else float(f.max()) + 1.0
    cap = cfg.episode_cap if cfg.episode_cap is not None else 10 * grid.spec.points_per_axis
    return f, L, cap


def synchronous_q_learning(
    grid: Grid,
    f: np.ndarray,
    cfg: LearnConfig,
    rng: np.random.Generator | None = None,
) -> LearnResult:
    """Update every non-corner entry each step with simulated successors.

    Draw layout per step n: one uniform matrix of shape (n_noncorner, d);
    entry < 0.5 means the up-neighbor, else down (clipped moves self-loop).
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    f, L, _ = _resolved(grid, f, cfg)
    table = init_q(grid, f, L)
    Q = table.values
    d = grid.spec.d
    nc = grid.noncorner_ids

    up = grid.successor[nc, :, 0]
    down = grid.successor[nc, :, 1]
    f_nc = f[nc]

    q_min_seen = np.inf
    q_max_seen = -np.inf
    for n in range(cfg.total_steps):
        a = step_size(n, cfg.n0)
        m = Q.min(axis=(1, 2))
        side_up = rng.random((nc.size, d)) < 0.5
        succ = np.where(side_up, up, down)
        cont_target = m[succ]
        new_cont = Q[nc, :, 1] + a * (cont_target - Q[nc, :, 1])
        new_stop = Q[nc, :, 0] + a * (f_nc[:, None] - Q[nc, :, 0])
        Q[nc, :, 1] = new_cont
        Q[nc, :, 0] = new_stop
        q_min_seen = min(q_min_seen, float(new_cont.min()), float(new_stop.min()))
        q_max_seen = max(q_max_seen, float(new_cont.max()), float(new_stop.max()))

    stats = LearnStats(
        steps=cfg.total_steps,
        episodes=0,
        coverage=1.0,
        q_min_seen=q_min_seen,
        q_max_seen=q_max_seen,
    )
    return LearnResult(q=table, stats=stats)


def asynchronous_q_learning(
    grid: Grid,
    f: np.ndarray,
    cfg: LearnConfig,
    rng: np.random.Generator | None = None,
) -> LearnResult:
    """Single-trajectory Q-learning with uniform behavior.

    Draw order per step: control u (only when d > 1), z, transition side;
    a restart uniform is drawn after a step that hits a corner or the episode
    cap, and once before the first step. z=0 does not end the episode; the
    chain advances on the sampled transition either way.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    f, L, cap = _resolved(grid, f, cfg)
    table = init_q(grid, f, L)
    d = grid.spec.d
    n_states = grid.n_states

    # Python-list mirrors: the hot loop is scalar work, where list indexing
    # beats ndarray scalar indexing by a wide margin.
    qflat = table.values.reshape(-1).tolist()
    f_list = f.tolist()
    is_corner = grid.is_corner.tolist()
    succ_up = grid.successor[:, :, 0].reshape(-1).tolist()
    succ_down = grid.successor[:, :, 1].reshape(-1).tolist()
    noncorner = grid.noncorner_ids.tolist()
    n_nc = len(noncorner)
    width = 2 * d

    visits = [0] * (n_states * d * 2)
    q_min_seen = np.inf
    q_max_seen = -np.inf

    block_size = 1 << 16
    block: list[float] = []
    cursor = 0

    def draw() -> float:
        nonlocal block, cursor
        if cursor == len(block):
            block = rng.random(block_size).tolist()
            cursor = 0
        v = block[cursor]
        cursor += 1
        return v

    n0 = cfg.n0
    state = noncorner[int(draw() * n_nc)]
    episode_steps = 0
    episodes = 1

    for n in range(cfg.total_steps):
        u = int(draw() * d) if d > 1 else 0
        z = 0 if draw() < 0.5 else 1
        su = state * d + u
        nxt = succ_up[su] if draw() < 0.5 else succ_down[su]

        if z == 1:
            base = nxt * width
            target = min(qflat[base: base + width])
        else:
            target = f_list[state]

        a = 1.0 / (1.0 + n / n0)
        idx = su * 2 + z
        val = qflat[idx]
        val += a * (target - val)
        qflat[idx] = val
        visits[idx] += 1
        if val < q_min_seen:
            q_min_seen = val
        if val > q_max_seen:
            q_max_seen = val

        state = nxt
        episode_steps += 1
        if is_corner[state] or episode_steps >= cap:
            state = noncorner[int(draw() * n_nc)]
            episode_steps = 0
            episodes += 1

    table.values[:] = np.asarray(qflat).reshape(n_states, d, 2)
    visit_arr = np.asarray(visits, dtype=np.int64).reshape(n_states, d, 2)
    free = visit_arr[grid.noncorner_ids]
    coverage = float((free > 0).mean())
    if cfg.total_steps >= 100 * n_states * 2 * d and coverage < 1.0:
        warnings.warn(
            f"incomplete coverage after {cfg.total_steps} steps: "
            f"{coverage:.3f} of non-corner entries visited",
            stacklevel=2,
        )

    stats = LearnStats(
        steps=cfg.total_steps,
        episodes=episodes,
        coverage=coverage,
        q_min_seen=float(q_min_seen),
        q_max_seen=float(q_max_seen),
        visit_counts=visit_arr,
    )
    return LearnResult(q=table, stats=stats)
