"""Catalog of benchmark objectives and grid sampling.

The non-convex entries are standard global-optimization test functions
(drop-wave, Ackley, Levy, Rastrigin, Schubert, Holder table, a radial sinc,
and an origin-shifted Easom), plus a handful of 1D sanity functions with
known envelopes. All evaluate with numpy broadcasting on coordinate arrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigurationError
from .grid import Grid, GridSpec, build_grid

Domain = tuple[tuple[float, float], ...]


def _exp(x):
    return np.exp(x)


def _dropwave(x, y):
    r2 = x**2 + y**2
    return -(1.0 + np.cos(12.0 * np.sqrt(r2))) / (0.5 * r2 + 2.0)


def _sinc2d(x, y):
    r = np.sqrt(x**2 + y**2)
    # sin(r)/r with the removable singularity filled at the origin
    return np.sinc(r / np.pi)


def _ackley(x, y, a=20.0, b=0.2, c=2.0 * np.pi):
    term1 = -a * np.exp(-b * np.sqrt(0.5 * (x**2 + y**2)))
    term2 = -np.exp(0.5 * (np.cos(c * x) + np.cos(c * y)))
    return term1 + term2 + a + np.e


def _levy(x, y):
    w1 = 1.0 + (x - 1.0) / 4.0
    w2 = 1.0 + (y - 1.0) / 4.0
    out = np.sin(np.pi * w1) ** 2
    out = out + (w1 - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * w1 + 1.0) ** 2)
    out = out + (w2 - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * w2) ** 2)
    return out


def _easom_shifted(x, y):
    return -np.cos(x + np.pi) * np.cos(y + np.pi) * np.exp(-(x**2) - y**2)


def _rastrigin(x, y):
    return 20.0 + x**2 + y**2 - 10.0 * np.cos(2.0 * np.pi * x) - 10.0 * np.cos(2.0 * np.pi * y)


def _schubert_sum(t):
    i = np.arange(1.0, 6.0).reshape((5,) + (1,) * np.ndim(t))
    return np.sum(i * np.cos((i + 1.0) * np.asarray(t) + i), axis=0)


def _schubert(x, y):
    return _schubert_sum(x) * _schubert_sum(y)


def _holder_table(x, y):
    r = np.sqrt(x**2 + y**2)
    return -np.abs(np.sin(x) * np.cos(y) * np.exp(np.abs(1.0 - r / np.pi)))


def _affine(x):
    return np.asarray(x, dtype=float).copy()


def _quadratic(x):
    return np.asarray(x, dtype=float) ** 2


def _doublewell(x):
    x = np.asarray(x, dtype=float)
    return np.minimum((x + 1.0) ** 2, (x - 1.0) ** 2)


@dataclass(frozen=True)
class TestFunction:
    name: str
    arity: int
    fn: Callable[..., np.ndarray]
    half_width: float  # default domain is [-half_width, half_width] per axis

    @property
    def default_domain(self) -> Domain:
        return ((-self.half_width, self.half_width),) * self.arity

    def __call__(self, *coords):
        if len(coords) != self.arity:
            raise ConfigurationError(
                f"{self.name} takes {self.arity} coordinate(s), got {len(coords)}"
            )
        return self.fn(*coords)


_CATALOG = [
    TestFunction("exp", 1, _exp, 2.0),
    TestFunction("dropwave", 2, _dropwave, 5.12),
    TestFunction("sinc", 2, _sinc2d, 10.0),
    TestFunction("ackley", 2, _ackley, 5.12),
    TestFunction("levy", 2, _levy, 10.0),
    TestFunction("easom", 2, _easom_shifted, 5.0),
    TestFunction("rastrigin", 2, _rastrigin, 5.12),
    TestFunction("schubert", 2, _schubert, 10.0),
    TestFunction("holder", 2, _holder_table, 10.0),
    TestFunction("affine", 1, _affine, 2.0),
    TestFunction("quadratic", 1, _quadratic, 2.0),
    TestFunction("doublewell", 1, _doublewell, 2.0),
]


def catalog() -> list[TestFunction]:
    """All cataloged functions, stable order."""
    return list(_CATALOG)


def get_function(name: str) -> TestFunction:
    for tf in _CATALOG:
        if tf.name == name:
            return tf
    known = ", ".join(tf.name for tf in _CATALOG)
    raise ConfigurationError(f"unknown function {name!r} (known: {known})")


def default_points(arity: int) -> int:
    """Default resolution: 201 points for 1D problems, 101 per axis for 2D."""
    return 201 if arity == 1 else 101


def resolve_domain(tf: TestFunction, domain: Domain | None) -> Domain:
    if domain is None:
        return tf.default_domain
    if len(domain) != tf.arity:
        raise ConfigurationError(
            f"domain has {len(domain)} axis range(s) but {tf.name} is {tf.arity}-dimensional"
        )
    for lo, hi in domain:
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ConfigurationError(f"bad axis range {lo}:{hi}")
    return tuple((float(lo), float(hi)) for lo, hi in domain)


def grid_for(tf: TestFunction, points: int | None = None, domain: Domain | None = None) -> Grid:
    """Build the lattice for a function: shared delta from the first axis,
    other axes reach their ranges by affine pre-scaling in sample_on_grid."""
    domain = resolve_domain(tf, domain)
    if points is None:
        points = default_points(tf.arity)
    if points < 3 or points % 2 == 0:
        raise ConfigurationError(f"points per axis must be odd and >= 3, got {points}")
    M = (points - 1) // 2
    lo, hi = domain[0]
    delta = (hi - lo) / 2.0 / M
    return build_grid(GridSpec(d=tf.arity, M=M, delta=delta))


def domain_coords(grid: Grid, domain: Domain) -> np.ndarray:
    """Map lattice multi-indices onto the requested (possibly rectangular)
    domain, shape (n_states, d)."""
    if len(domain) != grid.spec.d:
        raise ConfigurationError("domain arity does not match the grid")
    centers = np.array([(lo + hi) / 2.0 for lo, hi in domain])
    half = np.array([(hi - lo) / 2.0 for lo, hi in domain])
    return centers + grid.multi_index * (half / grid.spec.M)


def sample_on_grid(tf: TestFunction, grid: Grid, domain: Domain | None = None) -> np.ndarray:
    """Evaluate a cataloged function at every lattice node, flat id order."""
    domain = resolve_domain(tf, domain)
    pts = domain_coords(grid, domain)
    values = np.asarray(tf(*(pts[:, i] for i in range(grid.spec.d))), dtype=float)
    if not np.all(np.isfinite(values)):
        raise ConfigurationError(f"{tf.name} produced non-finite values on the grid")
    return values
