"""Shared solve fixtures.

The expensive runs (201-point 1D solves at tight tolerance, the eight 2D
solves at 101x101, the long learning runs) are computed once per session and
shared between the module tests and the acceptance suite. Wall-clock seconds
are recorded at solve time so runtime budgets can be asserted where they are
part of the contract.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
import pytest

import cvxenv as cv

ONE_D_FUNCTIONS = ("exp", "affine", "quadratic", "doublewell")
TWO_D_FUNCTIONS = (
    "dropwave", "sinc", "ackley", "levy", "easom", "rastrigin", "schubert", "holder",
)


@dataclass
class SolveCase:
    grid: cv.Grid
    f: np.ndarray
    result: cv.ValueResult
    envelope: np.ndarray
    dp_seconds: float
    hull_seconds: float


def _solve(name: str, points: int, tolerance: float) -> SolveCase:
    tf = cv.get_function(name)
    grid = cv.grid_for(tf, points)
    f = cv.sample_on_grid(tf, grid)
    t0 = time.perf_counter()
    result = cv.value_iteration(grid, f, cv.SolveConfig(tolerance=tolerance))
    t1 = time.perf_counter()
    envelope = cv.envelope_on_grid(grid, f)
    t2 = time.perf_counter()
    return SolveCase(grid, f, result, envelope, t1 - t0, t2 - t1)


@pytest.fixture(scope="session")
def one_d_cases() -> dict[str, SolveCase]:
    return {name: _solve(name, 201, 1e-12) for name in ONE_D_FUNCTIONS}


@pytest.fixture(scope="session")
def two_d_cases() -> dict[str, SolveCase]:
    return {name: _solve(name, 101, 1e-10) for name in TWO_D_FUNCTIONS}


@pytest.fixture(scope="session")
def dw51() -> SolveCase:
    return _solve("doublewell", 51, 1e-12)


@dataclass
class LearnCase:
    result: cv.LearnResult
    values: np.ndarray
    seconds: float


def _learn(case: SolveCase, runner, steps: int) -> LearnCase:
    t0 = time.perf_counter()
    result = runner(case.grid, case.f, cv.LearnConfig(total_steps=steps, seed=0))
    seconds = time.perf_counter() - t0
    return LearnCase(result, cv.extract_value(result.q), seconds)


@pytest.fixture(scope="session")
def async_dw(dw51: SolveCase) -> LearnCase:
    return _learn(dw51, cv.asynchronous_q_learning, 2_000_000)


@pytest.fixture(scope="session")
def sync_dw(dw51: SolveCase) -> LearnCase:
    return _learn(dw51, cv.synchronous_q_learning, 100_000)
