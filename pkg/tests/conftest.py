"""Shared fixtures for the test suite.

The structural tests sweep a fixed parameter grid (three dimensions per
family, eight rational values per parameter slot).  Building those modules
once per session keeps the acceptance run well under its time budget.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bannai_ito.bimodule import BIModule, even_module, odd_module

F = Fraction

# eight values mixing integers and half-integers of both signs
GRID_VALUES = (F(0), F(1, 2), F(-1, 2), F(1), F(-1), F(3, 2), F(-3, 2), F(2))
EVEN_DIMS = (1, 3, 5)
ODD_DIMS = (0, 2, 4)

SEED = 20260814

GridKey = tuple[int, Fraction, Fraction, Fraction]


def grid_points(dims: tuple[int, ...]) -> list[GridKey]:
    return [(d, a, b, c)
            for d in dims
            for a in GRID_VALUES
            for b in GRID_VALUES
            for c in GRID_VALUES]


@pytest.fixture(scope="session")
def even_grid() -> dict[GridKey, BIModule]:
    return {key: even_module(*key) for key in grid_points(EVEN_DIMS)}


@pytest.fixture(scope="session")
def odd_grid() -> dict[GridKey, BIModule]:
    return {key: odd_module(*key) for key in grid_points(ODD_DIMS)}


@pytest.fixture
def rng() -> random.Random:
    # fresh per test so results do not depend on test execution order
    return random.Random(SEED)
