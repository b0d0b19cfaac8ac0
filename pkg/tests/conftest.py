from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from cantelli import (
    Constant,
    EventSchedule,
    ExplicitList,
    GlobalThresholds,
    IndependentModel,
    LatentUniformModel,
    MarkovModel,
    PerLatentThresholds,
    PowerLaw,
)

REPO = Path(__file__).resolve().parent.parent
SPECS = REPO / "specs"


def make_coin(p: float = 0.5) -> IndependentModel:
    return IndependentModel(Constant(p))


def make_powerlaw(scale: float = 1.0, exponent: float = 2.0) -> IndependentModel:
    return IndependentModel(PowerLaw(scale, exponent))


def make_nested() -> LatentUniformModel:
    return LatentUniformModel(1, [0], GlobalThresholds(PowerLaw(1.0, 1.0)))


def make_interleaved() -> LatentUniformModel:
    return LatentUniformModel(
        2,
        [0, 1],
        PerLatentThresholds((PowerLaw(1.0, 1.0), PowerLaw(1.0, 1.0)), (-1, 0)),
    )


def make_flipflop() -> MarkovModel:
    return MarkovModel(
        np.array([[0.0, 1.0], [1.0, 0.0]]),
        np.array([0.0, 1.0]),
        EventSchedule(2, constant=[0]),
    )


def make_absorbing() -> MarkovModel:
    # active (0) survives with probability 1/2 each step; event: still active
    return MarkovModel(
        np.array([[0.5, 0.5], [0.0, 1.0]]),
        np.array([1.0, 0.0]),
        EventSchedule(2, constant=[0]),
    )


def make_equal_rows(row, initial, members) -> MarkovModel:
    row = np.asarray(row, dtype=float)
    return MarkovModel(
        np.tile(row, (len(row), 1)),
        np.asarray(initial, dtype=float),
        EventSchedule(len(row), constant=members),
    )


def random_stochastic(rng: np.random.Generator, size: int) -> np.ndarray:
    m = rng.random((size, size)) + 0.05
    return m / m.sum(axis=1, keepdims=True)


def random_markov(rng: np.random.Generator, max_states: int = 4) -> MarkovModel:
    s = int(rng.integers(2, max_states + 1))
    init = rng.random(s) + 0.05
    init /= init.sum()
    members = [int(x) for x in rng.choice(s, size=rng.integers(1, s), replace=False)]
    return MarkovModel(random_stochastic(rng, s), init, EventSchedule(s, constant=members))


def random_independent(rng: np.random.Generator, length: int = 14) -> IndependentModel:
    values = rng.random(length)
    return IndependentModel(ExplicitList(tuple(values), tail=float(rng.random())))


def random_latent(rng: np.random.Generator, length: int = 14) -> LatentUniformModel:
    num = int(rng.integers(1, 4))
    cycle_len = int(rng.integers(1, 5))
    coloring = [int(rng.integers(0, num)) for _ in range(cycle_len)]
    coloring[: num] = list(range(num))[: cycle_len] or [0]
    # make sure every latent appears in the cycle
    for j in range(num):
        if j not in coloring:
            coloring[j % cycle_len] = j
    thresholds = ExplicitList(tuple(rng.random(length)), tail=float(rng.random()))
    return LatentUniformModel(num, coloring, GlobalThresholds(thresholds))


@pytest.fixture
def coin() -> IndependentModel:
    return make_coin()


@pytest.fixture
def nested() -> LatentUniformModel:
    return make_nested()


@pytest.fixture
def interleaved() -> LatentUniformModel:
    return make_interleaved()


@pytest.fixture
def flipflop() -> MarkovModel:
    return make_flipflop()


@pytest.fixture
def absorbing() -> MarkovModel:
    return make_absorbing()
