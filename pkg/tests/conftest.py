from __future__ import annotations

import numpy as np
import pytest
from scipy.stats import unitary_group

from entspec.states import make_random


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def random_unitary(rng):
    def _draw() -> np.ndarray:
        return unitary_group.rvs(2, random_state=rng)

    return _draw


@pytest.fixture
def haar_states():
    def _states(n: int, count: int, base_seed: int = 1000):
        return [make_random(n, base_seed + i) for i in range(count)]

    return _states


@pytest.fixture
def assert_participation():
    def _check(record, expected: float, tol: float = 1e-9) -> None:
        assert abs(record.participation - expected) < tol
        assert abs(record.purity * record.participation - 1.0) < 1e-12

    return _check
