"""Shared fixtures of the test suite."""

import numpy as np
import pytest

from kacmoody_invariants._orthogonal_algebra import (
    OrthogonalAlgebra, sl2, so3,
)


@pytest.fixture
def rng() -> np.random.Generator:
    """Return a freshly seeded generator."""
    return np.random.default_rng(20260501)


@pytest.fixture(params=('sl2', 'so3'))
def algebra(request: pytest.FixtureRequest) -> OrthogonalAlgebra:
    """Provide each of the built-in algebras."""
    return {'sl2': sl2, 'so3': so3}[request.param]()
