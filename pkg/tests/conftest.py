import numpy as np
import pytest

from swmac import DependenceParameter, FadingMarginals

THETA_GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def unit_marginals():
    return FadingMarginals(1.0, 1.0)


@pytest.fixture(params=THETA_GRID, ids=lambda t: f"theta={t}")
def theta(request):
    return DependenceParameter(request.param)
