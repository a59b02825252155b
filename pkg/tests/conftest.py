import random

import pytest

from src.core.params import ParamSet


@pytest.fixture
def fig_params():
    """Order 2: lower (2, 3, 5), diag (1, 4, 7), upper (2, 3, 5)."""
    return ParamSet.from_families(
        2,
        lower={(1, 0): 2, (2, 0): 3, (2, 1): 5},
        diag={0: 1, 1: 4, 2: 7},
        upper={(0, 1): 2, (0, 2): 3, (1, 2): 5},
    )


@pytest.fixture
def small_params():
    """Order 1 parameters assembling to [[1, 4], [2, 11]]."""
    return ParamSet.from_families(1, lower={(1, 0): 2}, diag={0: 1, 1: 3}, upper={(0, 1): 4})


@pytest.fixture
def rng():
    return random.Random(20240611)
