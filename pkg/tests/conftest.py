import pytest
from hypothesis import HealthCheck, settings

from irrpoints.polytope import Box, HPolytope

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def skew_box():
    return Box([[3, -1], [-1, 4]], [0, 8], [19, 26])


@pytest.fixture
def triangle():
    # x1 + x2 >= 1, 2 x1 - x2 <= 2, -x1 + 2 x2 <= 2
    return HPolytope.from_relations([[1, 1], [2, -1], [-1, 2]], [1, 2, 2], ["ge", "le", "le"])
