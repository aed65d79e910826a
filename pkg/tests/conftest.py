import pytest
from hypothesis import HealthCheck, settings

from cornerperc import ExplicitFields

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def unit_square() -> ExplicitFields:
    """Fields pinning a 4-cycle through the origin: (0,0)-(1,0)-(1,1)-(0,1)."""
    return ExplicitFields(vertical={0: -1, 1: 1}, horizontal={0: -1, 1: 1})


@pytest.fixture
def all_ones() -> ExplicitFields:
    return ExplicitFields(default=1)
