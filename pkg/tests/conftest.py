import pytest
from hypothesis import HealthCheck, settings

from flatmink.planes import named_plane

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def classical():
    return named_plane("classical")


@pytest.fixture(scope="session")
def hart2():
    return named_plane("hartmann")


@pytest.fixture(scope="session")
def mixed():
    from flatmink.classify import normalise
    return normalise(named_plane("mixed"))
