import pytest
from hypothesis import HealthCheck, settings

from exsieve.gen import random_explicit_pmf, random_family

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def family_corpus():
    """1000 seeded random families, atoms <= 14 and events <= 10."""
    return [random_family(seed) for seed in range(1000)]


@pytest.fixture(scope="session")
def pmf_corpus():
    """500 seeded explicit pmfs with support bound 12."""
    return [random_explicit_pmf(seed) for seed in range(500)]
