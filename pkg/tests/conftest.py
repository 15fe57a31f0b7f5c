import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "partiti",
    max_examples=50,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("partiti")


@pytest.fixture(scope="session")
def warm_kernel():
    """Force the jitted kernel to compile (or load from cache) before any
    timed assertion runs."""
    from partiti import ClueGrid, solve

    solve(ClueGrid.from_rows([[1]]))
    return True
