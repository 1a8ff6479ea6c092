import pytest

from wavebro import engine, scenario


@pytest.fixture(scope="session")
def benchmark_result():
    """Full 600 s run of the high-energy site scenario (shared, ~4 s)."""
    return engine.run(scenario.bundled_scenario("humboldt_winter"))


@pytest.fixture(scope="session")
def small_state_result():
    """Full 600 s run of the low-energy site scenario."""
    return engine.run(scenario.bundled_scenario("kos_winter"))
