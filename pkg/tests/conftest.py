from pathlib import Path

import pytest

from orbifold24.cli import _bundled_scenarios
from orbifold24.scenarios import run_scenario

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def scenario_reports():
    """Run the five bundled scenarios once for the whole session."""
    return {sc.name: run_scenario(sc) for sc in _bundled_scenarios()}


@pytest.fixture(scope="session")
def golden():
    def load(name):
        return (DATA / f"{name}.tbl").read_text()

    return load
