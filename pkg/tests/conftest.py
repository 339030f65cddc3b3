from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

TABLES = Path(__file__).resolve().parents[1] / "src" / "feasichar" / "data" / "tables"
EXPECTED = Path(__file__).resolve().parents[1] / "src" / "feasichar" / "data" / "expected"


@pytest.fixture(scope="session")
def tables_dir() -> Path:
    return TABLES


@pytest.fixture(scope="session")
def expected_dir() -> Path:
    return EXPECTED
