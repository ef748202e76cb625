import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from virlab.estimator import SamplingPlan
from virlab.potentials import hard_sphere, square_well

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def published_tables():
    """Published tables as {table_id: {row: {n: value}}}."""
    payload = json.loads((FIXTURES / "published_tables.json").read_text(encoding="utf-8"))
    orders = payload["orders"]
    return {
        int(table_id): {row: dict(zip(orders, values)) for row, values in rows.items()}
        for table_id, rows in payload["tables"].items()
    }


@pytest.fixture
def hs3():
    return hard_sphere(sigma=1.0, dim=3)


@pytest.fixture
def well3():
    return square_well(sigma=1.0, lam=1.5, beta_eps=0.5, dim=3)


@pytest.fixture
def small_plan():
    return SamplingPlan(shard_size=4096, min_class_samples=200, workers=1)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def quiet_env(tmp_path):
    """Environment for CLI runs: warnings only, data under tmp_path."""
    return {"VLAB_LOG_LEVEL": "WARNING", "VLAB_DATA_DIR": str(tmp_path / "data")}
