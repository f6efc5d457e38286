import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from eigshift.linalg import DenseSymMatrix
from eigshift.runtime import HarnessConfig, set_config

settings.register_profile(
    "default", settings(suppress_health_check=[HealthCheck.too_slow], max_examples=50, deadline=None)
)

settings.load_profile("default")


@pytest.fixture(autouse=True)
def harness_config(tmp_path):
    """Keep every run's output and metrics inside the test's tmp_path."""
    config = HarnessConfig(
        out_dir=tmp_path / "output",
        metrics_dir=tmp_path / "metrics",
        export_metrics=False,
        sweep_workers=1,
        verbose=False,
        window_start=20,
    )
    set_config(config)
    yield config
    set_config(None)


@pytest.fixture
def example_matrix():
    return DenseSymMatrix(np.diag([1.0, 2.0, 2.01, 4.0]))


@pytest.fixture
def random_symmetric():
    def make(n: int, seed: int) -> DenseSymMatrix:
        B = np.random.default_rng(seed).standard_normal((n, n))
        return DenseSymMatrix(B + B.T)

    return make
