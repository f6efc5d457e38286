"""Process-level configuration and run metrics."""

from .config import HarnessConfig, get_config, set_config
from .metrics import MetricsExporter, generate_run_id

__all__ = ["HarnessConfig", "get_config", "set_config", "MetricsExporter", "generate_run_id"]
