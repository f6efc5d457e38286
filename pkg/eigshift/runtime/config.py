"""
Harness Configuration - Load settings from environment variables.
"""

import os
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ("1", "true", "yes")


def _env_int(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}", variable=name) from e


@dataclass
class HarnessConfig:
    """
    Configuration for experiment runs.

    Loads from environment variables (and a .env file, via the CLI) with sensible defaults.

    Environment Variables:
        EIGSHIFT_OUT_DIR: Default output directory for traces and plots (default: output)
        EIGSHIFT_METRICS_DIR: Where run metrics JSON is written (default: .eigshift/metrics)
        EIGSHIFT_EXPORT_METRICS: Export metrics for each run (default: true)
        EIGSHIFT_SWEEP_WORKERS: Thread pool size for gap sweeps (default: 1)
        EIGSHIFT_VERBOSE: Log every outer iteration (default: false)
        EIGSHIFT_WINDOW_START: Default start of the measured-rate window (default: 20)
    """

    out_dir: Path = field(default_factory=lambda: Path(os.getenv("EIGSHIFT_OUT_DIR", "output")))
    metrics_dir: Path = field(default_factory=lambda: Path(os.getenv("EIGSHIFT_METRICS_DIR", ".eigshift/metrics")))
    export_metrics: bool = field(default_factory=lambda: _env_bool("EIGSHIFT_EXPORT_METRICS", "true"))
    sweep_workers: int = field(default_factory=lambda: _env_int("EIGSHIFT_SWEEP_WORKERS", "1"))
    verbose: bool = field(default_factory=lambda: _env_bool("EIGSHIFT_VERBOSE", "false"))
    window_start: int = field(default_factory=lambda: _env_int("EIGSHIFT_WINDOW_START", "20"))

    # Component ratios below this are roundoff, not signal
    ratio_floor: float = 1e-9

    def __post_init__(self):
        """Validate configuration."""
        if self.sweep_workers < 1:
            raise ConfigError("EIGSHIFT_SWEEP_WORKERS must be >= 1", sweep_workers=self.sweep_workers)
        if self.window_start < 0:
            raise ConfigError("EIGSHIFT_WINDOW_START must be >= 0", window_start=self.window_start)


# Global config instance (can be overridden)
_config: HarnessConfig | None = None


def get_config() -> HarnessConfig:
    """Get or create the global harness configuration."""
    global _config
    if _config is None:
        _config = HarnessConfig()
    return _config


def set_config(config: HarnessConfig | None) -> None:
    """Override the global harness configuration (None resets to the environment)."""
    global _config
    _config = config
