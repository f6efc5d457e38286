"""
Metrics Export - Save run metrics to local JSON files.
"""

import json
from datetime import datetime
from pathlib import Path
from typing import Any

from ..storage.atomic import atomic_write_text
from .config import get_config


class MetricsExporter:
    """
    Export experiment run metrics to local storage.

    Usage:
        exporter = MetricsExporter(run_id="paper_20261019_120000")
        exporter.set_stats("outer_iterations", 500)
        exporter.set_timing("solve_seconds", 0.42)
        exporter.export()  # metrics_dir/2026-10-19/paper_20261019_120000.json
    """

    def __init__(self, run_id: str, metrics_dir: Path | None = None):
        self.run_id = run_id
        self.metrics_dir = Path(metrics_dir) if metrics_dir is not None else get_config().metrics_dir

        self.metrics: dict[str, Any] = {
            "run_id": run_id,
            "started_at": datetime.now().isoformat(),
            "completed_at": None,
            "config": {},
            "timing": {},
            "stats": {},
            "custom": {},
        }

    def set(self, key: str, value: Any, category: str = "custom") -> None:
        """
        Set a metric value.

        Args:
            key: Metric name
            value: Metric value
            category: One of "config", "timing", "stats", "custom"
        """
        if category in ("config", "timing", "stats", "custom"):
            self.metrics[category][key] = value
        else:
            self.metrics[key] = value

    def set_timing(self, key: str, value: float) -> None:
        """Set a timing metric (seconds)."""
        self.metrics["timing"][key] = value

    def set_stats(self, key: str, value: Any) -> None:
        """Set a stats metric."""
        self.metrics["stats"][key] = value

    def set_from_report(self, report: Any) -> None:
        """Pull the headline numbers out of a SolveReport."""
        self.metrics["config"].update(report.config.resolved())
        self.set_stats("outer_iterations", report.outer_iterations_used)
        self.set_stats("converged", report.converged)
        self.set_stats("final_ritz_values", [float(v) for v in report.final.ritz_values])
        if report.residuals_per_iteration:
            self.set_stats("final_max_residual", float(report.residuals_per_iteration[-1].max()))

    def export(self) -> Path:
        """
        Write metrics to metrics_dir/<date>/<run_id>.json.

        Returns:
            Path where metrics were saved

        Raises:
            ExperimentIOError: If the directory or file cannot be written
        """
        self.metrics["completed_at"] = datetime.now().isoformat()

        start = datetime.fromisoformat(self.metrics["started_at"])
        end = datetime.fromisoformat(self.metrics["completed_at"])
        self.metrics["timing"]["total_runtime_seconds"] = (end - start).total_seconds()

        date_dir = self.metrics_dir / datetime.now().strftime("%Y-%m-%d")
        local_path = date_dir / f"{self.run_id}.json"
        return atomic_write_text(local_path, json.dumps(self.metrics, indent=2, default=str))


def generate_run_id(prefix: str) -> str:
    """Generate a unique run ID with timestamp."""
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
    return f"{prefix}_{timestamp}"
