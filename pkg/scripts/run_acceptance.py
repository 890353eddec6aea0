#!/usr/bin/env python3
"""
Script to run the acceptance suites with proper environment setup.
"""

import os
import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
services_root = project_root / "services" / "graft-engine"
sys.path.insert(0, str(project_root))
sys.path.insert(0, str(services_root))


def setup_environment() -> None:
    """Set up environment variables for an acceptance run."""

    # Logging: JSON lines on stderr
    os.environ.setdefault("GRAFTS_LOG_LEVEL", "WARNING")
    os.environ.setdefault("GRAFTS_LOG_FORMAT", "json")

    # Runner
    os.environ.setdefault("GRAFTS_WORKERS", str(os.cpu_count() or 1))

    # Reports land next to the repository
    reports = project_root / "reports"
    reports.mkdir(exist_ok=True)
    os.environ.setdefault("GRAFTS_METRICS_FILE", str(reports / "metrics.prom"))

    print("Environment setup complete:", file=sys.stderr)
    print(f"  - Workers: {os.getenv('GRAFTS_WORKERS')}", file=sys.stderr)
    print(f"  - Metrics: {os.getenv('GRAFTS_METRICS_FILE')}", file=sys.stderr)
    return reports


def main() -> int:
    reports = setup_environment()

    from src.interfaces.cli import main as grafts

    runs = [
        ["verify", "--enumerate", "6", "--max-edges", "8",
         "--report", str(reports / "exhaustive.json")],
        ["verify", "--random", "2000", "--seed", "0", "--vertices", "10",
         "--max-edges", "14",
         "--report", str(reports / "random.json")],
    ]
    status = 0
    for argv in runs:
        print("Running: grafts " + " ".join(argv), file=sys.stderr)
        status = max(status, grafts(argv))
    return status


if __name__ == "__main__":
    sys.exit(main())
