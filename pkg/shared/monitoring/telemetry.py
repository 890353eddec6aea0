"""Structured logging and Prometheus metrics for verification runs."""

import logging
import sys
from typing import Any, Optional

import structlog
from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile


registry = CollectorRegistry()

check_verdicts_total = Counter(
    'graft_check_verdicts_total',
    'Total number of check verdicts',
    ['check_id', 'verdict'],
    registry=registry
)

check_duration_seconds = Histogram(
    'graft_check_duration_seconds',
    'Duration of a single check on a single graft in seconds',
    ['check_id'],
    buckets=[0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0],
    registry=registry
)

instances_total = Counter(
    'graft_instances_total',
    'Total number of grafts generated for verification',
    ['generator'],
    registry=registry
)


def setup_structured_logging(
    service_name: str, level: str = "WARNING", fmt: str = "json"
) -> Any:
    """Set up structured logging on stderr.

    stdout carries command results only, so every log line goes to stderr.
    """
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(message)s",
        force=True,
    )
    renderer = (
        structlog.dev.ConsoleRenderer(colors=False)
        if fmt == "console"
        else structlog.processors.JSONRenderer(sort_keys=True)
    )
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    return structlog.get_logger(service_name)


class MetricsCollector:
    """Centralized metrics collection."""

    @staticmethod
    def record_check(
        check_id: str, verdict: str, duration: Optional[float] = None
    ) -> None:
        """Record one check verdict and, when timed, its duration."""
        check_verdicts_total.labels(check_id=check_id, verdict=verdict).inc()
        if duration is not None:
            check_duration_seconds.labels(check_id=check_id).observe(duration)

    @staticmethod
    def record_instance(generator: str) -> None:
        instances_total.labels(generator=generator).inc()

    @staticmethod
    def verdict_count(check_id: str, verdict: str) -> float:
        value = registry.get_sample_value(
            'graft_check_verdicts_total', {'check_id': check_id, 'verdict': verdict}
        )
        return value or 0.0

    @staticmethod
    def write(path: str) -> None:
        """Dump every metric in the Prometheus text format."""
        write_to_textfile(path, registry)

