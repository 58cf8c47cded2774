import logging
import os
import sys
from datetime import datetime, timezone
from typing import Dict, Any, Optional
import json

LOGGER_NAME = 'elbowkit'


class StructuredFormatter(logging.Formatter):
    """Custom formatter for structured logging"""

    def format(self, record):
        log_entry = {
            'timestamp': datetime.now(timezone.utc).isoformat().replace('+00:00', 'Z'),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
            'module': record.module,
            'function': record.funcName,
            'line': record.lineno
        }

        # Add extra fields if present
        if hasattr(record, 'extra_data'):
            log_entry.update(record.extra_data)

        return json.dumps(log_entry, default=str)


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """Configure the elbowkit logger.

    Console output goes to stderr so stdout stays valid JSON. Errors are
    also appended to ELBOWKIT_LOG_FILE when that variable is set.
    """
    logger = logging.getLogger(LOGGER_NAME)
    level_name = (level or os.getenv('ELBOWKIT_LOG_LEVEL', 'WARNING')).upper()
    logger.setLevel(logging.DEBUG)

    # Remove existing handlers
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level_name, logging.WARNING))
    console_handler.setFormatter(StructuredFormatter())
    logger.addHandler(console_handler)

    log_file = os.getenv('ELBOWKIT_LOG_FILE')
    if log_file:
        file_handler = logging.FileHandler(log_file, mode='a')
        file_handler.setLevel(logging.ERROR)
        file_handler.setFormatter(StructuredFormatter())
        logger.addHandler(file_handler)

    # Prevent duplicate logs
    logger.propagate = False

    return logger


def get_logger() -> logging.Logger:
    return logging.getLogger(LOGGER_NAME)


def log_command_access(logger: logging.Logger, command: str, arguments: Dict[str, Any]):
    """Log a CLI command invocation"""
    logger.info(
        f"Command invoked: {command}",
        extra={'extra_data': {
            'event_type': 'command_access',
            'command': command,
            'arguments': arguments
        }}
    )


def log_detection(logger: logging.Logger, criterion: str, k_star: int, n_ties: int, lambda_used: float, k_max: int):
    """Log an elbow decision"""
    logger.info(
        f"Elbow detected with {criterion}: k*={k_star}",
        extra={'extra_data': {
            'event_type': 'elbow_detected',
            'criterion': criterion,
            'k_star': k_star,
            'tie_count': n_ties,
            'lambda': lambda_used,
            'k_max': k_max
        }}
    )


def log_run_failure(logger: logging.Logger, kind: str, run_index: int, seed: int, error: Exception):
    """Log a failed Monte-Carlo run"""
    logger.error(
        f"Experiment run failed: {kind} run {run_index}",
        extra={'extra_data': {
            'event_type': 'run_failed',
            'experiment_kind': kind,
            'run_index': run_index,
            'seed': seed,
            'error_type': type(error).__name__,
            'error_message': str(error)
        }}
    )


def log_experiment_summary(logger: logging.Logger, kind: str, runs: int, workers: int, duration: float, p_correct: Dict[str, float], rss_mb: Optional[float] = None):
    """Log a completed experiment"""
    extra_data = {
        'event_type': 'experiment_complete',
        'experiment_kind': kind,
        'runs': runs,
        'workers': workers,
        'duration_seconds': round(duration, 3),
        'p_correct': p_correct
    }

    if rss_mb is not None:
        extra_data['rss_mb'] = round(rss_mb, 2)

    logger.info(
        f"Experiment finished: {kind} ({runs} runs)",
        extra={'extra_data': extra_data}
    )
