"""
Helpers shared by the command implementations
"""
import json
import math
import sys
from typing import Any, Dict, Optional

import click
from pydantic import ValidationError

from elbowkit.processors.detect import Criterion, ElbowResult
from elbowkit.utils.custom_exceptions import ElbowKitError

CRITERIA = ('uaed', 'bic', 'aic', 'hqic', 'custom', 'alpha')
VALIDATION_EXIT_CODE = 2


def safe_float(value: float) -> Optional[float]:
    """JSON-safe float: non-finite values become null"""
    value = float(value)
    return value if math.isfinite(value) else None


def build_criterion(name: str, n_data: Optional[int], lam: Optional[float], alpha: Optional[float]) -> Criterion:
    """Criterion from command-line flags; --alpha selects alpha-UAED"""
    if alpha is not None:
        if name not in ('uaed', 'alpha'):
            raise click.UsageError(f"--alpha applies to the UAED family, not '{name}'")
        return Criterion.alpha_uaed(alpha)
    if name == 'alpha':
        raise click.UsageError("--criterion alpha requires --alpha")
    if name == 'custom':
        if lam is None:
            raise click.UsageError("--criterion custom requires --lambda")
        return Criterion.custom(lam)
    if name in ('bic', 'hqic'):
        return Criterion(kind=name, n_data=n_data)
    return Criterion(kind=name)


def result_payload(result: ElbowResult) -> Dict[str, Any]:
    return {
        'criterion': result.criterion,
        'k_star': result.reported_k_star,
        'ties': result.reported_ties,
        'tied': result.tied,
        'lambda': safe_float(result.lambda_used),
        'k_max': result.k_max,
        'k_min': result.k_min,
        'costs': [safe_float(c) for c in result.costs],
    }


def emit_json(payload: Dict[str, Any]):
    click.echo(json.dumps(payload, indent=2))


def fail(logger, command: str, error: Exception):
    """Log an error, print it to stderr and exit with its code"""
    if isinstance(error, ElbowKitError):
        exit_code, error_code, context, message = error.exit_code, error.error_code, error.context, error.detail
    elif isinstance(error, ValidationError):
        exit_code, error_code, context = VALIDATION_EXIT_CODE, 'VALIDATION_ERROR', {'errors': error.error_count()}
        message = '; '.join(f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in error.errors())
    else:
        raise error

    logger.error(
        f"{command} failed: {message}",
        extra={'extra_data': {
            'event_type': 'command_error',
            'command': command,
            'error_code': error_code,
            'context': context
        }}
    )
    click.echo(f"Error: {message}", err=True)
    sys.exit(exit_code)
