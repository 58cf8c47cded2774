"""
`elbowkit detect`: elbow decision for one curve file
"""
import click
from pydantic import ValidationError

from elbowkit.commands.common import CRITERIA, build_criterion, emit_json, fail, result_payload
from elbowkit.handlers.curve_file_parser import read_curve_file, write_curve_file
from elbowkit.processors.detect import elbow_on_raw
from elbowkit.utils.custom_exceptions import ElbowKitError
from elbowkit.utils.logging_config import get_logger, log_command_access


@click.command('detect')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--criterion', type=click.Choice(CRITERIA, case_sensitive=False), default='uaed', show_default=True,
              help='Penalty policy for C(k) = V(k) + lambda*k')
@click.option('--n', 'n_data', type=int, default=None, help='Sample size for BIC and HQIC')
@click.option('--lambda', 'lam', type=float, default=None, help='Slope for --criterion custom')
@click.option('--alpha', type=float, default=None, help='Weight of error reduction (alpha-UAED); 0.5 is UAED')
@click.option('--tol', type=float, default=None, help='Monotonicity tolerance (default: relative 1e-9)')
@click.option('--dump-curve', type=click.Path(dir_okay=False), default=None,
              help='Write the validated curve back out as a curve file')
def detect(path, criterion, n_data, lam, alpha, tol, dump_curve):
    """Print the elbow k* of the curve in PATH as JSON

    PATH is a k,value CSV whose k values step by exactly 1 from the first row;
    files with gaps in k are rejected.
    """
    logger = get_logger()
    log_command_access(logger, 'detect', {
        'path': path, 'criterion': criterion, 'n': n_data, 'lambda': lam, 'alpha': alpha, 'tol': tol
    })

    try:
        crit = build_criterion(criterion.lower(), n_data, lam, alpha)
        curve = read_curve_file(path, tol=tol)
        # the curve is already clamped; re-validation must not loosen it
        result = elbow_on_raw(curve.values, crit, tol=0.0, k_min=curve.k_min)
        if dump_curve:
            write_curve_file(dump_curve, curve)
    except (ElbowKitError, ValidationError) as e:
        fail(logger, 'detect', e)

    emit_json(result_payload(result))
