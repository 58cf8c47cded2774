"""
`elbowkit compare`: every information criterion side by side on one curve
"""
import click
import pandas as pd
from pydantic import ValidationError

from elbowkit.commands.common import safe_float, emit_json, fail, result_payload
from elbowkit.handlers.curve_file_parser import read_curve_file
from elbowkit.processors.curve import normalize
from elbowkit.processors.detect import compare as compare_criteria
from elbowkit.utils.custom_exceptions import ElbowKitError
from elbowkit.utils.logging_config import get_logger, log_command_access


def _comparison_table(results) -> str:
    rows = [{
        'criterion': name,
        'lambda': safe_float(result.lambda_used),
        'k*': result.reported_k_star,
        'tie': 'yes' if result.tied else '',
    } for name, result in results.items()]
    return pd.DataFrame(rows, columns=['criterion', 'lambda', 'k*', 'tie']).to_string(index=False)


@click.command('compare')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--n', 'n_data', type=int, required=True, help='Number of data points behind the curve')
@click.option('--alpha', type=float, default=None, help='Also evaluate alpha-UAED with this weight')
@click.option('--tol', type=float, default=None, help='Monotonicity tolerance (default: relative 1e-9)')
def compare(path, n_data, alpha, tol):
    """Compare UAED, BIC, AIC and HQIC decisions on the curve in PATH

    PATH is a k,value CSV whose k values step by exactly 1 from the first row;
    files with gaps in k are rejected.
    """
    logger = get_logger()
    log_command_access(logger, 'compare', {'path': path, 'n': n_data, 'alpha': alpha, 'tol': tol})

    try:
        nc = normalize(read_curve_file(path, tol=tol))
        results = compare_criteria(nc, n_data, alpha=alpha)
    except (ElbowKitError, ValidationError) as e:
        fail(logger, 'compare', e)

    click.echo(_comparison_table(results), err=True)
    emit_json({
        'n_data': n_data,
        'k_max': nc.k_max,
        'k_min': nc.k_min,
        'results': [result_payload(result) for result in results.values()],
    })
