"""
`elbowkit experiment`: Monte-Carlo reproduction of the synthetic studies
"""
from pathlib import Path

import click
from pydantic import ValidationError

from elbowkit.builders.report_builder import histogram_frame, report_to_json, summary_frame
from elbowkit.commands.common import fail
from elbowkit.handlers.experiment_runner import ExperimentConfig, default_methods, run_experiment
from elbowkit.handlers.scenario_generator import ARScenario, MixtureScenario, PolyScenario
from elbowkit.processors.detect import Criterion
from elbowkit.utils.custom_exceptions import CurveFileReadError, ElbowKitError
from elbowkit.utils.logging_config import get_logger, log_command_access
from elbowkit.utils.settings import DEFAULT_RESTARTS, DEFAULT_RUNS

DEFAULT_OUT = './elbowkit-report'
REPORT_FILE = 'report.json'
HISTOGRAM_FILE = 'histogram.csv'


def _run_options(default_runs: int):
    options = [
        click.option('--runs', type=int, default=default_runs, show_default=True, help='Monte-Carlo repetitions'),
        click.option('--seed', 'base_seed', type=int, default=0, show_default=True, help='Base seed for derived run seeds'),
        click.option('--out', type=click.Path(file_okay=False), default=DEFAULT_OUT, show_default=True,
                     help='Directory for report.json and histogram.csv'),
        click.option('--workers', type=int, default=None, help='Worker threads (capped by ELBOWKIT_THREADS)'),
        click.option('--alpha', type=float, default=None, help='Add alpha-UAED with this weight to the methods'),
    ]

    def decorator(command):
        for option in reversed(options):
            command = option(command)
        return command
    return decorator


def _write_outputs(report, out: str):
    directory = Path(out)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        (directory / REPORT_FILE).write_text(report_to_json(report) + '\n', encoding='utf-8')
        histogram_frame(report).to_csv(directory / HISTOGRAM_FILE, index=False)
    except OSError as e:
        raise CurveFileReadError(str(directory), e.strerror or str(e), operation='write')


def _execute(kind: str, scenario_factory, runs, base_seed, out, workers, alpha, arguments):
    logger = get_logger()
    log_command_access(logger, f'experiment {kind}', arguments)

    try:
        scenario = scenario_factory()
        methods = None
        if alpha is not None:
            methods = default_methods(kind) + [Criterion.alpha_uaed(alpha)]
        cfg = ExperimentConfig(kind=kind, scenario=scenario, methods=methods, runs=runs, base_seed=base_seed)
        report = run_experiment(cfg, workers=workers)
        _write_outputs(report, out)
    except (ElbowKitError, ValidationError) as e:
        fail(logger, f'experiment {kind}', e)

    offset = f" (index k = {report.decision_offset} less than the cluster count)" if report.decision_offset else ''
    click.echo(f"{kind}: true k = {report.true_k}{offset}, {report.runs} runs, {report.duration_seconds:.1f}s", err=True)
    click.echo(summary_frame(report).to_string(index=False), err=True)
    click.echo(report_to_json(report))


@click.group('experiment')
def experiment():
    """Reproduce the synthetic order-selection and clustering experiments"""


@experiment.command('ar')
@click.option('--order', type=int, default=3, show_default=True, help='True AR order')
@click.option('--sigma', type=float, default=0.5, show_default=True, help='Noise standard deviation')
@click.option('--T', 'T', type=int, default=2000, show_default=True, help='Series length')
@click.option('--K', 'K', type=int, default=100, show_default=True, help='Largest candidate order')
@click.option('--coefficients', type=click.Choice(['formula', 'verbatim']), default='formula', show_default=True)
@click.option('--estimator', type=click.Choice(['auto', 'cls', 'yule_walker']), default='auto', show_default=True)
@_run_options(DEFAULT_RUNS)
def ar(order, sigma, T, K, coefficients, estimator, runs, base_seed, out, workers, alpha):
    """AR(order) series; candidate orders 0..K"""
    _execute(
        'ar',
        lambda: ARScenario(true_order=order, sigma_eps=sigma, T=T, K=K, coefficients=coefficients, estimator=estimator),
        runs, base_seed, out, workers, alpha,
        {'order': order, 'sigma': sigma, 'T': T, 'K': K, 'coefficients': coefficients,
         'estimator': estimator, 'runs': runs, 'seed': base_seed}
    )


@experiment.command('poly')
@click.option('--N', 'N', type=int, default=100, show_default=True, help='Number of samples')
@click.option('--K', 'K', type=int, default=10, show_default=True, help='Largest candidate order')
@click.option('--sigma', type=float, default=1.0, show_default=True, help='Noise standard deviation')
@_run_options(DEFAULT_RUNS)
def poly(N, K, sigma, runs, base_seed, out, workers, alpha):
    """Quartic regression data; candidate orders 0..K"""
    _execute(
        'poly',
        lambda: PolyScenario(n_samples=N, K=K, sigma=sigma),
        runs, base_seed, out, workers, alpha,
        {'N': N, 'K': K, 'sigma': sigma, 'runs': runs, 'seed': base_seed}
    )


@experiment.command('cluster')
@click.option('--K', 'K', type=int, default=50, show_default=True, help='Largest cluster index (K + 1 clusters)')
@click.option('--restarts', type=int, default=DEFAULT_RESTARTS, show_default=True,
              help='k-means restarts averaged per cluster count')
@click.option('--points', type=int, default=2500, show_default=True, help='Points drawn from the mixture')
@_run_options(1)
def cluster(K, restarts, points, runs, base_seed, out, workers, alpha):
    """Five-component Gaussian mixture; cluster counts 1..K+1"""
    _execute(
        'cluster',
        lambda: MixtureScenario(n_points=points, K=K, restarts=restarts),
        runs, base_seed, out, workers, alpha,
        {'K': K, 'restarts': restarts, 'points': points, 'runs': runs, 'seed': base_seed}
    )
