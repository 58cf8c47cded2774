"""
Monte-Carlo experiment harness

Run r draws its dataset from derive(base_seed, r), builds the error curve
and records the decision of every method. Runs are independent, so they
are spread over a thread pool; results are gathered by run index, which
keeps reports identical for any worker count.
"""
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Literal, Optional, Union

import psutil
from pydantic import BaseModel, ConfigDict, Field, model_validator
from threadpoolctl import threadpool_limits

from elbowkit.builders.report_builder import ExperimentReport, build_report
from elbowkit.handlers.scenario_generator import (
    ARScenario,
    MixtureScenario,
    PolyScenario,
    gen_ar,
    gen_mixture,
    gen_poly,
)
from elbowkit.processors.curve import ErrorCurve, normalize
from elbowkit.processors.detect import Criterion, elbow
from elbowkit.processors.model_fitting import (
    ar_v_curve,
    cluster_v_curve,
    effective_sample_size,
    poly_v_curve,
)
from elbowkit.utils.custom_exceptions import RunFailedError
from elbowkit.utils.logging_config import get_logger, log_experiment_summary, log_run_failure
from elbowkit.utils.seeding import derive
from elbowkit.utils.settings import DEFAULT_RUNS, worker_count

logger = get_logger()

ExperimentKind = Literal['ar', 'poly', 'cluster']

_SCENARIO_TYPES = {
    'ar': ARScenario,
    'poly': PolyScenario,
    'cluster': MixtureScenario,
}


def default_methods(kind: str) -> List[Criterion]:
    """UAED everywhere; the likelihood criteria only where a likelihood exists"""
    if kind == 'cluster':
        return [Criterion.uaed()]
    return [Criterion.uaed(), Criterion.bic(), Criterion.aic(), Criterion.hqic()]


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ExperimentKind
    scenario: Union[ARScenario, PolyScenario, MixtureScenario]
    methods: List[Criterion] = Field(min_length=1)
    runs: int = Field(default=DEFAULT_RUNS, ge=1)
    base_seed: int = Field(default=0, ge=0)

    @model_validator(mode='before')
    @classmethod
    def _default_methods(cls, data):
        if isinstance(data, dict) and data.get('methods') is None:
            data = {**data, 'methods': default_methods(data.get('kind'))}
        return data

    @model_validator(mode='after')
    def _check_config(self) -> 'ExperimentConfig':
        expected = _SCENARIO_TYPES[self.kind]
        if not isinstance(self.scenario, expected):
            raise ValueError(f"{self.kind} experiment needs a {expected.__name__}, got {type(self.scenario).__name__}")

        names = [method.name for method in self.bound_methods()]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate methods: {names}")
        return self

    @property
    def K(self) -> int:
        return self.scenario.K

    @property
    def true_k(self) -> int:
        if self.kind == 'cluster':
            return self.scenario.true_clusters - 1
        return self.scenario.true_order

    @property
    def decision_offset(self) -> int:
        # index k stands for k + 1 clusters
        return 1 if self.kind == 'cluster' else 0

    @property
    def n_data(self) -> int:
        s = self.scenario
        if self.kind == 'ar':
            return effective_sample_size(s.T, s.K, s.estimator)
        if self.kind == 'poly':
            return s.n_samples
        return s.n_points

    def bound_methods(self) -> List[Criterion]:
        return [method.with_n(self.n_data) for method in self.methods]


def build_curve(cfg: ExperimentConfig, seed: int) -> ErrorCurve:
    """Dataset for one run, turned into its raw error curve"""
    s = cfg.scenario
    if cfg.kind == 'ar':
        return ar_v_curve(gen_ar(s, seed), s.K, estimator=s.estimator)
    if cfg.kind == 'poly':
        x, y = gen_poly(s, seed)
        return poly_v_curve(x, y, s.K)
    return cluster_v_curve(gen_mixture(s, seed), s.K, s.restarts, seed)


def _run_one(cfg: ExperimentConfig, methods: List[Criterion], run_index: int) -> List[int]:
    seed = derive(cfg.base_seed, run_index)
    try:
        # OpenMP limits are per thread; the BLAS limit is set once in run_experiment
        with threadpool_limits(limits=1):
            nc = normalize(build_curve(cfg, seed))
            return [elbow(nc, method).k_star for method in methods]
    except Exception as e:
        log_run_failure(logger, cfg.kind, run_index, seed, e)
        raise RunFailedError(run_index, seed, e) from e


def run_experiment(cfg: ExperimentConfig, workers: Optional[int] = None) -> ExperimentReport:
    """
    Run every Monte-Carlo repetition of an experiment

    Args:
        cfg: Experiment configuration
        workers: Thread count; defaults to the logical CPU count, capped
            by ELBOWKIT_THREADS

    Returns:
        ExperimentReport: Histograms, correct-decision rates and labels

    Raises:
        RunFailedError: For the lowest-indexed run that failed
    """
    n_workers = worker_count(workers)
    methods = cfg.bound_methods()
    start = time.perf_counter()

    with threadpool_limits(limits=1):
        executor = ThreadPoolExecutor(max_workers=n_workers, thread_name_prefix='elbowkit-run')
        try:
            futures = [executor.submit(_run_one, cfg, methods, r) for r in range(cfg.runs)]
            decisions = [future.result() for future in futures]
        finally:
            executor.shutdown(wait=True, cancel_futures=True)

    duration = time.perf_counter() - start
    report = build_report(cfg, [method.name for method in methods], decisions, duration)

    log_experiment_summary(
        logger,
        cfg.kind,
        cfg.runs,
        n_workers,
        duration,
        {outcome.method: outcome.p_correct for outcome in report.methods},
        rss_mb=psutil.Process().memory_info().rss / (1024 * 1024)
    )
    return report
