"""
Synthetic dataset generators for the order-selection and clustering experiments
"""
from typing import List, Literal, Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.signal import lfilter

from elbowkit.utils.custom_exceptions import UnstableSeriesError
from elbowkit.utils.settings import AR_BURN_IN, AR_OVERFLOW_GUARD, POLY_INPUT_RANGE

# Coefficient lists exactly as printed for the order-3 and order-5 scenarios.
# They disagree with the alternating exponential formula.
VERBATIM_AR_COEFFICIENTS = {
    3: (1.0, -0.7408, 0.5488, 0.1),
    5: (1.0, -0.7408, 0.5488, 0.1, -0.4066, 0.3012),
}

POLY_COEFFICIENTS = (4.05, -2.025, -2.225, 0.1, 0.1)

MIXTURE_MEANS = (
    (3.0, 0.0),
    (14.0, 5.0),
    (-5.0, -10.0),
    (10.0, -10.0),
    (-5.0, 5.0),
)
MIXTURE_COVARIANCES = (
    ((0.3, 0.0), (0.0, 2.0)),
    ((1.5, 0.7), (0.7, 1.5)),
    ((1.5, 0.7), (0.7, 1.5)),
    ((1.5, 0.0), (0.0, 1.5)),
    ((1.0, -0.8), (-0.8, 1.0)),
)


def formula_coefficients(order: int) -> np.ndarray:
    """theta_i = (-1)^(i-1) exp(-0.3 (i-1)), i = 1..order"""
    i = np.arange(order)
    return np.where(i % 2 == 0, 1.0, -1.0) * np.exp(-0.3 * i)


class ARScenario(BaseModel):
    model_config = ConfigDict(frozen=True)

    true_order: int = Field(default=3, ge=0)
    sigma_eps: float = Field(default=0.5, ge=0, allow_inf_nan=False)
    T: int = Field(default=2000, ge=3)
    K: int = Field(default=100, ge=1)
    coefficients: Literal['formula', 'verbatim'] = 'formula'
    coefficient_override: Optional[Tuple[float, ...]] = None
    estimator: Literal['auto', 'cls', 'yule_walker'] = 'auto'

    @model_validator(mode='after')
    def _check_sizes(self) -> 'ARScenario':
        if self.T <= self.K + 1:
            raise ValueError(f"T must exceed K + 1 (T={self.T}, K={self.K})")
        if self.true_order > self.K:
            raise ValueError(f"true_order {self.true_order} exceeds K={self.K}")
        if self.coefficient_override is None and self.coefficients == 'verbatim' \
                and self.true_order not in VERBATIM_AR_COEFFICIENTS:
            raise ValueError(f"no verbatim coefficient list for order {self.true_order}")
        return self

    def coefficient_vector(self) -> np.ndarray:
        if self.coefficient_override is not None:
            return np.array(self.coefficient_override, dtype=np.float64)
        if self.coefficients == 'verbatim':
            return np.array(VERBATIM_AR_COEFFICIENTS[self.true_order], dtype=np.float64)
        return formula_coefficients(self.true_order)


class PolyScenario(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_samples: int = Field(default=100, ge=2)
    coefficients: Tuple[float, ...] = POLY_COEFFICIENTS
    sigma: float = Field(default=1.0, ge=0, allow_inf_nan=False)
    x_range: Tuple[float, float] = POLY_INPUT_RANGE
    K: int = Field(default=10, ge=0)

    @property
    def true_order(self) -> int:
        return len(self.coefficients) - 1

    @model_validator(mode='after')
    def _check_sizes(self) -> 'PolyScenario':
        if self.n_samples <= self.K + 1:
            raise ValueError(f"n_samples must exceed K + 1 (N={self.n_samples}, K={self.K})")
        if not self.x_range[0] < self.x_range[1]:
            raise ValueError(f"empty input range {self.x_range}")
        if not self.coefficients:
            raise ValueError("at least one polynomial coefficient is required")
        return self


class MixtureScenario(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_points: int = Field(default=2500, ge=1)
    means: Tuple[Tuple[float, float], ...] = MIXTURE_MEANS
    covariances: Tuple[Tuple[Tuple[float, float], Tuple[float, float]], ...] = MIXTURE_COVARIANCES
    K: int = Field(default=50, ge=0)
    restarts: int = Field(default=200, ge=1)

    @property
    def true_clusters(self) -> int:
        return len(self.means)

    @field_validator('covariances')
    @classmethod
    def _positive_definite(cls, value):
        for index, cov in enumerate(value):
            matrix = np.array(cov, dtype=np.float64)
            if not np.allclose(matrix, matrix.T):
                raise ValueError(f"covariance {index} is not symmetric")
            try:
                np.linalg.cholesky(matrix)
            except np.linalg.LinAlgError:
                raise ValueError(f"covariance {index} is not positive definite")
        return value

    @model_validator(mode='after')
    def _check_components(self) -> 'MixtureScenario':
        if len(self.means) != len(self.covariances) or not self.means:
            raise ValueError("means and covariances must be non-empty and of equal length")
        if self.K + 1 > self.n_points:
            raise ValueError(f"K + 1 clusters exceed n_points ({self.K + 1} > {self.n_points})")
        return self


def gen_ar(s: ARScenario, seed: int) -> np.ndarray:
    """
    Simulate y_t = sum_i theta_i y_{t-i} + eps_t from zero initial conditions

    The first AR_BURN_IN samples are discarded.

    Raises:
        UnstableSeriesError: If |y| exceeds the overflow guard
    """
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, s.sigma_eps, s.T + AR_BURN_IN)
    denominator = np.concatenate(([1.0], -s.coefficient_vector()))
    with np.errstate(over='ignore', invalid='ignore'):
        series = lfilter([1.0], denominator, noise)[AR_BURN_IN:]

    peak = float(np.max(np.abs(series))) if np.all(np.isfinite(series)) else float('inf')
    if peak > AR_OVERFLOW_GUARD:
        raise UnstableSeriesError(peak, AR_OVERFLOW_GUARD)
    return series


def gen_poly(s: PolyScenario, seed: int, inputs: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
    """N pairs (x_n, y_n) with uniform inputs and Gaussian noise of std sigma"""
    rng = np.random.default_rng(seed)
    if inputs is None:
        x = rng.uniform(s.x_range[0], s.x_range[1], s.n_samples)
    else:
        x = np.asarray(inputs, dtype=np.float64).ravel()
    y = P.polyval(x, np.array(s.coefficients)) + rng.normal(0.0, s.sigma, len(x))
    return x, y


def gen_mixture(s: MixtureScenario, seed: int) -> np.ndarray:
    """Points from the equal-weight Gaussian mixture, grouped by component"""
    rng = np.random.default_rng(seed)
    n_components = len(s.means)
    counts = rng.multinomial(s.n_points, [1.0 / n_components] * n_components)
    blocks: List[np.ndarray] = [
        rng.multivariate_normal(mean, cov, size=count)
        for mean, cov, count in zip(s.means, s.covariances, counts)
    ]
    return np.vstack(blocks)
