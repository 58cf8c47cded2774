"""
Elbow and order decisions: UAED, its alpha extension and the classical
information criteria, all of the form argmin_k V(k) + lambda * k
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from elbowkit.processors.curve import ArrayLike, NormalizedCurve, frozen_array, normalize, validate
from elbowkit.utils.custom_exceptions import (
    AlphaBoundaryError,
    CriterionError,
    DegenerateCurveError,
    InvalidNError,
)
from elbowkit.utils.logging_config import get_logger, log_detection
from elbowkit.utils.settings import TIE_ABS_FLOOR, TIE_REL_TOL

logger = get_logger()

BIC_MIN_N = 1
HQIC_MIN_N = 3


class CriterionKind(str, Enum):
    UAED = 'uaed'
    BIC = 'bic'
    AIC = 'aic'
    HQIC = 'hqic'
    CUSTOM = 'custom'
    ALPHA = 'alpha'


class Criterion(BaseModel):
    """Penalty-slope policy for C(k) = V(k) + lambda * k"""
    model_config = ConfigDict(frozen=True)

    kind: CriterionKind
    n_data: Optional[int] = None
    lam: Optional[float] = Field(default=None, ge=0, allow_inf_nan=False)
    alpha: Optional[float] = Field(default=None, ge=0, le=1)

    @model_validator(mode='after')
    def _check_parameters(self) -> 'Criterion':
        if self.kind == CriterionKind.CUSTOM and self.lam is None:
            raise ValueError("custom criterion requires lam")
        if self.kind == CriterionKind.ALPHA and self.alpha is None:
            raise ValueError("alpha criterion requires alpha")
        return self

    @classmethod
    def uaed(cls) -> 'Criterion':
        return cls(kind=CriterionKind.UAED)

    @classmethod
    def bic(cls, n_data: Optional[int] = None) -> 'Criterion':
        return cls(kind=CriterionKind.BIC, n_data=n_data)

    @classmethod
    def aic(cls) -> 'Criterion':
        return cls(kind=CriterionKind.AIC)

    @classmethod
    def hqic(cls, n_data: Optional[int] = None) -> 'Criterion':
        return cls(kind=CriterionKind.HQIC, n_data=n_data)

    @classmethod
    def custom(cls, lam: float) -> 'Criterion':
        return cls(kind=CriterionKind.CUSTOM, lam=lam)

    @classmethod
    def alpha_uaed(cls, alpha: float) -> 'Criterion':
        return cls(kind=CriterionKind.ALPHA, alpha=alpha)

    @property
    def needs_n(self) -> bool:
        return self.kind in (CriterionKind.BIC, CriterionKind.HQIC)

    @property
    def uaed_family(self) -> bool:
        return self.kind in (CriterionKind.UAED, CriterionKind.ALPHA)

    @property
    def name(self) -> str:
        if self.kind == CriterionKind.CUSTOM:
            return f"lambda={self.lam:g}"
        if self.kind == CriterionKind.ALPHA:
            return f"alpha-UAED({self.alpha:g})"
        return self.kind.value.upper()

    def with_n(self, n_data: int) -> 'Criterion':
        """Bind a sample size when the criterion needs one and has none"""
        if self.needs_n and self.n_data is None:
            return self.model_copy(update={'n_data': n_data})
        return self


@dataclass(frozen=True)
class ElbowResult:
    """Decision of one criterion on one curve; indices relative to k_min"""
    k_star: int
    costs: np.ndarray
    ties: Tuple[int, ...]
    lambda_used: float
    k_max: int
    criterion: str
    k_min: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'costs', frozen_array(self.costs))
        object.__setattr__(self, 'ties', tuple(int(k) for k in self.ties))

    @property
    def reported_k_star(self) -> int:
        return self.k_star + self.k_min

    @property
    def reported_ties(self) -> List[int]:
        return [k + self.k_min for k in self.ties]

    @property
    def tied(self) -> bool:
        return len(self.ties) > 1


def penalty_slope(crit: Criterion, nc: NormalizedCurve) -> float:
    """
    Slope lambda of the linear complexity penalty

    Raises:
        DegenerateCurveError: UAED-family slope on a curve with k_max == 0
        InvalidNError: BIC/HQIC without a usable n_data
        AlphaBoundaryError: alpha of exactly 0 or 1
    """
    kind = crit.kind
    if kind == CriterionKind.UAED:
        if nc.k_max == 0:
            raise DegenerateCurveError(crit.name)
        return nc.v0 / nc.k_max
    if kind == CriterionKind.ALPHA:
        if crit.alpha in (0.0, 1.0):
            raise AlphaBoundaryError(crit.alpha)
        if nc.k_max == 0:
            raise DegenerateCurveError(crit.name)
        return ((1.0 - crit.alpha) / crit.alpha) * (nc.v0 / nc.k_max)
    if kind == CriterionKind.BIC:
        if crit.n_data is None or crit.n_data < BIC_MIN_N:
            raise InvalidNError(crit.name, crit.n_data, BIC_MIN_N)
        return math.log(crit.n_data)
    if kind == CriterionKind.AIC:
        return 2.0
    if kind == CriterionKind.HQIC:
        # log log N is negative for N = 2
        if crit.n_data is None or crit.n_data < HQIC_MIN_N:
            raise InvalidNError(crit.name, crit.n_data, HQIC_MIN_N)
        return math.log(math.log(crit.n_data))
    return float(crit.lam)


def cost_vector(nc: NormalizedCurve, lam: float) -> np.ndarray:
    """C(k) = V(k) + lam * k for k = 0..k_max"""
    if lam < 0 or not math.isfinite(lam):
        raise CriterionError(
            f"Penalty slope must be finite and non-negative, got {lam}",
            context={'error_type': 'invalid_lambda', 'lambda': lam}
        )
    k = np.arange(nc.k_max + 1, dtype=np.float64)
    return nc.values[:nc.k_max + 1] + lam * k


def tie_tolerance(costs: np.ndarray) -> float:
    spread = float(costs.max() - costs.min())
    magnitude = max(1.0, float(np.abs(costs).max()))
    return max(TIE_REL_TOL * spread, TIE_ABS_FLOOR * magnitude)


def minimizers(costs: np.ndarray) -> Tuple[int, ...]:
    """Indices within the tie tolerance of the minimum cost"""
    costs = np.asarray(costs, dtype=np.float64)
    threshold = costs.min() + tie_tolerance(costs)
    return tuple(int(k) for k in np.flatnonzero(costs <= threshold))


def _alpha_boundary(nc: NormalizedCurve, crit: Criterion) -> ElbowResult:
    alpha = crit.alpha
    k = np.arange(nc.k_max + 1, dtype=np.float64)
    costs = alpha * nc.values[:nc.k_max + 1] + (1.0 - alpha) * (nc.v0 / nc.k_max) * k
    # alpha=0 ignores the error entirely, alpha=1 ignores complexity
    if alpha == 0.0:
        k_star, lambda_used = 0, math.inf
    else:
        k_star, lambda_used = nc.k_max, 0.0
    return ElbowResult(
        k_star=k_star,
        costs=costs,
        ties=(k_star,),
        lambda_used=lambda_used,
        k_max=nc.k_max,
        criterion=crit.name,
        k_min=nc.k_min
    )


def elbow(nc: NormalizedCurve, crit: Criterion) -> ElbowResult:
    """
    Most conservative minimizer of C(k) = V(k) + lambda * k over 0..k_max

    Ties within tolerance resolve to the largest index. A curve without
    any drop (k_max == 0) always gives k* = 0.
    """
    if nc.k_max == 0:
        lambda_used = math.nan if crit.uaed_family else penalty_slope(crit, nc)
        return ElbowResult(
            k_star=0,
            costs=nc.values[:1],
            ties=(0,),
            lambda_used=lambda_used,
            k_max=0,
            criterion=crit.name,
            k_min=nc.k_min
        )

    if crit.kind == CriterionKind.ALPHA and crit.alpha in (0.0, 1.0):
        return _alpha_boundary(nc, crit)

    lam = penalty_slope(crit, nc)
    costs = cost_vector(nc, lam)
    ties = minimizers(costs)
    return ElbowResult(
        k_star=ties[-1],
        costs=costs,
        ties=ties,
        lambda_used=lam,
        k_max=nc.k_max,
        criterion=crit.name,
        k_min=nc.k_min
    )


def elbow_on_raw(raw: ArrayLike, crit: Criterion, tol: Optional[float] = None, k_min: int = 0) -> ElbowResult:
    """validate -> normalize -> elbow"""
    nc = normalize(validate(raw, tol=tol, k_min=k_min))
    result = elbow(nc, crit)
    log_detection(logger, result.criterion, result.reported_k_star, len(result.ties), result.lambda_used, nc.k_max)
    return result


def standard_criteria(n_data: int) -> List[Criterion]:
    """UAED followed by BIC, AIC and HQIC bound to n_data"""
    return [Criterion.uaed(), Criterion.bic(n_data), Criterion.aic(), Criterion.hqic(n_data)]


def compare(nc: NormalizedCurve, n_data: int, alpha: Optional[float] = None) -> Dict[str, ElbowResult]:
    """Decisions of every standard criterion (and alpha-UAED if requested) on one curve"""
    criteria = standard_criteria(n_data)
    if alpha is not None:
        criteria.append(Criterion.alpha_uaed(alpha))
    return {crit.name: elbow(nc, crit) for crit in criteria}
