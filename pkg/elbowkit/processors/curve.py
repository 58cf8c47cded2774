"""
Error curve representation, validation and normalization
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from elbowkit.utils.custom_exceptions import (
    CurveValidationError,
    EmptyCurveError,
    NonFiniteCurveError,
    NonMonotoneCurveError,
)
from elbowkit.utils.settings import MONOTONE_ABS_FLOOR, MONOTONE_REL_TOL

ArrayLike = Union[Sequence[float], np.ndarray]


def frozen_array(values: ArrayLike) -> np.ndarray:
    array = np.array(values, dtype=np.float64).ravel()
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class ErrorCurve:
    """Validated, exactly non-increasing score sequence V(0), ..., V(K).

    `k_min` is the complexity index of the first value; decisions are
    computed on 0..K and shifted back by `k_min` when reported.
    """
    values: np.ndarray
    k_min: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'values', frozen_array(self.values))

    @property
    def K(self) -> int:
        return len(self.values) - 1

    def shifted(self, offset: float) -> 'ErrorCurve':
        return validate(self.values + offset, tol=0.0, k_min=self.k_min)

    def scaled(self, factor: float) -> 'ErrorCurve':
        if factor <= 0:
            raise CurveValidationError(
                f"Scale factor must be positive, got {factor}",
                context={'validation_type': 'scale_factor', 'factor': factor}
            )
        return validate(self.values * factor, tol=0.0, k_min=self.k_min)


@dataclass(frozen=True)
class NormalizedCurve:
    """Min-subtracted curve: values[k] > 0 exactly for k < k_max, zero after."""
    values: np.ndarray
    k_max: int
    v0: float
    k_min: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'values', frozen_array(self.values))

    @property
    def K(self) -> int:
        return len(self.values) - 1


def default_tolerance(values: ArrayLike, rel: float = MONOTONE_REL_TOL, floor: float = MONOTONE_ABS_FLOOR) -> float:
    """Monotonicity tolerance relative to the curve's overall drop"""
    array = np.asarray(values, dtype=np.float64)
    if array.size == 0:
        return floor
    return max(rel * float(array[0] - array[-1]), floor)


def validate(raw: ArrayLike, tol: Optional[float] = None, k_min: int = 0) -> ErrorCurve:
    """
    Check that a score sequence is an error curve and repair small violations

    Args:
        raw: Scores V(0), ..., V(K)
        tol: Largest forward increase accepted; None uses default_tolerance
        k_min: Complexity index of the first score

    Returns:
        ErrorCurve: Curve clamped by its running minimum

    Raises:
        EmptyCurveError: If no values are given
        NonFiniteCurveError: If any value is NaN or infinite
        NonMonotoneCurveError: If a forward difference exceeds tol
    """
    values = np.asarray(raw, dtype=np.float64).ravel()
    if values.size == 0:
        raise EmptyCurveError()

    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise NonFiniteCurveError([int(i) for i in bad])

    if tol is None:
        tol = default_tolerance(values)
    if tol < 0:
        raise CurveValidationError(
            f"Monotonicity tolerance must be non-negative, got {tol}",
            context={'validation_type': 'tolerance', 'tolerance': tol}
        )
    if k_min < 0:
        raise CurveValidationError(
            f"k_min must be non-negative, got {k_min}",
            context={'validation_type': 'k_min', 'k_min': k_min}
        )

    increases = np.diff(values)
    violations = np.flatnonzero(increases > tol)
    if violations.size:
        index = int(violations[0])
        raise NonMonotoneCurveError(index, float(increases[index]), float(tol))

    return ErrorCurve(np.minimum.accumulate(values), k_min=k_min)


def normalize(curve: ErrorCurve) -> NormalizedCurve:
    """Subtract the minimum and locate k_max, the first index attaining it"""
    # curve is exactly non-increasing, so the minimum is the last value
    values = curve.values - curve.values[-1]
    k_max = int(np.flatnonzero(values == 0.0)[0])
    return NormalizedCurve(values, k_max=k_max, v0=float(values[0]), k_min=curve.k_min)


def horizontal_stretch(values: ArrayLike, factor: int) -> np.ndarray:
    """Staircase curve on the grid k' = 0..factor*K with V~(k') = V(k' // factor)"""
    if int(factor) != factor or factor < 1:
        raise CurveValidationError(
            f"Stretch factor must be a positive integer, got {factor}",
            context={'validation_type': 'stretch_factor', 'factor': factor}
        )
    array = np.asarray(values, dtype=np.float64)
    grid = np.arange((len(array) - 1) * int(factor) + 1)
    return array[grid // int(factor)]
