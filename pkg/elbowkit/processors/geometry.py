"""
Geometric readings of the elbow decision.

The chord joins (0, V(0)) and (k_max, 0). Minimising the area between the
curve and the axes, or maximising the vertical, horizontal or orthogonal
distance from the curve to the chord, all select the same k* as UAED. Each
reading is computed independently here so they can check each other.
"""
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from scipy.optimize import bisect

from elbowkit.processors.curve import NormalizedCurve
from elbowkit.processors.detect import ElbowResult, minimizers
from elbowkit.utils.custom_exceptions import DegenerateCurveError, GeometryError, NoRootError
from elbowkit.utils.settings import TANGENT_MAX_ITER, TANGENT_TOL

METHODS = ('area', 'vertical', 'horizontal', 'euclidean')


def chord_distance(points: np.ndarray, start: Tuple[float, float], end: Tuple[float, float]) -> np.ndarray:
    """
    Signed distance from each point to the line through start and end

    Positive on the right-hand side when walking from start to end, which
    for a chord running down from (0, v0) to (k_max, 0) means below it.
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    dx = end[0] - start[0]
    dy = end[1] - start[1]
    length = math.hypot(dx, dy)
    if length == 0.0:
        raise GeometryError("Chord endpoints coincide", context={'start': start, 'end': end})
    return ((points[:, 0] - start[0]) * dy - (points[:, 1] - start[1]) * dx) / length


@dataclass(frozen=True)
class ChordFrame:
    """Straight line v(k) = v0 - (v0 / k_max) k through the curve's extreme points"""
    v0: float
    k_max: float

    def __post_init__(self):
        if self.k_max <= 0:
            raise GeometryError(f"Chord needs k_max > 0, got {self.k_max}", context={'k_max': self.k_max})

    @classmethod
    def of(cls, nc: NormalizedCurve) -> 'ChordFrame':
        if nc.k_max == 0:
            raise DegenerateCurveError('chord', operation='chord_frame')
        return cls(v0=nc.v0, k_max=nc.k_max)

    @property
    def slope(self) -> float:
        return -self.v0 / self.k_max

    @property
    def intercept(self) -> float:
        return self.v0

    @property
    def chord_angle(self) -> float:
        """Angle between the chord and the k axis"""
        return math.atan(self.v0 / self.k_max)

    def at(self, k):
        return self.v0 * (1.0 - np.asarray(k, dtype=np.float64) / self.k_max)

    def signed_distance(self, k, v) -> np.ndarray:
        """Orthogonal distance of (k, v) to the chord; k may be real"""
        points = np.column_stack([np.ravel(k), np.ravel(v)]).astype(np.float64)
        return chord_distance(points, (0.0, self.v0), (float(self.k_max), 0.0))


def _require_drop(nc: NormalizedCurve, operation: str):
    if nc.k_max == 0:
        raise DegenerateCurveError(operation, operation=operation)


def _check_index(nc: NormalizedCurve, k: int):
    if not 0 <= k <= nc.k_max:
        raise GeometryError(f"k={k} outside 0..{nc.k_max}", context={'k': k, 'k_max': nc.k_max})


def area_parts(nc: NormalizedCurve, k: int) -> Tuple[float, float, float]:
    """Triangle above V(k), rectangle below it and triangle to its right"""
    _require_drop(nc, 'area_cost')
    _check_index(nc, k)
    vk = float(nc.values[k])
    a1 = k * (nc.v0 - vk) / 2.0
    a2 = k * vk
    a3 = (nc.k_max - k) * vk / 2.0
    return a1, a2, a3


def area_cost(nc: NormalizedCurve, k: int) -> float:
    return sum(area_parts(nc, k))


def vertical_distance(nc: NormalizedCurve, k: int) -> float:
    """d(k) = v(k) - V(k); negative where the curve rises above the chord"""
    _require_drop(nc, 'vertical_distance')
    _check_index(nc, k)
    return float(ChordFrame.of(nc).at(k) - nc.values[k])


def horizontal_distance(nc: NormalizedCurve, k: int) -> float:
    """r(k) = k' - k, where the chord reaches height V(k) at k'"""
    _require_drop(nc, 'horizontal_distance')
    _check_index(nc, k)
    k_prime = -(nc.k_max / nc.v0) * (float(nc.values[k]) - nc.v0)
    return k_prime - k


def euclidean_distance(nc: NormalizedCurve, k: int) -> float:
    _require_drop(nc, 'euclidean_distance')
    _check_index(nc, k)
    return float(ChordFrame.of(nc).signed_distance(k, nc.values[k])[0])


_OBJECTIVES = {
    'area': (area_cost, 1.0),
    'vertical': (vertical_distance, -1.0),
    'horizontal': (horizontal_distance, -1.0),
    'euclidean': (euclidean_distance, -1.0),
}


def elbow_by(method: str, nc: NormalizedCurve) -> ElbowResult:
    """
    Elbow from one geometric reading

    Area is minimised, distances are maximised; `costs` holds the area or
    the negated distance so the result reads like a cost minimisation.
    """
    if method not in _OBJECTIVES:
        raise GeometryError(f"Unknown geometric method '{method}'", context={'method': method, 'allowed': list(METHODS)})
    _require_drop(nc, method)

    objective, sign = _OBJECTIVES[method]
    costs = np.array([sign * objective(nc, k) for k in range(nc.k_max + 1)])
    ties = minimizers(costs)
    return ElbowResult(
        k_star=ties[-1],
        costs=costs,
        ties=ties,
        lambda_used=nc.v0 / nc.k_max,
        k_max=nc.k_max,
        criterion=method,
        k_min=nc.k_min
    )


@dataclass(frozen=True)
class TangentElbow:
    k_star: float
    residual: float
    degenerate: bool = False


def continuous_tangent_elbow(
    f: Callable[[float], float],
    df: Callable[[float], float],
    k_max: float,
    v0: float,
    tol: float = TANGENT_TOL
) -> TangentElbow:
    """
    Point where a convex decreasing curve runs parallel to its chord

    Solves df(k) = -v0 / k_max on (0, k_max) by bisection. A linear f has
    every point parallel to the chord; k_max / 2 is returned and flagged.

    Raises:
        NoRootError: If df + v0/k_max does not change sign on [0, k_max]
    """
    if k_max <= 0:
        raise GeometryError(f"k_max must be positive, got {k_max}", context={'k_max': k_max})
    if abs(f(0.0) - v0) > max(tol, tol * abs(v0)) or abs(f(k_max)) > max(tol, tol * abs(v0)):
        raise GeometryError(
            "Curve must start at v0 and end at 0",
            context={'f_start': f(0.0), 'f_end': f(k_max), 'v0': v0}
        )

    slope = -v0 / k_max

    def residual(k: float) -> float:
        return df(k) - slope

    lo, hi = residual(0.0), residual(k_max)
    if abs(lo) <= tol and abs(hi) <= tol:
        return TangentElbow(k_star=k_max / 2.0, residual=residual(k_max / 2.0), degenerate=True)
    if not (lo < 0.0 < hi):
        raise NoRootError(slope, lo, hi)

    root, info = bisect(
        residual, 0.0, k_max,
        xtol=np.finfo(float).eps * k_max,
        maxiter=TANGENT_MAX_ITER,
        full_output=True,
        disp=False
    )
    if not info.converged:
        raise NoRootError(slope, lo, hi)
    return TangentElbow(k_star=float(root), residual=float(residual(root)))
