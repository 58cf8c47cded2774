"""
Model fitting that turns synthetic datasets into error curves V(k)

AR and polynomial curves use the Gaussian profile likelihood
V(k) = n * log(RSS_k / n), which equals -2 log l_max up to a constant that
cancels under normalization. Clustering curves use the log of the summed
per-cluster variances of k-means partitions.
"""
from typing import Tuple

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as P
from sklearn.cluster import KMeans
from statsmodels.tsa.stattools import acovf, levinson_durbin

from elbowkit.processors.curve import ArrayLike, ErrorCurve, validate
from elbowkit.utils.custom_exceptions import ModelFittingError, SingularFitError
from elbowkit.utils.seeding import derive, sklearn_seed
from elbowkit.utils.settings import KMEANS_MAX_ITER, RSS_FLOOR

AR_ESTIMATORS = ('cls', 'yule_walker')


def resolve_estimator(T: int, K: int, estimator: str) -> str:
    """Pick the AR estimator; 'auto' uses CLS only when T - K > 2K"""
    if estimator == 'auto':
        return 'cls' if T - K > 2 * K else 'yule_walker'
    if estimator not in AR_ESTIMATORS:
        raise ModelFittingError(
            f"Unknown AR estimator '{estimator}'",
            operation='ar_v_curve',
            context={'estimator': estimator}
        )
    return estimator


def effective_sample_size(T: int, K: int, estimator: str) -> int:
    """Number of observations behind each AR likelihood"""
    return T - K if resolve_estimator(T, K, estimator) == 'cls' else T


def _profile_likelihood(rss: np.ndarray, n: int) -> np.ndarray:
    rss = np.maximum(rss, RSS_FLOOR * n)
    return n * np.log(rss / n)


def _nested_rss(design: np.ndarray, target: np.ndarray, model: str) -> np.ndarray:
    """RSS of the fits on the first k columns, k = 0..p, from one QR"""
    q, r = np.linalg.qr(design)
    diag = np.abs(np.diag(r))
    cutoff = np.finfo(float).eps * max(design.shape) * (diag.max() if diag.size else 0.0)
    weak = np.flatnonzero(diag <= cutoff)
    if weak.size:
        raise SingularFitError(model, int(weak[0]) + 1, rank=int(np.sum(diag > cutoff)))

    projected = q.T @ target
    residual = target - q @ projected
    rss_full = float(residual @ residual)
    # RSS_k = RSS_p + sum of squared projections on the columns after k
    tail = np.cumsum((projected ** 2)[::-1])[::-1]
    return rss_full + np.append(tail, 0.0)


def _ar_cls(y: np.ndarray, K: int) -> np.ndarray:
    T = len(y)
    target = y[K:]
    lags = np.column_stack([y[K - i:T - i] for i in range(1, K + 1)])
    rss = _nested_rss(lags, target, 'AR')
    return _profile_likelihood(rss, T - K)


def _ar_yule_walker(y: np.ndarray, K: int) -> np.ndarray:
    T = len(y)
    acov = acovf(y, adjusted=False, demean=False, fft=False, nlag=K)
    if acov[0] <= 0.0:
        return _profile_likelihood(np.zeros(K + 1), T)
    _, _, _, sigma, _ = levinson_durbin(acov, nlags=K, isacov=True)
    sigma = np.array(sigma, dtype=np.float64)
    # levinson_durbin leaves the order-0 variance at zero
    sigma[0] = acov[0]
    return _profile_likelihood(sigma * T, T)


def ar_v_curve(y: ArrayLike, K: int, estimator: str = 'cls') -> ErrorCurve:
    """
    AR error curve V(0..K)

    Args:
        y: Observed series of length T
        K: Largest candidate order
        estimator: 'cls' (common window t = K..T-1), 'yule_walker' or 'auto'

    Returns:
        ErrorCurve: Raw curve; V(0) is the log power of the series

    Raises:
        ModelFittingError: If T <= K + 1
        SingularFitError: If the lag matrix is rank deficient
    """
    y = np.asarray(y, dtype=np.float64).ravel()
    T = len(y)
    if K < 1 or T <= K + 1:
        raise ModelFittingError(
            f"AR curve needs 1 <= K < T - 1, got K={K}, T={T}",
            operation='ar_v_curve',
            context={'K': K, 'T': T}
        )

    method = resolve_estimator(T, K, estimator)
    values = _ar_cls(y, K) if method == 'cls' else _ar_yule_walker(y, K)
    return validate(values)


def _scaled_inputs(x: np.ndarray) -> np.ndarray:
    lo, hi = float(x.min()), float(x.max())
    half = (hi - lo) / 2.0
    if half == 0.0:
        return x - lo
    return (x - (lo + hi) / 2.0) / half


def poly_v_curve(x: ArrayLike, y: ArrayLike, K: int) -> ErrorCurve:
    """
    Polynomial regression error curve for orders 0..K

    Inputs are mapped to [-1, 1] before building the Vandermonde matrix;
    an affine change of variable keeps every nested span of monomials.
    """
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    N = len(y)
    if len(x) != N or K < 0 or N <= K + 1:
        raise ModelFittingError(
            f"Polynomial curve needs matching inputs and N > K + 1, got N={N}, K={K}",
            operation='poly_v_curve',
            context={'N': N, 'K': K, 'n_inputs': len(x)}
        )

    design = P.polyvander(_scaled_inputs(x), K)
    rss = _nested_rss(design, y, 'polynomial')
    # order k uses k + 1 columns; the empty fit is dropped
    return validate(_profile_likelihood(rss[1:], N))


def fit_polynomial(x: ArrayLike, y: ArrayLike, order: int) -> np.ndarray:
    """Least-squares coefficients theta_0..theta_order in the raw monomial basis"""
    fitted = Polynomial.fit(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64), deg=order)
    coef = fitted.convert().coef
    return np.pad(coef, (0, order + 1 - len(coef)))


def inner_variances(points: np.ndarray, labels: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """var(j) = mean squared distance of cluster j's points to its centre; empty clusters are skipped"""
    k = len(centers)
    sq_dist = np.sum((points - centers[labels]) ** 2, axis=1)
    counts = np.bincount(labels, minlength=k)
    within = np.bincount(labels, weights=sq_dist, minlength=k)
    occupied = counts > 0
    return within[occupied] / counts[occupied]


def kmeans(points: np.ndarray, k: int, seed: int) -> Tuple[np.ndarray, float]:
    """
    Lloyd k-means from k-means++ seeding

    Returns:
        tuple: (labels, sum over clusters of the per-cluster variance var(j))
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    if len(points) == 0 or not 1 <= k <= len(points):
        raise ModelFittingError(
            f"k-means needs 1 <= k <= n_points, got k={k}, n_points={len(points)}",
            operation='kmeans',
            context={'k': k, 'n_points': len(points)}
        )

    model = KMeans(
        n_clusters=k,
        init='k-means++',
        n_init=1,
        max_iter=KMEANS_MAX_ITER,
        tol=0.0,
        algorithm='lloyd',
        random_state=sklearn_seed(seed)
    )
    model.fit(points)
    return model.labels_, float(inner_variances(points, model.labels_, model.cluster_centers_).sum())


def cluster_v_curve(points: np.ndarray, K: int, runs: int, seed: int) -> ErrorCurve:
    """
    V(k) = log of the summed inner variances with k + 1 clusters, averaged over restarts

    Splitting a compact cluster raises the sum of per-cluster variances, so
    the averaged sums rise again past the natural cluster count. V(k) keeps
    the lowest sum reached with at most k + 1 clusters.

    Restart r for index k is seeded with derive(seed, k * runs + r).
    """
    if K < 0 or runs < 1:
        raise ModelFittingError(
            f"Clustering curve needs K >= 0 and runs >= 1, got K={K}, runs={runs}",
            operation='cluster_v_curve',
            context={'K': K, 'runs': runs}
        )

    averaged = np.empty(K + 1)
    for k in range(K + 1):
        total = 0.0
        for r in range(runs):
            _, inner = kmeans(points, k + 1, derive(seed, k * runs + r))
            total += inner
        averaged[k] = total / runs

    values = np.log(np.maximum(averaged, RSS_FLOOR))
    return validate(np.minimum.accumulate(values), tol=0.0)
