from typing import Dict, Any, Optional


class ElbowKitError(Exception):
    """Base exception class for elbowkit"""
    def __init__(self, detail: str, error_code: str = None, context: Dict[str, Any] = None, exit_code: int = 1):
        super().__init__(detail)
        self.detail = detail
        self.error_code = error_code
        self.context = context or {}
        self.exit_code = exit_code


class CurveValidationError(ElbowKitError):
    """Raised when a score sequence is not a valid error curve"""
    def __init__(self, detail: str, context: Dict[str, Any] = None):
        super().__init__(
            detail=detail,
            error_code="CURVE_VALIDATION_ERROR",
            context=context,
            exit_code=2
        )


class EmptyCurveError(CurveValidationError):
    """Raised when the curve has no values"""
    def __init__(self):
        super().__init__(
            detail="Error curve is empty; at least one value V(0) is required",
            context={'validation_type': 'empty'}
        )


class NonFiniteCurveError(CurveValidationError):
    """Raised when the curve contains NaN or infinite values"""
    def __init__(self, indices: list):
        super().__init__(
            detail=f"Error curve contains non-finite values at k={', '.join(str(i) for i in indices[:10])}",
            context={
                'validation_type': 'non_finite',
                'indices': indices
            }
        )


class NonMonotoneCurveError(CurveValidationError):
    """Raised when a forward difference exceeds the monotonicity tolerance"""
    def __init__(self, index: int, increase: float, tol: float):
        super().__init__(
            detail=f"Error curve increases by {increase:.6g} between k={index} and k={index + 1} (tolerance {tol:.3g})",
            context={
                'validation_type': 'non_monotone',
                'index': index,
                'increase': increase,
                'tolerance': tol
            }
        )


class CurveFileFormatError(CurveValidationError):
    """Raised when a curve file row or header is malformed"""
    def __init__(self, detail: str, line_number: Optional[int] = None, path: str = None):
        context = {'validation_type': 'curve_file_format'}
        if line_number is not None:
            context['line_number'] = line_number
        if path:
            context['path'] = path

        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(detail=f"{prefix}{detail}", context=context)
        self.line_number = line_number


class CriterionError(ElbowKitError):
    """Raised when a penalty slope cannot be computed for a criterion"""
    def __init__(self, detail: str, criterion: str = None, context: Dict[str, Any] = None):
        extra_context = context or {}
        if criterion:
            extra_context['criterion'] = criterion

        super().__init__(
            detail=detail,
            error_code="CRITERION_ERROR",
            context=extra_context,
            exit_code=2
        )


class DegenerateCurveError(CriterionError):
    """Raised when k_max == 0 and a slope needs to divide by it"""
    def __init__(self, criterion: str, operation: str = "penalty_slope"):
        super().__init__(
            detail=f"Curve has k_max=0; {criterion} slope is undefined (the decision is k*=0)",
            criterion=criterion,
            context={'error_type': 'degenerate_curve', 'operation': operation}
        )


class InvalidNError(CriterionError):
    """Raised when the sample size is outside a criterion's domain"""
    def __init__(self, criterion: str, n_data: Optional[int], minimum: int):
        super().__init__(
            detail=f"{criterion} requires n_data >= {minimum}, got {n_data}",
            criterion=criterion,
            context={'error_type': 'invalid_n', 'n_data': n_data, 'minimum': minimum}
        )


class AlphaBoundaryError(CriterionError):
    """Raised when the alpha-extension slope is requested at alpha 0 or 1"""
    def __init__(self, alpha: float):
        super().__init__(
            detail=f"alpha={alpha} has no finite penalty slope; the decision rule handles it",
            criterion="alpha-UAED",
            context={'error_type': 'alpha_boundary', 'alpha': alpha}
        )


class GeometryError(ElbowKitError):
    """Raised when a geometric construction is undefined"""
    def __init__(self, detail: str, context: Dict[str, Any] = None):
        super().__init__(
            detail=detail,
            error_code="GEOMETRY_ERROR",
            context=context,
            exit_code=2
        )


class NoRootError(GeometryError):
    """Raised when the derivative never crosses the chord slope"""
    def __init__(self, slope: float, residual_start: float, residual_end: float):
        super().__init__(
            detail=f"Derivative never reaches the chord slope {slope:.6g}; the curve is not convex and decreasing",
            context={
                'chord_slope': slope,
                'residual_start': residual_start,
                'residual_end': residual_end
            }
        )


class ModelFittingError(ElbowKitError):
    """Raised when data generation or model fitting fails"""
    def __init__(self, detail: str, operation: str = None, context: Dict[str, Any] = None):
        extra_context = context or {}
        if operation:
            extra_context['operation'] = operation

        super().__init__(
            detail=detail,
            error_code="MODEL_FITTING_ERROR",
            context=extra_context,
            exit_code=1
        )


class SingularFitError(ModelFittingError):
    """Raised when a regressor matrix is rank deficient"""
    def __init__(self, model: str, order: int, rank: int = None):
        super().__init__(
            detail=f"{model} fit of order {order} is rank deficient" + (f" (rank {rank})" if rank is not None else ""),
            operation=f"{model}_fit",
            context={'order': order, 'rank': rank, 'error_type': 'singular_fit'}
        )


class UnstableSeriesError(ModelFittingError):
    """Raised when a simulated series leaves the overflow guard"""
    def __init__(self, max_abs: float, guard: float):
        super().__init__(
            detail=f"Simulated AR series diverged (max |y| = {max_abs:.3g} > {guard:.3g})",
            operation="ar_simulation",
            context={'max_abs': max_abs, 'guard': guard, 'error_type': 'unstable'}
        )


class ExperimentError(ElbowKitError):
    """Raised when a Monte-Carlo experiment cannot complete"""
    def __init__(self, detail: str, context: Dict[str, Any] = None):
        super().__init__(
            detail=detail,
            error_code="EXPERIMENT_ERROR",
            context=context,
            exit_code=1
        )


class RunFailedError(ExperimentError):
    """Raised when one Monte-Carlo run fails; the experiment is aborted"""
    def __init__(self, run_index: int, seed: int, original_error: Exception):
        super().__init__(
            detail=f"Run {run_index} (seed {seed}) failed: {original_error}",
            context={
                'run_index': run_index,
                'seed': seed,
                'original_error': str(original_error),
                'error_type': type(original_error).__name__
            }
        )
        self.run_index = run_index
        self.seed = seed


class CurveFileReadError(ElbowKitError):
    """Raised when a curve or report file cannot be read or written"""
    def __init__(self, path: str, original_error: str, operation: str = "read"):
        super().__init__(
            detail=f"Failed to {operation} '{path}': {original_error}",
            error_code="FILE_READ_ERROR",
            context={
                'path': path,
                'operation': operation,
                'original_error': str(original_error),
                'error_type': 'file_io_error'
            },
            exit_code=1
        )
