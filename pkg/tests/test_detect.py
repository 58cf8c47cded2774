"""
UAED, alpha-UAED and information-criterion decisions
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from elbowkit.processors.curve import horizontal_stretch, normalize, validate
from elbowkit.processors.detect import (
    Criterion,
    compare,
    cost_vector,
    elbow,
    elbow_on_raw,
    minimizers,
    penalty_slope,
)
from elbowkit.utils.custom_exceptions import (
    AlphaBoundaryError,
    CriterionError,
    DegenerateCurveError,
    InvalidNError,
    NonMonotoneCurveError,
)

CONVEX = [10, 4, 2, 1, 0]
STRAIGHT = [8, 4, 0]
CONSTANT = [5, 5, 5]


def nc_of(values):
    return normalize(validate(values, tol=0))


class TestCriterion:

    def test_custom_requires_lambda(self):
        with pytest.raises(ValidationError):
            Criterion(kind='custom')

    def test_alpha_requires_alpha(self):
        with pytest.raises(ValidationError):
            Criterion(kind='alpha')

    @pytest.mark.parametrize('alpha', [-0.1, 1.1])
    def test_alpha_range(self, alpha):
        with pytest.raises(ValidationError):
            Criterion.alpha_uaed(alpha)

    def test_negative_lambda_rejected(self):
        with pytest.raises(ValidationError):
            Criterion.custom(-1.0)

    def test_with_n_binds_only_missing(self):
        assert Criterion.bic().with_n(50).n_data == 50
        assert Criterion.bic(10).with_n(50).n_data == 10
        assert Criterion.aic().with_n(50).n_data is None

    def test_names(self):
        assert Criterion.uaed().name == 'UAED'
        assert Criterion.hqic(10).name == 'HQIC'
        assert Criterion.alpha_uaed(0.3).name == 'alpha-UAED(0.3)'


class TestPenaltySlope:

    def test_uaed(self):
        assert penalty_slope(Criterion.uaed(), nc_of(CONVEX)) == 2.5

    def test_bic(self):
        assert penalty_slope(Criterion.bic(100), nc_of(CONVEX)) == pytest.approx(4.605170186)

    def test_aic(self):
        assert penalty_slope(Criterion.aic(), nc_of(CONVEX)) == 2.0

    def test_hqic(self):
        assert penalty_slope(Criterion.hqic(100), nc_of(CONVEX)) == pytest.approx(math.log(math.log(100)))

    def test_custom(self):
        assert penalty_slope(Criterion.custom(0.75), nc_of(CONVEX)) == 0.75

    def test_alpha_half_is_uaed(self):
        assert penalty_slope(Criterion.alpha_uaed(0.5), nc_of(CONVEX)) == 2.5

    def test_alpha_weighting(self):
        assert penalty_slope(Criterion.alpha_uaed(0.25), nc_of(CONVEX)) == pytest.approx(7.5)

    def test_uaed_degenerate(self):
        with pytest.raises(DegenerateCurveError):
            penalty_slope(Criterion.uaed(), nc_of(CONSTANT))

    @pytest.mark.parametrize('alpha', [0.0, 1.0])
    def test_alpha_boundary(self, alpha):
        with pytest.raises(AlphaBoundaryError):
            penalty_slope(Criterion.alpha_uaed(alpha), nc_of(CONVEX))

    @pytest.mark.parametrize('crit', [Criterion.hqic(2), Criterion.hqic(), Criterion.bic(0), Criterion.bic()])
    def test_invalid_n(self, crit):
        with pytest.raises(InvalidNError):
            penalty_slope(crit, nc_of(CONVEX))

    def test_hqic_minimum_n(self):
        assert penalty_slope(Criterion.hqic(3), nc_of(CONVEX)) > 0


class TestCostVector:

    def test_convex_example(self):
        assert cost_vector(nc_of(CONVEX), 2.5).tolist() == [10, 6.5, 7, 8.5, 10]

    def test_straight_line_is_flat(self):
        assert cost_vector(nc_of(STRAIGHT), 4.0).tolist() == [8, 8, 8]

    def test_zero_penalty(self):
        nc = nc_of(CONVEX)
        assert cost_vector(nc, 0.0).tolist() == nc.values.tolist()

    def test_stops_at_k_max(self):
        assert len(cost_vector(nc_of([8, 4, 0, 0, 0]), 1.0)) == 3

    def test_negative_lambda(self):
        with pytest.raises(CriterionError):
            cost_vector(nc_of(CONVEX), -1.0)


class TestElbow:

    def test_convex_example(self):
        result = elbow(nc_of(CONVEX), Criterion.uaed())
        assert result.k_star == 1
        assert result.ties == (1,)
        assert result.costs.tolist() == [10, 6.5, 7, 8.5, 10]
        assert result.lambda_used == 2.5

    def test_straight_line_full_tie(self):
        result = elbow(nc_of(STRAIGHT), Criterion.uaed())
        assert result.ties == (0, 1, 2)
        assert result.k_star == 2
        assert result.tied

    def test_straight_line_with_float_rounding(self):
        values = np.linspace(1.0, 0.0, 31)
        result = elbow(nc_of(values), Criterion.uaed())
        assert result.ties == tuple(range(31))

    def test_straight_line_full_tie_at_likelihood_scale(self):
        # -2 log l scale: rounding in the costs is far above 1e-12 in absolute terms
        values = np.linspace(-1200.0, -4987.3, 101)
        result = elbow(nc_of(values), Criterion.uaed())
        assert result.ties == tuple(range(101))
        assert result.k_star == 100
        scaled = elbow(nc_of([8e6, 4e6, 0.0]), Criterion.uaed())
        assert scaled.ties == (0, 1, 2)
        assert scaled.k_star == 2

    def test_constant_curve(self):
        for crit in (Criterion.uaed(), Criterion.alpha_uaed(0.3), Criterion.bic(10), Criterion.aic()):
            result = elbow(nc_of(CONSTANT), crit)
            assert result.k_star == 0
            assert result.ties == (0,)

    def test_alpha_boundaries(self):
        nc = nc_of(CONVEX)
        low = elbow(nc, Criterion.alpha_uaed(0.0))
        high = elbow(nc, Criterion.alpha_uaed(1.0))
        assert low.k_star == 0 and low.lambda_used == math.inf
        assert high.k_star == nc.k_max and high.lambda_used == 0.0
        assert low.costs.tolist() == [0.0, 2.5, 5.0, 7.5, 10.0]
        assert high.costs.tolist() == [10, 4, 2, 1, 0]

    def test_bic_enumeration(self):
        nc = nc_of(CONVEX)
        lam = math.log(100)
        brute = min(range(5), key=lambda k: (nc.values[k] + lam * k, -k))
        assert elbow(nc, Criterion.bic(100)).k_star == brute == 0

    def test_reported_offset(self):
        result = elbow(normalize(validate(CONVEX, k_min=3)), Criterion.uaed())
        assert result.k_star == 1
        assert result.reported_k_star == 4
        assert result.reported_ties == [4]

    def test_minimizers_tolerance(self):
        assert minimizers(np.array([1.0, 1.0 + 1e-13, 2.0])) == (0, 1)
        assert minimizers(np.array([1.0, 1.0 + 1e-6, 2.0])) == (0,)

    def test_large_magnitude_exact_ties(self):
        # spread is tiny, so the magnitude floor decides
        costs = np.array([12345.678, 12345.678 + 1e-11, 12345.678 + 1e-6])
        assert minimizers(costs) == (0, 1)


class TestElbowOnRaw:

    def test_shift(self):
        assert elbow_on_raw([12, 6, 4, 3, 2], Criterion.uaed()).k_star == 1

    def test_scale(self):
        assert elbow_on_raw([20, 8, 4, 2, 0], Criterion.uaed()).k_star == 1

    def test_non_monotone(self):
        with pytest.raises(NonMonotoneCurveError):
            elbow_on_raw([1, 2, 1], Criterion.aic(), tol=0)


class TestProperties:

    def test_k_star_within_range(self, rng, curve_factory):
        for _ in range(300):
            nc = normalize(validate(curve_factory(rng, int(rng.integers(2, 120)))))
            for crit in (Criterion.uaed(), Criterion.bic(100), Criterion.aic(), Criterion.hqic(100)):
                result = elbow(nc, crit)
                assert 0 <= result.k_star <= nc.k_max
                assert result.k_star == max(result.ties)

    def test_uaed_matches_custom_lambda(self, rng, curve_factory):
        for _ in range(200):
            nc = normalize(validate(curve_factory(rng, int(rng.integers(2, 120)))))
            uaed = elbow(nc, Criterion.uaed())
            custom = elbow(nc, Criterion.custom(nc.v0 / nc.k_max))
            assert uaed.ties == custom.ties
            assert uaed.k_star == custom.k_star

    def test_alpha_half_matches_uaed(self, rng, curve_factory):
        for _ in range(100):
            nc = normalize(validate(curve_factory(rng, int(rng.integers(2, 80)))))
            assert elbow(nc, Criterion.alpha_uaed(0.5)).ties == elbow(nc, Criterion.uaed()).ties

    def test_vertical_scaling(self, rng, curve_factory):
        for _ in range(200):
            curve = validate(curve_factory(rng, int(rng.integers(2, 120))))
            base = elbow(normalize(curve), Criterion.uaed())
            for factor in (0.01, 1.0, 137.5):
                scaled = elbow(normalize(curve.scaled(factor)), Criterion.uaed())
                assert scaled.ties == base.ties
                assert scaled.k_star == base.k_star

    def test_vertical_shift(self, rng, curve_factory):
        for _ in range(200):
            curve = validate(curve_factory(rng, int(rng.integers(2, 120))))
            base = elbow(normalize(curve), Criterion.uaed())
            moved = elbow(normalize(curve.shifted(float(rng.uniform(-100, 100)))), Criterion.uaed())
            assert moved.k_star == base.k_star

    def test_horizontal_scaling(self, rng, curve_factory):
        for _ in range(200):
            values = validate(curve_factory(rng, int(rng.integers(2, 120)))).values
            base = elbow(nc_of(values), Criterion.uaed())
            for factor in (2, 5):
                stretched = elbow(nc_of(horizontal_stretch(values, factor)), Criterion.uaed())
                assert stretched.k_star == factor * base.k_star

    def test_alpha_monotone(self, rng, curve_factory):
        grid = np.round(np.linspace(0.0, 1.0, 11), 10)
        for _ in range(100):
            nc = normalize(validate(curve_factory(rng, int(rng.integers(2, 80)))))
            decisions = [elbow(nc, Criterion.alpha_uaed(float(a))).k_star for a in grid]
            assert decisions == sorted(decisions)
            assert decisions[0] == 0 and decisions[-1] == nc.k_max

    def test_aic_never_below_bic(self, rng, curve_factory):
        for _ in range(200):
            nc = normalize(validate(curve_factory(rng, int(rng.integers(2, 120)))))
            assert elbow(nc, Criterion.aic()).k_star >= elbow(nc, Criterion.bic(100)).k_star


class TestCompare:

    def test_standard_criteria(self):
        results = compare(nc_of(CONVEX), 100)
        assert list(results) == ['UAED', 'BIC', 'AIC', 'HQIC']
        assert results['UAED'].k_star == 1

    def test_with_alpha(self):
        results = compare(nc_of(CONVEX), 100, alpha=0.9)
        assert 'alpha-UAED(0.9)' in results
        assert results['alpha-UAED(0.9)'].k_star >= results['UAED'].k_star
