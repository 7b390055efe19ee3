"""Safety classification tests: return-period conversion, regulatory
classes with boundary handling, hazard bands, and cross-model quantiles."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from floodmix.demo import demo_hydrograph_shapes, demo_reservoir
from floodmix.distributions import DistributionModel, Family, cdf, quantile
from floodmix.errors import DataError
from floodmix.fitting import FittedModel
from floodmix.safety import (
    CLASS_DOES_NOT_MEET,
    CLASS_MEETS,
    CLASS_UNCERTAIN,
    SafetyThresholds,
    classify,
    hazard_band,
    overtopping_return_period,
    quantile_comparison,
)


def as_fit(model: DistributionModel) -> FittedModel:
    return FittedModel(
        model=model, loglik=0.0, aic=0.0, bic=0.0,
        per_seed_logliks=(0.0,), converged=True, n_obs=85,
    )


GEV_FIT = as_fit(DistributionModel(Family.GEV, (100.0, 30.0, 0.1)))
HEAVY_FIT = as_fit(DistributionModel(Family.GEV, (100.0, 30.0, 0.3)))


class TestOvertoppingReturnPeriod:
    def test_median_peak_has_two_year_return(self):
        peak = float(quantile(GEV_FIT.model, 0.5))
        assert overtopping_return_period(GEV_FIT, peak) == pytest.approx(2.0, rel=1e-9)

    def test_percentile_99_is_100_years(self):
        peak = float(quantile(GEV_FIT.model, 0.99))
        assert overtopping_return_period(GEV_FIT, peak) == pytest.approx(100.0, rel=1e-9)

    def test_round_trip_at_1000_years(self):
        peak = float(quantile(GEV_FIT.model, 1.0 - 1.0 / 1000.0))
        assert overtopping_return_period(GEV_FIT, peak) == pytest.approx(1000.0, rel=1e-6)

    def test_round_trip_for_every_family(self):
        models = [
            DistributionModel(Family.LN2, (4.0, 0.8)),
            DistributionModel(Family.LP3, (2.0, 3.0, 0.12)),
            DistributionModel(Family.GEV, (100.0, 30.0, 0.1)),
            DistributionModel(Family.TCEV, (2.0, 80.0, 0.1, 300.0)),
            DistributionModel(Family.MIXED_GEV, (100, 30, 0.0, 400, 120, 0.1, 0.85)),
            DistributionModel(Family.MIXED_LP3, (1.9, 4.0, 0.1, 2.4, 3.0, 0.15, 0.9)),
        ]
        for model in models:
            fit = as_fit(model)
            for t in (10.0, 1000.0, 250_000.0):
                peak = float(quantile(model, 1.0 - 1.0 / t))
                assert overtopping_return_period(fit, peak) == pytest.approx(t, rel=1e-6)

    def test_beyond_support_is_infinite(self):
        bounded = as_fit(DistributionModel(Family.GEV, (100.0, 30.0, -0.5)))  # x < 160
        assert overtopping_return_period(bounded, 200.0) == math.inf


class TestClassification:
    def test_published_range_spans_classes(self):
        verdict = classify([119_000.0, 663_000.0])
        assert verdict.classes == (CLASS_DOES_NOT_MEET, CLASS_MEETS)
        assert verdict.headline == CLASS_DOES_NOT_MEET

    def test_short_return_periods_all_fail(self):
        verdict = classify([25_000.0, 44_000.0])
        assert set(verdict.classes) == {CLASS_DOES_NOT_MEET}
        assert verdict.headline == CLASS_DOES_NOT_MEET

    def test_acceptance_boundary_cases(self):
        thresholds = SafetyThresholds()
        assert classify([119_000.0], thresholds).classes == (CLASS_DOES_NOT_MEET,)
        assert classify([200_000.0], thresholds).classes == (CLASS_UNCERTAIN,)
        assert classify([400_000.0], thresholds).classes == (CLASS_MEETS,)
        assert classify([376_000.0], thresholds).classes == (CLASS_UNCERTAIN,)
        assert classify([131_000.0], thresholds).classes == (CLASS_UNCERTAIN,)

    def test_nonpositive_return_period_rejected(self):
        with pytest.raises(DataError):
            classify([0.0])
        with pytest.raises(DataError):
            classify([])

    def test_rounded_threshold_config(self):
        rounded = SafetyThresholds(lower=131_000.0, upper=400_000.0)
        assert classify([390_000.0], rounded).classes == (CLASS_UNCERTAIN,)

    @given(
        st.floats(min_value=1.0, max_value=1e7),
        st.floats(min_value=1.0, max_value=1e7),
    )
    def test_classification_is_order_preserving(self, t1, t2):
        severity = {CLASS_DOES_NOT_MEET: 0, CLASS_UNCERTAIN: 1, CLASS_MEETS: 2}
        lo, hi = sorted((t1, t2))
        verdict = classify([lo, hi])
        assert severity[verdict.classes[0]] <= severity[verdict.classes[1]]
        assert verdict.headline == verdict.classes[0]


class TestHazardBand:
    def test_single_shape_band_is_degenerate(self):
        res = demo_reservoir()
        shape = demo_hydrograph_shapes(reference_peak=1000.0)[0]
        curve = hazard_band(GEV_FIT, [shape], res, [100.0, 1000.0, 10_000.0])
        np.testing.assert_array_equal(curve.stage_min, curve.stage_max)

    def test_dominant_volume_shape_supplies_band_max(self):
        res = demo_reservoir()
        record, pmf, trex = demo_hydrograph_shapes(reference_peak=1000.0)
        curve_all = hazard_band(GEV_FIT, [record, pmf, trex], res, [100.0, 5000.0])
        curve_trex = hazard_band(GEV_FIT, [trex], res, [100.0, 5000.0])
        np.testing.assert_allclose(curve_all.stage_max, curve_trex.stage_max, rtol=1e-12)

    def test_band_widens_with_return_period(self):
        res = demo_reservoir()
        shapes = demo_hydrograph_shapes(reference_peak=1000.0)
        curve = hazard_band(HEAVY_FIT, shapes, res, [100.0, 1000.0, 10_000.0])
        widths = curve.stage_max - curve.stage_min
        assert widths[0] < widths[-1]
        assert np.all(np.diff(curve.stage_min) > 0)

    def test_return_periods_must_exceed_one(self):
        res = demo_reservoir()
        shapes = demo_hydrograph_shapes(reference_peak=1000.0)
        with pytest.raises(DataError):
            hazard_band(GEV_FIT, shapes, res, [0.5, 100.0])
        with pytest.raises(DataError):
            hazard_band(GEV_FIT, (), res, [100.0])


class TestQuantileComparison:
    def test_identity_when_models_match(self):
        rows = quantile_comparison(GEV_FIT, GEV_FIT, [10.0, 100.0, 1000.0])
        for row in rows:
            assert row["t_of_a_under_b"] == pytest.approx(row["return_period"], rel=1e-9)
            assert row["quantile_a"] == row["quantile_b"]

    def test_heavier_model_shortens_return_periods(self):
        rows = quantile_comparison(GEV_FIT, HEAVY_FIT, [100.0, 1000.0])
        for row in rows:
            # the heavy-tailed model sees model a's quantile as more frequent
            assert row["t_of_a_under_b"] < row["return_period"]
            assert cdf(HEAVY_FIT.model, row["quantile_a"]) < cdf(GEV_FIT.model, row["quantile_a"])

    def test_rejects_return_periods_at_or_below_one(self):
        with pytest.raises(DataError):
            quantile_comparison(GEV_FIT, HEAVY_FIT, [1.0])
