"""Likelihood oracles: hand-computed small cases for the gage, censored,
and paleo terms, error-collapse to the exact closed forms, node-count
convergence, and underflow protection."""

import math
from math import comb, log

import numpy as np
import pytest

from floodmix.demo import pueblo_like_dataset
from floodmix.distributions import DistributionModel, Family, cdf, log_pdf, pdf
from floodmix.errors import ConfigError, DataError
from floodmix.hydrodata import (
    AnnualPeak,
    CensoringSpec,
    ErrorModel,
    HistoricalFlood,
    PaleoBound,
    PeakDataset,
)
from floodmix.likelihood import (
    CompiledLikelihood,
    DiscretizedError,
    LikelihoodConfig,
    discretize_error,
    loglik_censored,
    loglik_gage,
    loglik_paleo,
    total_loglik,
)

GEV01 = DistributionModel(Family.GEV, (0.0, 1.0, 0.0))
GEV11 = DistributionModel(Family.GEV, (1.0, 1.0, 0.0))
LN2 = DistributionModel(Family.LN2, (math.log(100.0), 0.5))


class TestDiscretization:
    def test_exact_record_single_node(self):
        grid = discretize_error(100.0, ErrorModel(), 11)
        np.testing.assert_array_equal(grid.nodes, [100.0])
        np.testing.assert_array_equal(grid.weights, [1.0])

    def test_gaussian_grid_symmetric_with_center_node(self):
        grid = discretize_error(100.0, ErrorModel(kind="normal_cv", cv=0.1), 11)
        assert grid.nodes[5] == pytest.approx(100.0)
        # cell centers tiling [70, 130]: first node half a cell inside
        assert grid.nodes[0] == pytest.approx(70.0 + 30.0 / 11.0)
        assert grid.nodes[-1] == pytest.approx(130.0 - 30.0 / 11.0)
        assert grid.nodes[1] - grid.nodes[0] == pytest.approx(60.0 / 11.0)
        np.testing.assert_allclose(grid.weights, grid.weights[::-1], rtol=1e-12)

    def test_gaussian_weights_match_density_ratios(self):
        sigma = 0.1 * 100.0
        grid = discretize_error(100.0, ErrorModel(kind="normal_cv", cv=0.1), 11)
        dens = np.exp(-0.5 * ((grid.nodes - 100.0) / sigma) ** 2)
        np.testing.assert_allclose(grid.weights, dens / dens.sum(), atol=1e-10)

    def test_truncation_drops_nonpositive_nodes(self):
        grid = discretize_error(10.0, ErrorModel(kind="normal_cv", cv=0.5), 11)
        assert np.all(grid.nodes > 0)
        assert grid.nodes.size < 11
        assert grid.weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_triangular_grid(self):
        err = ErrorModel(kind="triangular", bounds=(1500.0, 2500.0))
        grid = discretize_error(0.0, err, 11)
        assert grid.nodes[0] == 1500.0 and grid.nodes[-1] == 2500.0
        assert grid.weights[5] == max(grid.weights)  # midpoint mode
        assert grid.weights[0] == 0.0  # endpoints of a triangle carry no density

    def test_even_node_count_rejected(self):
        with pytest.raises(ConfigError):
            discretize_error(100.0, ErrorModel(kind="normal_cv", cv=0.1), 10)

    def test_weights_must_sum_to_one(self):
        with pytest.raises(DataError):
            DiscretizedError(nodes=np.array([1.0, 2.0]), weights=np.array([0.6, 0.6]))


class TestGageTerm:
    def test_single_exact_peak(self):
        assert loglik_gage(GEV11, [AnnualPeak(2000, 1.0)]) == pytest.approx(-1.0, abs=1e-12)

    def test_exact_peaks_add(self):
        peaks = [AnnualPeak(2000, 1.0), AnnualPeak(2001, 2.0)]
        expected = log_pdf(GEV11, 1.0) + log_pdf(GEV11, 2.0)
        assert loglik_gage(GEV11, peaks) == pytest.approx(expected, abs=1e-12)

    def test_three_node_error_matches_hand_sum(self):
        err = ErrorModel(kind="normal_cv", cv=0.1)
        grid = discretize_error(100.0, err, 3)
        expected = log(sum(w * pdf(LN2, x) for w, x in zip(grid.weights, grid.nodes)))
        got = loglik_gage(LN2, [AnnualPeak(2000, 100.0, err)], node_count=3)
        assert got == pytest.approx(expected, abs=1e-10)

    def test_unsupported_observation_gives_sentinel(self):
        bounded = DistributionModel(Family.GEV, (0.0, 1.0, -0.5))  # support x < 2
        assert loglik_gage(bounded, [AnnualPeak(2000, 5.0)]) == -math.inf


class TestCensoredTerm:
    def test_no_exceedances_is_pure_cdf_power(self):
        spec = CensoringSpec(threshold=1.0, record_length=100.0, exceedance_count=0)
        expected = 100.0 * log(cdf(GEV01, 1.0))
        assert loglik_censored(GEV01, [], spec) == pytest.approx(expected, abs=1e-12)

    def test_single_record_single_year_cancels_to_density(self):
        spec = CensoringSpec(threshold=1.0, record_length=1.0, exceedance_count=1)
        got = loglik_censored(GEV01, [HistoricalFlood(1850, 1.5)], spec)
        assert got == pytest.approx(log_pdf(GEV01, 1.5), abs=1e-12)

    def test_h10_k2_matches_term_by_term_oracle(self):
        spec = CensoringSpec(threshold=1.0, record_length=10.0, exceedance_count=2)
        floods = [HistoricalFlood(1850, 1.5), HistoricalFlood(1860, 2.0)]
        f0 = cdf(GEV01, 1.0)
        expected = (
            log(comb(10, 2))
            + 8 * log(f0)
            + 2 * log(1 - f0)
            + log(pdf(GEV01, 1.5) / (1 - f0))
            + log(pdf(GEV01, 2.0) / (1 - f0))
        )
        got = loglik_censored(GEV01, floods, spec)
        assert got == pytest.approx(expected, abs=1e-10)

    def test_longer_record_strictly_decreases_likelihood(self):
        floods = [HistoricalFlood(1850, 1.5)]
        values = [
            loglik_censored(
                GEV01, floods, CensoringSpec(threshold=1.0, record_length=h, exceedance_count=1)
            )
            for h in (5.0, 20.0, 80.0, 320.0)
        ]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_impossible_censoring_gives_sentinel(self):
        # support strictly below the threshold: cannot produce exceedances
        upper_bounded = DistributionModel(Family.GEV, (0.0, 1.0, -0.5))  # x < 2
        spec = CensoringSpec(threshold=3.0, record_length=10.0, exceedance_count=1)
        got = loglik_censored(upper_bounded, [HistoricalFlood(1850, 3.5)], spec)
        assert got == -math.inf
        # support strictly above the threshold: quiet years are impossible
        shifted = DistributionModel(Family.GEV, (10.0, 1.0, 0.5))  # x > 8
        spec2 = CensoringSpec(threshold=5.0, record_length=10.0, exceedance_count=1)
        got2 = loglik_censored(shifted, [HistoricalFlood(1850, 9.0)], spec2)
        assert got2 == -math.inf

    def test_fractional_record_length_supported(self):
        # binomial coefficient via gamma functions for non-integer h
        spec = CensoringSpec(threshold=1.0, record_length=10.5, exceedance_count=2)
        floods = [HistoricalFlood(1850, 1.5), HistoricalFlood(1860, 2.0)]
        assert math.isfinite(loglik_censored(GEV01, floods, spec))


class TestPaleoTerm:
    def test_degenerate_nodes_reduce_to_window_mass(self):
        bound = PaleoBound(
            discharge_lower=2.0, discharge_upper=3.0, age_lower=700.0, age_upper=870.0
        )
        got = loglik_paleo(GEV01, [bound], node_counts=(1, 1))
        # single age node at the expected age, single discharge node at the
        # triangular mean (the window midpoint here)
        t_node = 2.5
        expected = 785.0 * log(cdf(GEV01, t_node) - cdf(GEV01, 2.0))
        assert got == pytest.approx(expected, abs=1e-10)

    def test_uniform_age_multiplier_is_mean_age(self):
        bound = PaleoBound(
            discharge_lower=2.0, discharge_upper=3.0, age_lower=700.0, age_upper=870.0
        )
        assert bound.expected_age == pytest.approx(785.0)

    def test_three_by_three_matches_hand_sum(self):
        bound = PaleoBound(
            discharge_lower=2.0, discharge_upper=3.0, age_lower=700.0, age_upper=870.0
        )
        ages = np.linspace(700.0, 870.0, 3)
        age_w = np.full(3, 1.0 / 3.0)
        thresh = np.linspace(2.0, 3.0, 3)
        dens = np.array([0.0, 2.0 / (1.0 * 0.5), 0.0])
        thresh_w = dens / dens.sum()
        inner = sum(w * (cdf(GEV01, t) - cdf(GEV01, 2.0)) for w, t in zip(thresh_w, thresh))
        expected = float(np.sum(ages * age_w)) * log(inner)
        got = loglik_paleo(GEV01, [bound], node_counts=(3, 3))
        assert got == pytest.approx(expected, abs=1e-10)

    def test_empty_window_gives_sentinel(self):
        # all probability mass below the window: zero mass inside
        bound = PaleoBound(
            discharge_lower=50.0, discharge_upper=60.0, age_lower=700.0, age_upper=870.0
        )
        tight = DistributionModel(Family.GEV, (1.0, 0.1, -0.5))  # support x < 1.2
        assert loglik_paleo(tight, [bound], node_counts=(3, 3)) == -math.inf


class TestTotal:
    def test_gage_only_dataset_equals_gage_term(self):
        peaks = tuple(AnnualPeak(1900 + i, 50.0 + 10 * i) for i in range(10))
        ds = PeakDataset(peaks=peaks)
        model = DistributionModel(Family.LN2, (4.0, 0.8))
        assert total_loglik(model, ds) == pytest.approx(
            loglik_gage(model, peaks), abs=1e-12
        )

    def test_components_add(self):
        ds = pueblo_like_dataset()
        model = DistributionModel(Family.MIXED_GEV, (135, 45, -0.15, 500, 230, 0.2, 0.89))
        total = total_loglik(model, ds)
        parts = (
            loglik_gage(model, ds.peaks)
            + loglik_censored(model, ds.historical, ds.censoring)
            + loglik_paleo(model, ds.paleo)
        )
        assert total == pytest.approx(parts, rel=1e-12)

    def test_unsupported_peak_propagates_sentinel(self):
        ds = pueblo_like_dataset()
        bounded = DistributionModel(Family.GEV, (100.0, 50.0, -0.5))  # support x < 200
        assert total_loglik(bounded, ds) == -math.inf

    def test_error_collapse_to_closed_forms(self):
        # with every error model degenerate, the machinery must reproduce
        # the plain product/censoring formulas exactly
        ds = pueblo_like_dataset(cv_gage=0.0, cv_historical=0.0)
        model = DistributionModel(Family.MIXED_GEV, (135, 45, -0.15, 500, 230, 0.2, 0.89))
        closed = sum(log_pdf(model, p.discharge) for p in ds.peaks)
        spec = ds.censoring
        f0 = cdf(model, spec.threshold)
        closed += (
            math.lgamma(spec.record_length + 1)
            - math.lgamma(spec.exceedance_count + 1)
            - math.lgamma(spec.record_length - spec.exceedance_count + 1)
            + (spec.record_length - spec.exceedance_count) * log(f0)
            + spec.exceedance_count * log(1 - f0)
        )
        closed += sum(log(pdf(model, h.discharge) / (1 - f0)) for h in ds.historical)
        closed += loglik_paleo(model, ds.paleo)  # paleo term has no per-record error
        assert total_loglik(model, ds) == pytest.approx(closed, abs=1e-12)

    def test_node_count_convergence(self):
        # refining the measurement-error grids from 11 to 41 nodes moves the
        # total log-likelihood by less than 1e-4 relative (the paleo bound
        # keeps its own default node pair)
        ds = pueblo_like_dataset()
        model = DistributionModel(Family.MIXED_GEV, (135, 45, -0.15, 500, 230, 0.2, 0.89))
        coarse = total_loglik(model, ds, LikelihoodConfig(discharge_nodes=11))
        fine = total_loglik(model, ds, LikelihoodConfig(discharge_nodes=41))
        assert abs(fine - coarse) < 1e-4 * abs(coarse)

    def test_deep_tail_does_not_underflow(self):
        # a record whose density is ~e^-700 must contribute its log, not -inf
        peaks = (AnnualPeak(1900, 100.0), AnnualPeak(1901, 36000.0))
        model = DistributionModel(Family.LN2, (math.log(100.0), 0.25))
        got = loglik_gage(model, peaks)
        assert math.isfinite(got)
        assert got == pytest.approx(
            log_pdf(model, 100.0) + log_pdf(model, 36000.0), rel=1e-12
        )
        assert log_pdf(model, 36000.0) < -270  # genuinely deep in the tail

    def test_vectorized_rows_match_scalar_path(self):
        ds = pueblo_like_dataset()
        compiled = CompiledLikelihood(ds, LikelihoodConfig())
        rows = np.array(
            [
                [135, 45, -0.15, 500, 230, 0.2, 0.89],
                [100, 30, 0.0, 400, 120, 0.1, 0.85],
                [100, -1.0, 0.0, 400, 120, 0.1, 0.85],  # infeasible sigma
            ]
        )
        out = compiled.loglik_rows(Family.MIXED_GEV, rows)
        m0 = DistributionModel(Family.MIXED_GEV, tuple(rows[0]))
        m1 = DistributionModel(Family.MIXED_GEV, tuple(rows[1]))
        assert out[0] == pytest.approx(total_loglik(m0, ds), rel=1e-12)
        assert out[1] == pytest.approx(total_loglik(m1, ds), rel=1e-12)
        assert out[2] == -math.inf
