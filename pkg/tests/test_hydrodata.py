"""Data ingestion tests: RDB parsing, error-model attachment, censoring
defaults, CSV round trips, and plotting positions."""

import io

import numpy as np
import pytest

from floodmix.demo import pueblo_like_dataset
from floodmix.errors import ConfigError, DataError, ParseError
from floodmix.hydrodata import (
    AnnualPeak,
    CensoringSpec,
    ErrorModel,
    HistoricalFlood,
    PaleoBound,
    PeakDataset,
    attach_error_models,
    default_censoring,
    empirical_return_periods,
    parse_usgs_rdb,
    read_historical_paleo_csv,
    write_historical_paleo_csv,
    write_usgs_rdb,
)

RDB_FIXTURE = """\
# U.S. Geological Survey peak streamflow data
# retrieved for testing
agency_cd\tsite_no\tpeak_dt\tpeak_va\tpeak_cd
5s\t15s\t10d\t8s\t33s
USGS\t07099500\t1920-06-04\t150\t
USGS\t07099500\t1921-06-03\t283\t
USGS\t07099500\t1922-05-21\t96.5\t
"""

RDB_WITH_GAP = RDB_FIXTURE + "USGS\t07099500\t1923-06-11\t\t\n"


class TestRdbParsing:
    def test_counts_match_data_rows(self):
        result = parse_usgs_rdb(RDB_FIXTURE)
        assert len(result.peaks) == 3
        assert result.skipped == 0

    def test_missing_value_skipped_and_counted(self):
        result = parse_usgs_rdb(RDB_WITH_GAP)
        assert len(result.peaks) == 3
        assert result.skipped == 1

    def test_value_and_year_extraction(self):
        result = parse_usgs_rdb(RDB_FIXTURE)
        record = result.peaks[1]
        assert record == AnnualPeak(water_year=1921, discharge=283.0)

    def test_water_year_rolls_over_in_october(self):
        text = RDB_FIXTURE + "USGS\t07099500\t1923-11-02\t88\t\n"
        result = parse_usgs_rdb(text)
        assert result.peaks[-1].water_year == 1924

    def test_missing_required_column_names_it(self):
        bad = RDB_FIXTURE.replace("peak_va", "peak_value")
        with pytest.raises(ParseError, match="peak_va"):
            parse_usgs_rdb(bad)

    def test_empty_file_rejected(self):
        with pytest.raises(ParseError, match="empty"):
            parse_usgs_rdb("# only comments\n# nothing else\n")

    def test_nonpositive_values_skipped(self):
        text = RDB_FIXTURE + "USGS\t07099500\t1924-06-01\t0\t\nUSGS\t07099500\t1925-06-01\t-4\t\n"
        result = parse_usgs_rdb(text)
        assert len(result.peaks) == 3
        assert result.skipped == 2

    def test_accepts_file_like_input(self):
        result = parse_usgs_rdb(io.StringIO(RDB_FIXTURE))
        assert len(result.peaks) == 3

    def test_round_trip_is_lossless(self):
        peaks = [
            AnnualPeak(1901, 283.0),
            AnnualPeak(1902, 96.5),
            AnnualPeak(1903, 1234.5678),
            AnnualPeak(1904, 0.1234567890123),
        ]
        buf = io.StringIO()
        write_usgs_rdb(peaks, buf)
        again = parse_usgs_rdb(buf.getvalue()).peaks
        assert [(p.water_year, p.discharge) for p in again] == [
            (p.water_year, p.discharge) for p in peaks
        ]


class TestErrorModels:
    def test_zero_cv_degenerates_to_exact(self):
        ds = PeakDataset(peaks=(AnnualPeak(1900, 100.0),))
        out = attach_error_models(ds, cv_gage=0.0, cv_historical=0.0)
        assert out.peaks[0].error_model.kind == "none"

    def test_cv_sets_relative_standard_deviation(self):
        ds = PeakDataset(peaks=(AnnualPeak(1900, 100.0),))
        out = attach_error_models(ds, cv_gage=0.1)
        err = out.peaks[0].error_model
        assert err.kind == "normal_cv"
        assert err.cv * 100.0 == pytest.approx(10.0)  # sigma = cv * discharge

    def test_paleo_triangle_mode_defaults_to_midpoint(self):
        bound = PaleoBound(discharge_lower=1500, discharge_upper=2500, age_lower=700, age_upper=870)
        assert bound.discharge_dist.kind == "triangular"
        assert bound.discharge_dist.triangle_mode == pytest.approx(2000.0)

    def test_triangle_mode_configurable(self):
        err = ErrorModel(kind="triangular", bounds=(1500, 2500), mode=2300.0)
        assert err.triangle_mode == 2300.0

    def test_negative_cv_rejected(self):
        ds = PeakDataset(peaks=(AnnualPeak(1900, 100.0),))
        with pytest.raises(ConfigError):
            attach_error_models(ds, cv_gage=-0.1)
        with pytest.raises(ConfigError):
            ErrorModel(kind="normal_cv", cv=-0.5)


class TestDatasetInvariants:
    def test_duplicate_water_years_rejected(self):
        with pytest.raises(DataError, match="1900"):
            PeakDataset(peaks=(AnnualPeak(1900, 10.0), AnnualPeak(1900, 20.0)))

    def test_nonpositive_discharge_rejected(self):
        with pytest.raises(DataError):
            AnnualPeak(1900, 0.0)

    def test_historical_requires_censoring(self):
        with pytest.raises(DataError, match="CensoringSpec"):
            PeakDataset(
                peaks=(AnnualPeak(1900, 10.0),),
                historical=(HistoricalFlood(1850, 500.0),),
            )

    def test_historical_below_threshold_rejected(self):
        spec = CensoringSpec(threshold=400.0, record_length=50, exceedance_count=1)
        with pytest.raises(DataError, match="below censoring threshold"):
            PeakDataset(
                peaks=(AnnualPeak(1900, 10.0),),
                historical=(HistoricalFlood(1850, 300.0),),
                censoring=spec,
            )

    def test_exceedance_count_must_match(self):
        spec = CensoringSpec(threshold=400.0, record_length=50, exceedance_count=2)
        with pytest.raises(DataError, match="exceedance count"):
            PeakDataset(
                peaks=(AnnualPeak(1900, 10.0),),
                historical=(HistoricalFlood(1850, 500.0),),
                censoring=spec,
            )

    def test_record_count_is_sum_of_classes(self):
        ds = pueblo_like_dataset()
        assert ds.n_records == 85
        assert len(ds.peaks) == 81
        assert len(ds.historical) == 3
        assert len(ds.paleo) == 1

    def test_default_censoring_from_data(self):
        historical = [HistoricalFlood(1864, 1980.0), HistoricalFlood(1893, 1410.0)]
        spec = default_censoring(historical, gage_start_year=1895)
        assert spec.threshold == 1410.0
        assert spec.record_length == 31.0
        assert spec.exceedance_count == 2


class TestHistoricalPaleoCsv:
    def test_round_trip(self):
        historical = [HistoricalFlood(1864, 1980.0), HistoricalFlood(1894, 1620.0)]
        paleo = [PaleoBound(discharge_lower=60, discharge_upper=4200, age_lower=700, age_upper=870)]
        buf = io.StringIO()
        write_historical_paleo_csv(historical, paleo, buf)
        buf.seek(0)
        h2, p2 = read_historical_paleo_csv(buf)
        assert [(h.year, h.discharge) for h in h2] == [(1864, 1980.0), (1894, 1620.0)]
        assert p2[0].discharge_lower == 60
        assert p2[0].age_upper == 870

    def test_bad_header_rejected(self):
        with pytest.raises(ParseError, match="header"):
            read_historical_paleo_csv(io.StringIO("a,b,c\n1,2,3\n"))

    def test_unknown_kind_rejected(self):
        buf = io.StringIO(
            "kind,year_or_age_lower,age_upper,discharge_or_lower,discharge_upper\n"
            "mystery,1,2,3,4\n"
        )
        with pytest.raises(ParseError, match="mystery"):
            read_historical_paleo_csv(buf)


class TestPlottingPositions:
    def test_largest_of_81_plots_at_82_years(self):
        peaks = tuple(AnnualPeak(1900 + i, 10.0 + i) for i in range(81))
        rows = empirical_return_periods(PeakDataset(peaks=peaks))
        assert rows[0].return_period == pytest.approx(82.0)
        assert rows[0].discharge == pytest.approx(90.0)

    def test_single_peak_plots_at_2_years(self):
        rows = empirical_return_periods(PeakDataset(peaks=(AnnualPeak(1900, 50.0),)))
        assert rows[0].return_period == pytest.approx(2.0)

    def test_strictly_decreasing_and_above_one(self):
        ds = pueblo_like_dataset()
        rows = empirical_return_periods(ds)
        for kind in ("gage", "historical"):
            periods = [r.return_period for r in rows if r.kind == kind]
            assert all(t > 1 for t in periods)
            assert all(a > b for a, b in zip(periods, periods[1:]))

    def test_transition_discharge_near_eleven_years(self):
        # the two-population break at 283 m3/s should plot near T = 11 y
        ds = pueblo_like_dataset()
        gage = [r for r in empirical_return_periods(ds) if r.kind == "gage"]
        gage.sort(key=lambda r: r.discharge)
        discharges = np.array([r.discharge for r in gage])
        periods = np.array([r.return_period for r in gage])
        t_at_transition = float(np.interp(283.0, discharges, periods))
        assert 8.0 <= t_at_transition <= 14.0

    def test_historical_positions_span_record_length(self):
        ds = pueblo_like_dataset()
        rows = [r for r in empirical_return_periods(ds) if r.kind == "historical"]
        assert rows[0].return_period == pytest.approx(32.0)  # (31 + 1) / 1

    def test_paleo_position_at_expected_age(self):
        ds = pueblo_like_dataset()
        rows = [r for r in empirical_return_periods(ds) if r.kind == "paleo"]
        assert len(rows) == 1
        assert rows[0].return_period == pytest.approx(786.0)  # mean age + 1

    def test_empty_dataset_rejected(self):
        with pytest.raises(DataError):
            empirical_return_periods(PeakDataset(peaks=()))
