"""End-to-end CLI tests on a miniature scenario: artifact layout, exit
codes, determinism, and the documented report shapes."""

import json
import os

import pytest

from floodmix.cli import main
from floodmix.config import load_config
from floodmix.errors import ConfigError


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


@pytest.fixture(scope="session")
def fitted_scenario(cli_scenario):
    """Scenario with all six fit artifacts already produced."""
    code = main(["fit", "--config", cli_scenario["config"]])
    assert code == 0
    return cli_scenario


class TestConfig:
    def test_load_and_resolve_paths(self, cli_scenario):
        cfg = load_config(cli_scenario["config"])
        assert os.path.isabs(cfg.rdb_path)
        assert cfg.fit.seeds == (1,)
        assert cfg.thresholds.upper == 376_000.0
        dataset = cfg.load_dataset()
        assert dataset.n_records == 85
        assert dataset.censoring.record_length == 31.0

    def test_unknown_key_rejected(self, tmp_path):
        bad = tmp_path / "bad.yaml"
        bad.write_text("schema_version: 1\npaths: {rdb: x.rdb}\nreservoir: {initial_stage: 1, flood_pool_top: 2, crest: 3}\nmystery: 1\n")
        with pytest.raises(ConfigError, match="mystery"):
            load_config(str(bad))

    def test_wrong_schema_version_rejected(self, tmp_path):
        bad = tmp_path / "bad.yaml"
        bad.write_text("schema_version: 99\npaths: {rdb: x.rdb}\n")
        with pytest.raises(ConfigError, match="schema_version"):
            load_config(str(bad))


class TestFit:
    def test_fit_all_writes_six_artifacts(self, fitted_scenario, capsys):
        out = fitted_scenario["out"]
        files = sorted(f for f in os.listdir(out) if f.startswith("fit_"))
        assert files == [
            "fit_GEV.json", "fit_LN2.json", "fit_LP3.json",
            "fit_MixedGEV.json", "fit_MixedLP3.json", "fit_TCEV.json",
        ]
        with open(os.path.join(out, "fit_MixedGEV.json")) as fh:
            artifact = json.load(fh)
        assert artifact["model"]["family"] == "MixedGEV"
        assert len(artifact["model"]["params"]) == 7
        assert artifact["aic"] == pytest.approx(2 * 7 - 2 * artifact["loglik"])

    def test_single_family_fit(self, cli_scenario, tmp_path):
        out = str(tmp_path / "single")
        code = main(["fit", "--config", cli_scenario["config"], "--family", "GEV", "--out", out])
        assert code == 0
        assert os.listdir(out) == ["fit_GEV.json"]

    def test_missing_data_path_fails_with_path_in_message(self, tmp_path, capsys):
        cfg = tmp_path / "broken.yaml"
        cfg.write_text(
            "schema_version: 1\n"
            "paths: {rdb: data/nowhere.rdb}\n"
            "reservoir: {initial_stage: 1, flood_pool_top: 2, crest: 3}\n"
        )
        code = main(["fit", "--config", str(cfg)])
        assert code != 0
        assert "nowhere.rdb" in capsys.readouterr().err

    def test_summary_table_printed_sorted_by_bic(self, fitted_scenario, capsys):
        code = main(["rank", "--config", fitted_scenario["config"]])
        assert code == 0
        out = capsys.readouterr().out
        lines = [l for l in out.splitlines() if l and l.split()[0] in (
            "LN2", "LP3", "GEV", "TCEV", "MixedLP3", "MixedGEV")]
        bics = [float(l.split()[4]) for l in lines]
        assert bics == sorted(bics)


class TestRank:
    def test_rankings_json(self, fitted_scenario):
        code = main(["rank", "--config", fitted_scenario["config"]])
        assert code == 0
        with open(os.path.join(fitted_scenario["out"], "rankings.json")) as fh:
            ranking = json.load(fh)
        assert set(ranking) == {"by_aic", "by_bic"}
        assert sorted(ranking["by_aic"]) == sorted(
            ["LN2", "LP3", "GEV", "TCEV", "MixedLP3", "MixedGEV"]
        )


class TestRoute:
    def test_route_writes_traces(self, cli_scenario, tmp_path):
        out = str(tmp_path / "route_out")
        code = main(["route", "--config", cli_scenario["config"], "--out", out, "--peak", "2905"])
        assert code == 0
        files = sorted(os.listdir(out))
        assert "routing_summary.json" in files
        assert sum(f.startswith("route_") and f.endswith(".csv") for f in files) == 3
        with open(os.path.join(out, "routing_summary.json")) as fh:
            summary = json.load(fh)
        for label, row in summary.items():
            assert row["mass_balance_rel_error"] < 1e-3
            assert row["peak_inflow_m3s"] == pytest.approx(2905.0)


class TestAssess:
    def test_report_covers_all_models_and_shapes(self, fitted_scenario):
        code = main(["assess", "--config", fitted_scenario["config"]])
        assert code == 0
        out = fitted_scenario["out"]
        with open(os.path.join(out, "safety_report.json")) as fh:
            report = json.load(fh)
        assert len(report["models"]) == 6
        rows = [
            row
            for model in report["models"].values()
            for row in model["per_hydrograph"]
        ]
        assert len(rows) == 18  # 6 models x 3 hydrographs
        for row in rows:
            assert row["overtopping_peak_m3s"] > 0
            assert row["class"] in ("does_not_meet", "uncertain", "meets")
        for name in ("hazard_bands.csv", "frequency_curves.csv", "plotting_positions.csv"):
            assert os.path.isfile(os.path.join(out, name))

    def test_hazard_band_csv_schema(self, fitted_scenario):
        path = os.path.join(fitted_scenario["out"], "hazard_bands.csv")
        with open(path) as fh:
            header = fh.readline().strip()
            rows = fh.read().splitlines()
        assert header == "family,return_period_years,stage_min_m,stage_max_m,overtopped_flag"
        assert len(rows) == 6 * 4  # six models, four configured return periods
        for row in rows:
            family, t, lo, hi, flag = row.split(",")
            assert float(lo) <= float(hi)
            assert flag in ("0", "1")

    def test_assess_without_fits_names_fit_command(self, cli_scenario, tmp_path, capsys):
        out = str(tmp_path / "empty_out")
        code = main(["assess", "--config", cli_scenario["config"], "--out", out])
        assert code == 2
        assert "floodmix fit" in capsys.readouterr().err

    def test_rerun_is_byte_identical(self, fitted_scenario):
        out = fitted_scenario["out"]
        assert main(["assess", "--config", fitted_scenario["config"]]) == 0
        names = ["safety_report.json", "hazard_bands.csv", "frequency_curves.csv",
                 "plotting_positions.csv"]
        first = {n: read(os.path.join(out, n)) for n in names}
        assert main(["assess", "--config", fitted_scenario["config"]]) == 0
        second = {n: read(os.path.join(out, n)) for n in names}
        assert first == second


class TestPlotData:
    def test_plot_data_without_fits(self, cli_scenario, tmp_path):
        out = str(tmp_path / "plot_out")
        code = main(["plot-data", "--config", cli_scenario["config"], "--out", out])
        assert code == 0
        assert os.path.isfile(os.path.join(out, "plotting_positions.csv"))
        assert not os.path.isfile(os.path.join(out, "frequency_curves.csv"))

    def test_plotting_positions_cover_all_record_kinds(self, cli_scenario, tmp_path):
        out = str(tmp_path / "plot_out2")
        main(["plot-data", "--config", cli_scenario["config"], "--out", out])
        with open(os.path.join(out, "plotting_positions.csv")) as fh:
            rows = fh.read().splitlines()[1:]
        kinds = {row.split(",")[0] for row in rows}
        assert kinds == {"gage", "historical", "paleo"}
        assert len(rows) == 85
