"""Shared fixtures: a miniature on-disk scenario for CLI tests."""

import os
import textwrap

import pytest

from floodmix.demo import demo_hydrograph_shapes, demo_reservoir, pueblo_like_dataset
from floodmix.hydraulics import write_hydrograph_csv, write_rating_csv
from floodmix.hydrodata import write_historical_paleo_csv, write_usgs_rdb


@pytest.fixture(scope="session")
def cli_scenario(tmp_path_factory):
    """A complete config + data directory with a fast fit budget."""
    root = tmp_path_factory.mktemp("scenario")
    data = root / "data"
    data.mkdir()
    dataset = pueblo_like_dataset()
    write_usgs_rdb(dataset.peaks, str(data / "peaks.rdb"), site_no="07099500")
    write_historical_paleo_csv(
        dataset.historical, dataset.paleo, str(data / "historical_paleo.csv")
    )
    shape_paths = []
    for shape in demo_hydrograph_shapes():
        path = data / f"hydrograph_{shape.label}.csv"
        write_hydrograph_csv(shape, str(path))
        shape_paths.append(f"data/{path.name}")
    reservoir = demo_reservoir()
    write_rating_csv(reservoir.stage_storage, "storage_m3", str(data / "stage_storage.csv"))
    write_rating_csv(reservoir.stage_discharge, "discharge_m3s", str(data / "stage_discharge.csv"))

    hydrograph_list = "[" + ", ".join(shape_paths) + "]"
    config = textwrap.dedent(
        f"""\
        schema_version: 1
        paths:
          rdb: data/peaks.rdb
          historical_paleo_csv: data/historical_paleo.csv
          hydrographs: {hydrograph_list}
          stage_storage_csv: data/stage_storage.csv
          stage_discharge_csv: data/stage_discharge.csv
        errors:
          cv_gage: 0.10
          cv_historical: 0.25
        fit:
          max_generations: 250
          seeds: [1]
        reservoir:
          initial_stage: {reservoir.initial_stage}
          flood_pool_top: {reservoir.flood_pool_top}
          crest: {reservoir.crest}
        thresholds:
          lower: 131000
          upper: 376000
        return_periods: [100, 1000, 10000, 100000]
        output_dir: out
        """
    )
    config_path = root / "config.yaml"
    config_path.write_text(config)
    return {"root": str(root), "config": str(config_path), "out": str(root / "out")}
