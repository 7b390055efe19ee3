"""Regenerate demos/data from the package's frozen demonstration scenario.

Everything the CLI needs lands in demos/data: the RDB peak file, the
historical/paleo CSV, three hydrograph shapes, the two rating curves, and
a ready-to-run config.yaml next to this script.  Outputs are deterministic.
"""

import os

from floodmix.demo import demo_hydrograph_shapes, demo_reservoir, pueblo_like_dataset
from floodmix.hydraulics import write_hydrograph_csv, write_rating_csv
from floodmix.hydrodata import write_historical_paleo_csv, write_usgs_rdb

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "data")

CONFIG = """\
# floodmix run configuration (synthetic demonstration scenario)
schema_version: 1

paths:
  rdb: data/peaks.rdb
  historical_paleo_csv: data/historical_paleo.csv
  hydrographs:
    - data/hydrograph_flood_of_record.csv
    - data/hydrograph_pmf.csv
    - data/hydrograph_trex.csv
  stage_storage_csv: data/stage_storage.csv
  stage_discharge_csv: data/stage_discharge.csv

# Measurement-error coefficients of variation (assumed, not published).
errors:
  cv_gage: 0.10
  cv_historical: 0.25

# Error discretization node counts (odd).
nodes:
  discharge: 11
  age: 11
  paleo_discharge: 11

# Threshold/record-length of the historical record; null = derive from data
# (smallest historical discharge; earliest historical year to gage start).
censoring:
  threshold: null
  record_length: null

# Pearson III transform space for the LP3 families: log10 or raw.
lp3_space: log10

fit:
  population_size: null   # null = 10 x parameter count
  max_generations: 2000
  mutation: 0.8
  crossover: 0.9
  seeds: [1, 2, 3, 4]
  convergence_tol: 0.01
  scale_floor_frac: 0.05

reservoir:
  initial_stage: {initial_stage}
  flood_pool_top: {flood_pool_top}
  crest: {crest}

hydrograph_step_s: 1800.0

# Regulatory overtopping return-period window (years).
thresholds:
  lower: 131000
  upper: 376000

output_dir: out
"""


def main() -> None:
    os.makedirs(DATA, exist_ok=True)
    dataset = pueblo_like_dataset()
    write_usgs_rdb(dataset.peaks, os.path.join(DATA, "peaks.rdb"), site_no="07099500")
    write_historical_paleo_csv(
        dataset.historical, dataset.paleo, os.path.join(DATA, "historical_paleo.csv")
    )
    for shape in demo_hydrograph_shapes():
        write_hydrograph_csv(shape, os.path.join(DATA, f"hydrograph_{shape.label}.csv"))
    reservoir = demo_reservoir()
    write_rating_csv(reservoir.stage_storage, "storage_m3", os.path.join(DATA, "stage_storage.csv"))
    write_rating_csv(
        reservoir.stage_discharge, "discharge_m3s", os.path.join(DATA, "stage_discharge.csv")
    )
    with open(os.path.join(HERE, "config.yaml"), "w") as fh:
        fh.write(
            CONFIG.format(
                initial_stage=reservoir.initial_stage,
                flood_pool_top=reservoir.flood_pool_top,
                crest=reservoir.crest,
            )
        )
    print(f"wrote demo data to {DATA}")


if __name__ == "__main__":
    main()
