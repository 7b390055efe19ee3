"""Run configuration: one structured YAML file drives the whole pipeline.

Every constant the analysis depends on but the source study leaves
unstated (error coefficients, censoring parameters, node counts, optimizer
settings, reservoir elevations, regulatory thresholds) lives here, so
changing an assumption never requires a code change.  The schema is
versioned; unknown top-level keys are rejected to catch typos.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import yaml

from .errors import ConfigError
from .fitting import FitConfig
from .hydraulics import (
    Hydrograph,
    ReservoirSpec,
    read_hydrograph_csv,
    read_rating_csv,
)
from .hydrodata import (
    PeakDataset,
    attach_error_models,
    default_censoring,
    parse_usgs_rdb,
    read_historical_paleo_csv,
    CensoringSpec,
)
from .likelihood import LikelihoodConfig
from .safety import SafetyThresholds

__all__ = ["RunConfig", "load_config", "DEFAULT_RETURN_PERIODS"]

SCHEMA_VERSION = 1

_TOP_LEVEL_KEYS = {
    "schema_version",
    "paths",
    "errors",
    "nodes",
    "censoring",
    "lp3_space",
    "fit",
    "reservoir",
    "hydrograph_step_s",
    "thresholds",
    "return_periods",
    "output_dir",
}

#: Log-spaced grid used for frequency-curve and hazard-band emission when the
#: config does not list its own return periods.
DEFAULT_RETURN_PERIODS = (
    2.0, 5.0, 10.0, 25.0, 50.0, 100.0, 250.0, 500.0,
    1000.0, 2500.0, 5000.0, 10_000.0, 25_000.0, 50_000.0,
    100_000.0, 250_000.0, 500_000.0, 1_000_000.0,
)


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration with all paths resolved."""

    rdb_path: str
    historical_paleo_csv: str | None
    hydrograph_paths: tuple[str, ...]
    stage_storage_csv: str
    stage_discharge_csv: str
    cv_gage: float
    cv_historical: float
    likelihood: LikelihoodConfig
    censoring_threshold: float | None
    censoring_record_length: float | None
    fit: FitConfig
    initial_stage: float
    flood_pool_top: float
    crest: float
    hydrograph_step: float
    thresholds: SafetyThresholds
    return_periods: tuple[float, ...]
    output_dir: str

    # -- loading helpers -----------------------------------------------------

    def load_dataset(self) -> PeakDataset:
        """Parse the RDB and historical/paleo files into a PeakDataset with
        error models attached and censoring defaults filled in."""
        _require_file(self.rdb_path, "paths.rdb")
        with open(self.rdb_path) as fh:
            parsed = parse_usgs_rdb(fh)
        historical, paleo = [], []
        if self.historical_paleo_csv is not None:
            _require_file(self.historical_paleo_csv, "paths.historical_paleo_csv")
            historical, paleo = read_historical_paleo_csv(self.historical_paleo_csv)
        censoring = None
        if historical:
            gage_start = min(p.water_year for p in parsed.peaks)
            censoring = default_censoring(historical, gage_start)
            if self.censoring_threshold is not None or self.censoring_record_length is not None:
                censoring = CensoringSpec(
                    threshold=self.censoring_threshold or censoring.threshold,
                    record_length=self.censoring_record_length or censoring.record_length,
                    exceedance_count=len(historical),
                )
        dataset = PeakDataset(
            peaks=parsed.peaks,
            historical=tuple(historical),
            censoring=censoring,
            paleo=tuple(paleo),
        )
        return attach_error_models(dataset, self.cv_gage, self.cv_historical)

    def load_hydrographs(self) -> tuple[Hydrograph, ...]:
        shapes = []
        for path in self.hydrograph_paths:
            _require_file(path, "paths.hydrographs")
            label = os.path.splitext(os.path.basename(path))[0]
            shapes.append(read_hydrograph_csv(path, label=label, step=self.hydrograph_step))
        return tuple(shapes)

    def load_reservoir(self) -> ReservoirSpec:
        _require_file(self.stage_storage_csv, "paths.stage_storage_csv")
        _require_file(self.stage_discharge_csv, "paths.stage_discharge_csv")
        storage = read_rating_csv(self.stage_storage_csv, "storage_m3")
        discharge = read_rating_csv(self.stage_discharge_csv, "discharge_m3s")
        return ReservoirSpec(
            stage_storage=storage,
            stage_discharge=discharge,
            initial_stage=self.initial_stage,
            flood_pool_top=self.flood_pool_top,
            crest=self.crest,
        )


def _require_file(path: str | None, key: str) -> None:
    if path is None:
        raise ConfigError(f"{key} is required for this command")
    if not os.path.isfile(path):
        raise ConfigError(f"{key}: file not found: {path}")


def _resolve(base_dir: str, path: str | None) -> str | None:
    if path is None:
        return None
    return path if os.path.isabs(path) else os.path.normpath(os.path.join(base_dir, path))


def load_config(path: str) -> RunConfig:
    """Load and validate a YAML run configuration.

    Relative paths are resolved against the config file's directory.
    """
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")
    with open(path) as fh:
        raw = yaml.safe_load(fh)
    if not isinstance(raw, dict):
        raise ConfigError(f"config must be a YAML mapping, got {type(raw).__name__}")
    unknown = set(raw) - _TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError(f"unknown config key(s): {sorted(unknown)}")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")

    base = os.path.dirname(os.path.abspath(path))
    paths = raw.get("paths") or {}
    if "rdb" not in paths:
        raise ConfigError("paths.rdb is required")

    errors = raw.get("errors") or {}
    nodes = raw.get("nodes") or {}
    censoring = raw.get("censoring") or {}
    fit_raw = dict(raw.get("fit") or {})
    reservoir = raw.get("reservoir") or {}
    thresholds = raw.get("thresholds") or {}

    likelihood = LikelihoodConfig(
        discharge_nodes=int(nodes.get("discharge", 11)),
        age_nodes=int(nodes.get("age", 11)),
        paleo_discharge_nodes=int(nodes.get("paleo_discharge", 11)),
        lp3_space=str(raw.get("lp3_space", "log10")),
    )
    if likelihood.lp3_space not in ("log10", "raw"):
        raise ConfigError(f"lp3_space must be 'log10' or 'raw', got {likelihood.lp3_space!r}")

    if "seeds" in fit_raw:
        fit_raw["seeds"] = tuple(int(s) for s in fit_raw["seeds"])
    if fit_raw.get("population_size") is None:
        fit_raw.pop("population_size", None)
    known_fit = {
        "population_size", "max_generations", "mutation", "crossover",
        "seeds", "convergence_tol", "scale_floor_frac",
    }
    unknown_fit = set(fit_raw) - known_fit
    if unknown_fit:
        raise ConfigError(f"unknown fit key(s): {sorted(unknown_fit)}")
    fit = FitConfig(**fit_raw)

    for key in ("initial_stage", "flood_pool_top", "crest"):
        if key not in reservoir:
            raise ConfigError(f"reservoir.{key} is required")

    return_periods = tuple(float(t) for t in raw.get("return_periods", DEFAULT_RETURN_PERIODS))
    if any(t <= 1 for t in return_periods):
        raise ConfigError("return_periods must all be > 1 year")

    return RunConfig(
        rdb_path=_resolve(base, paths["rdb"]),
        historical_paleo_csv=_resolve(base, paths.get("historical_paleo_csv")),
        hydrograph_paths=tuple(_resolve(base, p) for p in paths.get("hydrographs", ())),
        stage_storage_csv=_resolve(base, paths.get("stage_storage_csv")),
        stage_discharge_csv=_resolve(base, paths.get("stage_discharge_csv")),
        cv_gage=float(errors.get("cv_gage", 0.10)),
        cv_historical=float(errors.get("cv_historical", 0.25)),
        likelihood=likelihood,
        censoring_threshold=_opt_float(censoring.get("threshold")),
        censoring_record_length=_opt_float(censoring.get("record_length")),
        fit=fit,
        initial_stage=float(reservoir["initial_stage"]),
        flood_pool_top=float(reservoir["flood_pool_top"]),
        crest=float(reservoir["crest"]),
        hydrograph_step=float(raw.get("hydrograph_step_s", 1800.0)),
        thresholds=SafetyThresholds(
            lower=float(thresholds.get("lower", 131_000.0)),
            upper=float(thresholds.get("upper", 376_000.0)),
        ),
        return_periods=return_periods,
        output_dir=_resolve(base, raw.get("output_dir", "out")),
    )


def _opt_float(value) -> float | None:
    return None if value is None else float(value)
