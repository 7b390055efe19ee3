"""Overtopping return periods, regulatory classification, and hazard bands.

The return period of dam overtopping is the return period of the smallest
peak flow that overtops, read from a fitted flood frequency curve as
T = 1 / (1 - F).  Classification compares T against the regulatory window:
shorter than the lower threshold fails regulation, longer than the upper
threshold meets it, anything in between (inclusive) is uncertain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import quantile, sf
from .errors import ConfigError, DataError
from .fitting import FittedModel
from .hydraulics import Hydrograph, ReservoirSpec, route_level_pool, scale_hydrograph

__all__ = [
    "SafetyThresholds",
    "SafetyVerdict",
    "HazardCurve",
    "CLASS_DOES_NOT_MEET",
    "CLASS_UNCERTAIN",
    "CLASS_MEETS",
    "overtopping_return_period",
    "classify",
    "hazard_band",
    "quantile_comparison",
]

CLASS_DOES_NOT_MEET = "does_not_meet"
CLASS_UNCERTAIN = "uncertain"
CLASS_MEETS = "meets"

_CLASS_SEVERITY = {CLASS_DOES_NOT_MEET: 0, CLASS_UNCERTAIN: 1, CLASS_MEETS: 2}


@dataclass(frozen=True)
class SafetyThresholds:
    """Regulatory overtopping return-period window in years.

    The defaults bracket the tolerable-risk range implied by the loss-of-life
    study for the demonstration site (131,000 to 376,000 years).
    """

    lower: float = 131_000.0
    upper: float = 376_000.0

    def __post_init__(self):
        if not 0 < self.lower < self.upper:
            raise ConfigError(
                f"thresholds must satisfy 0 < lower < upper, got ({self.lower}, {self.upper})"
            )


@dataclass(frozen=True)
class SafetyVerdict:
    """Per-hydrograph classes plus the worst of them as headline."""

    headline: str
    classes: tuple[str, ...]
    return_periods: tuple[float, ...]
    model_family: str = ""


@dataclass(frozen=True, eq=False)
class HazardCurve:
    """Reservoir-stage band against return period for one fitted model:
    (T, min stage, max stage, any-shape-overtopped flag) per row."""

    return_periods: np.ndarray  # years, strictly increasing
    stage_min: np.ndarray  # m
    stage_max: np.ndarray  # m
    overtopped: np.ndarray  # bool
    model_family: str = ""

    def __post_init__(self):
        t = np.asarray(self.return_periods, dtype=float)
        if np.any(np.diff(t) <= 0):
            raise DataError("hazard-curve return periods must be strictly increasing")
        if np.any(self.stage_min > self.stage_max):
            raise DataError("hazard-curve band must satisfy min <= max")


def overtopping_return_period(fit: FittedModel, overtopping_peak: float) -> float:
    """T = 1 / (1 - F(peak)) in years under the fitted model.

    Returns +inf when the peak sits beyond the model's support (exceedance
    probability exactly zero).
    """
    exceed = sf(fit.model, overtopping_peak)
    if exceed <= 0.0:
        return math.inf
    return 1.0 / exceed


def classify(return_periods, thresholds: SafetyThresholds | None = None, model_family: str = "") -> SafetyVerdict:
    """Classify each return period and headline the worst class.

    T < lower fails regulation; lower <= T <= upper is uncertain (both
    boundaries inclusive, the conservative reading); T > upper meets it.
    """
    thresholds = thresholds or SafetyThresholds()
    periods = tuple(float(t) for t in return_periods)
    if not periods:
        raise DataError("classification needs at least one return period")
    if any(t <= 0 or math.isnan(t) for t in periods):
        raise DataError(f"return periods must be positive, got {periods}")
    classes = []
    for t in periods:
        if t < thresholds.lower:
            classes.append(CLASS_DOES_NOT_MEET)
        elif t <= thresholds.upper:
            classes.append(CLASS_UNCERTAIN)
        else:
            classes.append(CLASS_MEETS)
    headline = min(classes, key=_CLASS_SEVERITY.get)
    return SafetyVerdict(
        headline=headline,
        classes=tuple(classes),
        return_periods=periods,
        model_family=model_family,
    )


def hazard_band(
    fit: FittedModel,
    shapes,
    reservoir: ReservoirSpec,
    return_periods,
) -> HazardCurve:
    """Stage band across hydrograph shapes for a grid of return periods.

    For each T the model's 1 - 1/T quantile sets the peak flow; every shape
    is scaled to it and routed, and the band is the min/max peak stage.
    """
    shapes = tuple(shapes)
    if not shapes:
        raise DataError("hazard band needs at least one hydrograph shape")
    t_grid = np.asarray(sorted(float(t) for t in return_periods), dtype=float)
    if t_grid.size == 0 or np.any(t_grid <= 1):
        raise DataError("hazard-band return periods must be > 1 year")
    lo, hi, tops = [], [], []
    for t in t_grid:
        peak = float(quantile(fit.model, 1.0 - 1.0 / t))
        stages = []
        overtopped = False
        for shape in shapes:
            trace = route_level_pool(scale_hydrograph(shape, peak), reservoir)
            stages.append(trace.peak_stage)
            overtopped = overtopped or trace.overtopped
        lo.append(min(stages))
        hi.append(max(stages))
        tops.append(overtopped)
    return HazardCurve(
        return_periods=t_grid,
        stage_min=np.array(lo),
        stage_max=np.array(hi),
        overtopped=np.array(tops, dtype=bool),
        model_family=fit.model.family.value,
    )


def quantile_comparison(fit_a: FittedModel, fit_b: FittedModel, return_periods):
    """Cross-model quantile table.

    For each requested T: model a's quantile, model b's quantile, and the
    return period model b assigns to model a's quantile.  Rows come back as
    dicts with keys ``return_period``, ``quantile_a``, ``quantile_b``,
    ``t_of_a_under_b``.
    """
    rows = []
    for t in return_periods:
        t = float(t)
        if t <= 1:
            raise DataError(f"return periods must be > 1 year, got {t}")
        p = 1.0 - 1.0 / t
        qa = float(quantile(fit_a.model, p))
        qb = float(quantile(fit_b.model, p))
        exceed = sf(fit_b.model, qa)
        rows.append(
            {
                "return_period": t,
                "quantile_a": qa,
                "quantile_b": qb,
                "t_of_a_under_b": math.inf if exceed <= 0 else 1.0 / exceed,
            }
        )
    return rows
