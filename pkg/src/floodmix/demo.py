"""Shipped demonstration scenario: a synthetic stand-in for a snowmelt/
rainstorm river with a dam, sized like the motivating case study.

The published record behind the real study is not redistributable in full,
so the package ships a deterministic synthetic analogue with the same
structure: an 81-year gage record (water years 1895 to 1975) drawn from a
two-population process with a transition near 283 m3/s, the flood of record
in 1921, three pre-gage historical floods (1864, 1893, 1894), and one
paleoflood bound spanning roughly 700 to 870 years.  The reservoir and the
three 3-day hydrograph shapes are likewise synthetic, with volume-to-peak
ratios ordered broad > intermediate > peaked.

Everything here is frozen: same inputs on every call.
"""

from __future__ import annotations

import numpy as np

from .hydrodata import (
    AnnualPeak,
    CensoringSpec,
    HistoricalFlood,
    PaleoBound,
    PeakDataset,
    attach_error_models,
)
from .hydraulics import Hydrograph, RatingCurve, ReservoirSpec, gamma_pulse_hydrograph

__all__ = [
    "GAGE_START_YEAR",
    "pueblo_like_peaks",
    "pueblo_like_dataset",
    "demo_hydrograph_shapes",
    "demo_reservoir",
]

GAGE_START_YEAR = 1895
_GAGE_YEARS = 81
_RECORD_FLOOD_YEAR = 1921
_RECORD_FLOOD_PEAK = 2905.0  # m3/s, the synthetic flood of record

_GENERATION_SEED = 20210603
# Snowmelt bulk and rainstorm upper population of the generating mixture.
# The snowmelt component is sharply bounded above (strongly negative shape),
# the rainstorm component long-tailed, mirroring the physical split.
_SNOWMELT = (135.0, 45.0, -0.25)
_RAINSTORM = (500.0, 230.0, 0.22)
_RAIN_WEIGHT = 0.11

_HISTORICAL = (
    HistoricalFlood(year=1864, discharge=1150.0),
    HistoricalFlood(year=1893, discharge=920.0),
    HistoricalFlood(year=1894, discharge=1040.0),
)

_PALEO = PaleoBound(
    discharge_lower=60.0,
    discharge_upper=4200.0,
    age_lower=700.0,
    age_upper=870.0,
)


def pueblo_like_peaks(
    seed: int = _GENERATION_SEED,
    snowmelt: tuple[float, float, float] = _SNOWMELT,
    rainstorm: tuple[float, float, float] = _RAINSTORM,
    rain_weight: float = _RAIN_WEIGHT,
) -> tuple[AnnualPeak, ...]:
    """The deterministic 81-year synthetic gage record.

    Draws annual peaks from the two-population mixture, rejects draws that
    would rival the flood of record, and pins water year 1921 to the fixed
    record peak.  Values are rounded to 0.1 m3/s.  The defaults are the
    shipped record; the knobs exist for experiments.
    """
    rng = np.random.default_rng(seed)
    years = [GAGE_START_YEAR + i for i in range(_GAGE_YEARS)]
    values = {}
    for year in years:
        if year == _RECORD_FLOOD_YEAR:
            values[year] = _RECORD_FLOOD_PEAK
            continue
        while True:
            u = min(max(rng.random(), 1e-12), 1.0 - 1e-12)
            pick_rain = rng.random() < rain_weight
            mu, sigma, zeta = rainstorm if pick_rain else snowmelt
            y = -np.log(u)
            q = mu + sigma * (y ** (-zeta) - 1.0) / zeta
            if 1.0 < q < 0.9 * _RECORD_FLOOD_PEAK:
                break
        values[year] = round(float(q), 1)
    return tuple(AnnualPeak(water_year=y, discharge=values[y]) for y in years)


def pueblo_like_dataset(
    cv_gage: float = 0.10,
    cv_historical: float = 0.25,
    seed: int = _GENERATION_SEED,
) -> PeakDataset:
    """The full synthetic dataset: 81 gaged peaks + 3 historical floods +
    1 paleoflood bound (85 records), with error models attached.

    The censoring threshold defaults to the smallest historical discharge
    and the historical record length to the span from the earliest
    historical flood to the start of the gage record (31 years).
    """
    censoring = CensoringSpec(
        threshold=min(h.discharge for h in _HISTORICAL),
        record_length=float(GAGE_START_YEAR - min(h.year for h in _HISTORICAL)),
        exceedance_count=len(_HISTORICAL),
    )
    dataset = PeakDataset(
        peaks=pueblo_like_peaks(seed=seed),
        historical=_HISTORICAL,
        censoring=censoring,
        paleo=(_PALEO,),
    )
    return attach_error_models(dataset, cv_gage=cv_gage, cv_historical=cv_historical)


def demo_hydrograph_shapes(reference_peak: float = _RECORD_FLOOD_PEAK) -> tuple[Hydrograph, ...]:
    """Three synthetic 3-day flood shapes scaled to a common reference peak.

    Volume-to-peak ratio ordering: trex > pmf > flood_of_record, mirroring
    a physically modeled storm response, a regional design shape, and a
    peaky observed flood.
    """
    return (
        gamma_pulse_hydrograph(reference_peak, shape_a=8.0, time_to_peak_h=16.0, label="flood_of_record"),
        gamma_pulse_hydrograph(reference_peak, shape_a=3.5, time_to_peak_h=16.0, label="pmf"),
        gamma_pulse_hydrograph(reference_peak, shape_a=1.5, time_to_peak_h=16.0, label="trex"),
    )


def demo_reservoir() -> ReservoirSpec:
    """Synthetic reservoir: quadratic stage-storage, outlet works below the
    emergency spillway crest and a weir-law spillway above it."""
    stages = np.linspace(95.0, 118.0, 47)  # every 0.5 m

    # S(h) grows quadratically: widening pool with ~2e7 m2 base area.
    storage = 2.0e7 * (stages - 95.0) + 5.0e5 * (stages - 95.0) ** 2

    spillway = 110.0
    outlet = 30.0 + 8.0 * np.clip(stages - 95.0, 0.0, None)
    weir = 150.0 * np.clip(stages - spillway, 0.0, None) ** 1.5
    discharge = outlet + weir

    return ReservoirSpec(
        stage_storage=RatingCurve(stages=stages, values=storage),
        stage_discharge=RatingCurve(stages=stages, values=discharge),
        initial_stage=100.0,
        flood_pool_top=spillway,
        crest=115.0,
    )
