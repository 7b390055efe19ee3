# Calibration scratch: sweep historical-flood magnitudes and the paleo
# window against generation seeds.  Not part of the package.
import itertools
import sys
import time

from floodmix.demo import GAGE_START_YEAR, pueblo_like_peaks
from floodmix.distributions import Family, quantile, sf
from floodmix.fitting import FitConfig, fit_mle
from floodmix.hydrodata import (
    CensoringSpec,
    HistoricalFlood,
    PaleoBound,
    PeakDataset,
    attach_error_models,
)

QUICK = FitConfig(seeds=(1, 2), max_generations=900)
MIX = FitConfig(seeds=(1, 2, 3, 4), max_generations=1600)

HIST_SETS = {
    "A920": (920.0, 1040.0, 1150.0),
    "B1250": (1250.0, 1420.0, 1600.0),
}
PALEO_UPPER = {"U4200": 4200.0, "U6000": 6000.0}
SEEDS = [101, 149, 181, 199, 20210603]


def build(seed, hist_key, upper_key):
    hvals = HIST_SETS[hist_key]
    historical = tuple(
        HistoricalFlood(year=y, discharge=q) for y, q in zip((1864, 1893, 1894), hvals)
    )
    censoring = CensoringSpec(
        threshold=min(hvals),
        record_length=float(GAGE_START_YEAR - 1864),
        exceedance_count=3,
    )
    paleo = (
        PaleoBound(
            discharge_lower=60.0,
            discharge_upper=PALEO_UPPER[upper_key],
            age_lower=700.0,
            age_upper=870.0,
        ),
    )
    ds = PeakDataset(
        peaks=pueblo_like_peaks(seed=seed),
        historical=historical,
        censoring=censoring,
        paleo=paleo,
    )
    return attach_error_models(ds, 0.10, 0.25)


for hist_key, upper_key, seed in itertools.product(HIST_SETS, PALEO_UPPER, SEEDS):
    t0 = time.time()
    ds = build(seed, hist_key, upper_key)
    fits = {}
    for fam, cfg in [
        (Family.TCEV, QUICK), (Family.LP3, QUICK),
        (Family.MIXED_GEV, MIX), (Family.MIXED_LP3, MIX),
    ]:
        fits[fam] = fit_mle(fam, ds, cfg)
    mg, ml, tc, lp = (fits[Family.MIXED_GEV], fits[Family.MIXED_LP3],
                      fits[Family.TCEV], fits[Family.LP3])
    t1000 = 1.0 / sf(mg.model, quantile(lp.model, 1 - 1 / 1000.0))
    t100 = 1.0 / sf(mg.model, quantile(lp.model, 1 - 1 / 100.0))
    ok = (
        mg.loglik - tc.loglik > 6.8 and mg.loglik - ml.loglik > 0.5
        and 400 <= t1000 <= 650 and 75 <= t100 <= 125
    )
    print(
        f"{'PASS' if ok else '    '} {hist_key} {upper_key} seed {seed:9d} | "
        f"dTCEV {mg.loglik-tc.loglik:6.2f} | dMLP3 {mg.loglik-ml.loglik:6.2f} | "
        f"T_b(1000) {t1000:7.1f} | T_b(100) {t100:6.1f} | {time.time()-t0:5.1f}s",
        flush=True,
    )
