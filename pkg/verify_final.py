# Calibration scratch: final full-strength verification of the two finalist
# demo structures on the frozen code.
import sys
import time

from floodmix.demo import GAGE_START_YEAR, pueblo_like_peaks
from floodmix.distributions import Family, quantile, sf
from floodmix.fitting import FitConfig, fit_mle, rank_models
from floodmix.hydrodata import (
    CensoringSpec,
    HistoricalFlood,
    PaleoBound,
    PeakDataset,
    attach_error_models,
)

STRONG = FitConfig(seeds=(1, 2, 3, 4, 5, 6, 7, 8), max_generations=4000)

STRUCTURES = {
    "A920_U4200": ((1150.0, 920.0, 1040.0), 4200.0),
    "B1250_U6000": ((1600.0, 1250.0, 1420.0), 6000.0),
}


def build(hist_vals, upper):
    historical = tuple(
        HistoricalFlood(year=y, discharge=q) for y, q in zip((1864, 1893, 1894), hist_vals)
    )
    censoring = CensoringSpec(
        threshold=min(hist_vals),
        record_length=float(GAGE_START_YEAR - 1864),
        exceedance_count=3,
    )
    paleo = (PaleoBound(discharge_lower=60.0, discharge_upper=upper, age_lower=700.0, age_upper=870.0),)
    ds = PeakDataset(
        peaks=pueblo_like_peaks(seed=20210603),
        historical=historical, censoring=censoring, paleo=paleo,
    )
    return attach_error_models(ds, 0.10, 0.25)


for name, (hist_vals, upper) in STRUCTURES.items():
    print(f"=== {name} ===", flush=True)
    ds = build(hist_vals, upper)
    fits = {}
    t0 = time.time()
    for fam in Family:
        fits[fam] = fit_mle(fam, ds)  # shipped defaults
        f = fits[fam]
        print(
            f"  {fam.value:9s} ll={f.loglik:9.3f} aic={f.aic:9.3f} bic={f.bic:9.3f} "
            f"conv={f.converged} spread={max(f.per_seed_logliks)-min(f.per_seed_logliks):.4f}",
            flush=True,
        )
    elapsed = time.time() - t0
    ranking = rank_models(fits.values())
    print(f"  default fit time {elapsed:.0f}s")
    print("  AIC:", [f.family.value for f in ranking["aic"]])
    print("  BIC:", [f.family.value for f in ranking["bic"]])
    mg, tc, ml, lp = fits[Family.MIXED_GEV], fits[Family.TCEV], fits[Family.MIXED_LP3], fits[Family.LP3]
    strong_ml = fit_mle(Family.MIXED_LP3, ds, STRONG)
    strong_mg = fit_mle(Family.MIXED_GEV, ds, STRONG)
    print(f"  strong MixedLP3 ll={strong_ml.loglik:.3f}  strong MixedGEV ll={strong_mg.loglik:.3f}")
    print(f"  genuine gaps: dTCEV={strong_mg.loglik-tc.loglik:.2f} dMLP3={strong_mg.loglik-strong_ml.loglik:.2f}")
    for t in (100.0, 500.0, 1000.0):
        qa = quantile(lp.model, 1 - 1 / t)
        print(f"  T_b(LP3 Q{t:.0f}) under MixedGEV = {1.0/sf(mg.model, qa):.1f}")
    print(f"  MixedGEV params: {tuple(round(p, 3) for p in mg.model.params)}")
    print(f"  LP3 params: {tuple(round(p, 4) for p in lp.model.params)}", flush=True)
