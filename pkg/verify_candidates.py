# Calibration scratch: strong-fit verification of shortlisted generation seeds.
import sys
import time

from floodmix.demo import pueblo_like_dataset
from floodmix.distributions import Family, quantile, sf
from floodmix.fitting import FitConfig, fit_mle, rank_models

FULL = FitConfig()  # shipped defaults: 4 seeds, maxgen 2000
STRONG = FitConfig(seeds=(1, 2, 3, 4, 5, 6, 7, 8), max_generations=4000)

for gs in [int(s) for s in sys.argv[1:]]:
    print(f"=== generation seed {gs} ===", flush=True)
    ds = pueblo_like_dataset(seed=gs)
    fits = {}
    for fam in Family:
        t0 = time.time()
        fits[fam] = fit_mle(fam, ds, FULL)
        f = fits[fam]
        print(
            f"  [default] {fam.value:9s} ll={f.loglik:9.3f} aic={f.aic:9.3f} "
            f"bic={f.bic:9.3f} conv={f.converged} ({time.time()-t0:.0f}s)",
            flush=True,
        )
    ranking = rank_models(fits.values())
    print("  AIC:", [f.family.value for f in ranking["aic"]])
    print("  BIC:", [f.family.value for f in ranking["bic"]])
    # adversarial: give the competitors extra optimization effort
    for fam in (Family.TCEV, Family.MIXED_LP3, Family.MIXED_GEV):
        t0 = time.time()
        f = fit_mle(fam, ds, STRONG)
        print(
            f"  [strong]  {fam.value:9s} ll={f.loglik:9.3f} per-seed spread "
            f"{max(f.per_seed_logliks)-min(f.per_seed_logliks):.4f} ({time.time()-t0:.0f}s)",
            flush=True,
        )
        fits[fam] = f
    mg, tc, ml, lp = fits[Family.MIXED_GEV], fits[Family.TCEV], fits[Family.MIXED_LP3], fits[Family.LP3]
    print(f"  strong gaps: dTCEV={mg.loglik-tc.loglik:.2f} (need>6.65), dMLP3={mg.loglik-ml.loglik:.2f}")
    qa = quantile(lp.model, 1 - 1 / 1000.0)
    print(f"  T_b(LP3 Q1000 under MixedGEV) = {1.0/sf(mg.model, qa):.1f} (need 370-680)")
    qa100 = quantile(lp.model, 1 - 1 / 100.0)
    print(f"  T_b(LP3 Q100 under MixedGEV)  = {1.0/sf(mg.model, qa100):.1f} (paper ~100 +-25%)")
