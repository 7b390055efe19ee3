"""End-to-end dam overtopping safety assessment.

Fits the two headline models (the regulatory standard LP3 and the
best-fitting MixedGEV), finds each hydrograph shape's overtopping peak,
converts the peaks into return periods under both flood frequency curves,
and classifies the dam against the regulatory window.  Also prints the
cross-model quantile table showing how the single-distribution model
underestimates rare floods.

Expect a couple of minutes of optimization.

Run: python demos/05_safety_assessment.py
"""

from floodmix.demo import demo_hydrograph_shapes, demo_reservoir, pueblo_like_dataset
from floodmix.distributions import Family
from floodmix.fitting import fit_mle
from floodmix.hydraulics import find_overtopping_peak
from floodmix.safety import (
    SafetyThresholds,
    classify,
    overtopping_return_period,
    quantile_comparison,
)

dataset = pueblo_like_dataset()
print("fitting LP3 and MixedGEV (default multi-seed configuration)...")
lp3 = fit_mle(Family.LP3, dataset)
mixed = fit_mle(Family.MIXED_GEV, dataset)
print(f"  LP3      loglik {lp3.loglik:9.3f}  AIC {lp3.aic:9.3f}  BIC {lp3.bic:9.3f}")
print(f"  MixedGEV loglik {mixed.loglik:9.3f}  AIC {mixed.aic:9.3f}  BIC {mixed.bic:9.3f}")
print()

print("cross-model quantiles (how the LP3 flood sizes look under MixedGEV)")
rows = quantile_comparison(lp3, mixed, [100.0, 500.0, 1000.0])
for row in rows:
    print(
        f"  the LP3 {row['return_period']:.0f}-year flood ({row['quantile_a']:.0f} m3/s) "
        f"is a {row['t_of_a_under_b']:.0f}-year flood under MixedGEV"
    )
print()

reservoir = demo_reservoir()
shapes = demo_hydrograph_shapes()
thresholds = SafetyThresholds()
print(
    f"regulatory window: does not meet < {thresholds.lower:,.0f} y <= uncertain <= "
    f"{thresholds.upper:,.0f} y < meets"
)
print()
print(f"{'model':<10} {'hydrograph':<16} {'overtop peak':>13} {'T (years)':>12}  class")
for fit in (lp3, mixed):
    periods = []
    for shape in shapes:
        peak = find_overtopping_peak(shape, reservoir)
        t = overtopping_return_period(fit, peak)
        periods.append(t)
        verdict = classify([t], thresholds)
        print(
            f"{fit.model.family.value:<10} {shape.label:<16} {peak:>11.0f}   "
            f"{t:>12,.0f}  {verdict.classes[0]}"
        )
    headline = classify(periods, thresholds, model_family=fit.model.family.value)
    print(f"{'':<10} {'headline':<16} {'':>13} {'':>12}  -> {headline.headline}")
    print()

print("switching from the single-distribution standard to the better-fitting")
print("mixed model shortens every overtopping return period severalfold and")
print("changes the safety classification.")
