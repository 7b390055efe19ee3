"""Walk through the shipped synthetic dataset.

Builds the 85-record demonstration dataset (81 gaged annual peaks, three
historical floods, one paleoflood bound), prints its structure, and shows
the empirical return-period plotting positions, including the
two-population transition near 283 m3/s.

Run: python demos/01_dataset_and_plotting_positions.py
"""

import numpy as np

from floodmix.demo import pueblo_like_dataset
from floodmix.hydrodata import empirical_return_periods

dataset = pueblo_like_dataset()
gage = dataset.gage_discharges()

print("dataset structure")
print(f"  gaged peaks:       {len(dataset.peaks)} (WY {dataset.peaks[0].water_year}"
      f" to {dataset.peaks[-1].water_year})")
print(f"  historical floods: {len(dataset.historical)} "
      f"({', '.join(str(h.year) for h in dataset.historical)})")
print(f"  paleoflood bounds: {len(dataset.paleo)}")
print(f"  records for BIC:   n = {dataset.n_records}")
print()
print("gage record summary (m3/s)")
print(f"  min {gage.min():.1f} | median {np.median(gage):.1f} | max {gage.max():.1f}")
print(f"  peaks above 283 m3/s: {(gage > 283).sum()}")
print()
print("censoring of the historical record")
spec = dataset.censoring
print(f"  threshold X0 = {spec.threshold:.0f} m3/s, record length h = "
      f"{spec.record_length:.0f} y, exceedances k = {spec.exceedance_count}")
print()

positions = empirical_return_periods(dataset)
print("plotting positions (Weibull), largest ten gaged peaks:")
for row in [p for p in positions if p.kind == "gage"][:10]:
    print(f"  T = {row.return_period:7.2f} y   Q = {row.discharge:8.1f} m3/s")
print("historical and paleo positions:")
for row in [p for p in positions if p.kind != "gage"]:
    print(f"  T = {row.return_period:7.2f} y   Q = {row.discharge:8.1f} m3/s   [{row.kind}]")

gage_rows = sorted((p for p in positions if p.kind == "gage"), key=lambda r: r.discharge)
t_at_283 = float(
    np.interp(
        283.0,
        [r.discharge for r in gage_rows],
        [r.return_period for r in gage_rows],
    )
)
print()
print(f"the snowmelt/rainstorm transition at 283 m3/s plots near T = {t_at_283:.1f} years")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for kind, marker in (("gage", "o"), ("historical", "s"), ("paleo", "^")):
        rows = [p for p in positions if p.kind == kind]
        ax.scatter(
            [r.return_period for r in rows],
            [r.discharge for r in rows],
            s=18, marker=marker, label=kind,
        )
    ax.axhline(283.0, ls="--", lw=0.8, color="gray")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("return period (years)")
    ax.set_ylabel("peak discharge (m3/s)")
    ax.legend()
    fig.tight_layout()
    fig.savefig("demo01_plotting_positions.png", dpi=150)
    print("wrote demo01_plotting_positions.png")
except ImportError:
    print("(matplotlib not installed; skipping the figure)")
