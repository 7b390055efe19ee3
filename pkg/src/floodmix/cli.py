"""Command-line pipeline: fit, rank, route, assess, plot-data.

Every subcommand takes ``--config PATH`` (a YAML run configuration, see
:mod:`floodmix.config`) and writes plain CSV/JSON artifacts into the
configured output directory.  Outputs are deterministic given the config
and seeds: keys are sorted, floats use repr round-tripping, and no
timestamps are embedded, so re-running a command reproduces its files
byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from .config import RunConfig, load_config
from .distributions import FAMILY_ORDER, Family, quantile
from .errors import FloodmixError, OvertoppingSearchError
from .fitting import FittedModel, fit_from_dict, fit_mle, fit_to_dict, rank_models
from .hydraulics import find_overtopping_peak, route_level_pool, scale_hydrograph
from .hydrodata import empirical_return_periods
from .safety import classify, hazard_band, overtopping_return_period

_FIT_PREFIX = "fit_"


def _out_dir(config: RunConfig, override: str | None) -> str:
    out = override or config.output_dir
    os.makedirs(out, exist_ok=True)
    return out


def _write_json(payload, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _fit_path(out: str, family: Family) -> str:
    return os.path.join(out, f"{_FIT_PREFIX}{family.value}.json")


def _load_fits(out: str) -> dict[Family, FittedModel]:
    fits = {}
    for family in FAMILY_ORDER:
        path = _fit_path(out, family)
        if os.path.isfile(path):
            with open(path) as fh:
                fits[family] = fit_from_dict(json.load(fh))
    if not fits:
        raise FloodmixError(
            f"no fit artifacts found in {out}; run `floodmix fit --config ...` first"
        )
    return fits


def _summary_table(fits) -> str:
    lines = [f"{'family':<10} {'k':>2} {'loglik':>10} {'AIC':>10} {'BIC':>10}  converged"]
    for f in sorted(fits, key=lambda f: f.bic):
        lines.append(
            f"{f.family.value:<10} {f.k:>2} {f.loglik:>10.3f} {f.aic:>10.3f} "
            f"{f.bic:>10.3f}  {f.converged}"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def cmd_fit(args) -> int:
    config = load_config(args.config)
    if args.seed_list:
        seeds = tuple(int(s) for s in args.seed_list.split(","))
        config = replace(config, fit=replace(config.fit, seeds=seeds))
    out = _out_dir(config, args.out)
    dataset = config.load_dataset()

    families = list(FAMILY_ORDER) if args.family == "all" else [Family(args.family)]
    fits, failures = [], []
    for family in families:
        try:
            fit = fit_mle(family, dataset, config.fit, config.likelihood)
        except FloodmixError as exc:
            failures.append((family, exc))
            print(f"fit failed for {family.value}: {exc}", file=sys.stderr)
            continue
        fits.append(fit)
        _write_json(fit_to_dict(fit), _fit_path(out, family))
    if fits:
        print(_summary_table(fits))
        print(f"wrote {len(fits)} fit artifact(s) to {out}")
    return 1 if failures else 0


def cmd_rank(args) -> int:
    config = load_config(args.config)
    out = _out_dir(config, args.out)
    fits = _load_fits(out)
    ranking = rank_models(fits.values())
    payload = {
        "by_aic": [f.family.value for f in ranking["aic"]],
        "by_bic": [f.family.value for f in ranking["bic"]],
    }
    _write_json(payload, os.path.join(out, "rankings.json"))
    print(_summary_table(fits.values()))
    print("AIC order:", " > ".join(payload["by_aic"]))
    print("BIC order:", " > ".join(payload["by_bic"]))
    return 0


def cmd_route(args) -> int:
    config = load_config(args.config)
    out = _out_dir(config, args.out)
    shapes = config.load_hydrographs()
    reservoir = config.load_reservoir()
    summary = {}
    for shape in shapes:
        routed = shape if args.peak is None else scale_hydrograph(shape, args.peak)
        trace = route_level_pool(routed, reservoir)
        path = os.path.join(out, f"route_{shape.label}.csv")
        with open(path, "w") as fh:
            fh.write("time_s,inflow_m3s,stage_m,outflow_m3s\n")
            for t, q, s, o in zip(
                routed.times(), routed.ordinates, trace.stages, trace.outflows
            ):
                fh.write(f"{float(t):.1f},{float(q)!r},{float(s)!r},{float(o)!r}\n")
        summary[shape.label] = {
            "peak_inflow_m3s": routed.peak,
            "peak_stage_m": trace.peak_stage,
            "peak_outflow_m3s": float(trace.outflows.max()),
            "overtopped": trace.overtopped,
            "mass_balance_rel_error": trace.mass_balance_rel_error,
        }
        print(
            f"{shape.label}: peak inflow {routed.peak:.1f} m3/s -> peak stage "
            f"{trace.peak_stage:.3f} m (overtopped: {trace.overtopped})"
        )
    _write_json(summary, os.path.join(out, "routing_summary.json"))
    return 0


def _write_plotting_positions(dataset, out: str) -> None:
    rows = empirical_return_periods(dataset)
    with open(os.path.join(out, "plotting_positions.csv"), "w") as fh:
        fh.write("kind,return_period_years,discharge_m3s\n")
        for row in rows:
            fh.write(f"{row.kind},{row.return_period!r},{row.discharge!r}\n")


def _write_frequency_curves(fits, return_periods, out: str) -> None:
    with open(os.path.join(out, "frequency_curves.csv"), "w") as fh:
        fh.write("family,return_period_years,discharge_m3s\n")
        for family in FAMILY_ORDER:
            if family not in fits:
                continue
            model = fits[family].model
            for t in return_periods:
                q = float(quantile(model, 1.0 - 1.0 / t))
                fh.write(f"{family.value},{t!r},{q!r}\n")


def cmd_assess(args) -> int:
    config = load_config(args.config)
    out = _out_dir(config, args.out)
    fits = _load_fits(out)
    dataset = config.load_dataset()
    shapes = config.load_hydrographs()
    reservoir = config.load_reservoir()

    _write_plotting_positions(dataset, out)
    _write_frequency_curves(fits, config.return_periods, out)

    overtopping = {}
    for shape in shapes:
        try:
            overtopping[shape.label] = find_overtopping_peak(shape, reservoir)
        except OvertoppingSearchError as exc:
            overtopping[shape.label] = None
            print(f"{shape.label}: {exc}", file=sys.stderr)

    report = {
        "schema_version": 1,
        "thresholds": {"lower": config.thresholds.lower, "upper": config.thresholds.upper},
        "overtopping_peaks_m3s": overtopping,
        "models": {},
    }
    print(f"{'family':<10} {'hydrograph':<18} {'peak m3/s':>12} {'T years':>14} class")
    for family in FAMILY_ORDER:
        if family not in fits:
            continue
        fit = fits[family]
        rows = []
        periods = []
        for shape in shapes:
            peak = overtopping[shape.label]
            if peak is None:
                rows.append({"hydrograph": shape.label, "overtopping_peak_m3s": None})
                continue
            t = overtopping_return_period(fit, peak)
            periods.append(t)
            rows.append(
                {
                    "hydrograph": shape.label,
                    "overtopping_peak_m3s": peak,
                    "return_period_years": t,
                }
            )
        verdict = classify(periods, config.thresholds, model_family=family.value)
        for row, cls in zip((r for r in rows if "return_period_years" in r), verdict.classes):
            row["class"] = cls
            print(
                f"{family.value:<10} {row['hydrograph']:<18} "
                f"{row['overtopping_peak_m3s']:>12.1f} {row['return_period_years']:>14.1f} "
                f"{cls}"
            )
        report["models"][family.value] = {
            "per_hydrograph": rows,
            "headline": verdict.headline,
        }

    _write_json(report, os.path.join(out, "safety_report.json"))

    with open(os.path.join(out, "hazard_bands.csv"), "w") as fh:
        fh.write("family,return_period_years,stage_min_m,stage_max_m,overtopped_flag\n")
        for family in FAMILY_ORDER:
            if family not in fits:
                continue
            curve = hazard_band(fits[family], shapes, reservoir, config.return_periods)
            for t, lo, hi, top in zip(
                curve.return_periods, curve.stage_min, curve.stage_max, curve.overtopped
            ):
                fh.write(f"{family.value},{float(t)!r},{float(lo)!r},{float(hi)!r},{int(top)}\n")
    print(f"assessment artifacts written to {out}")
    return 0


def cmd_plot_data(args) -> int:
    config = load_config(args.config)
    out = _out_dir(config, args.out)
    dataset = config.load_dataset()
    _write_plotting_positions(dataset, out)
    written = ["plotting_positions.csv"]
    try:
        fits = _load_fits(out)
    except FloodmixError:
        fits = {}
    if fits:
        _write_frequency_curves(fits, config.return_periods, out)
        written.append("frequency_curves.csv")
    print(f"wrote {', '.join(written)} to {out}")
    return 0


# ---------------------------------------------------------------------------
# Entry point.
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="floodmix",
        description="Mixed-distribution flood frequency analysis and dam safety assessment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="YAML run configuration")
        p.add_argument("--out", default=None, help="output directory (overrides config)")

    p_fit = sub.add_parser("fit", help="fit flood frequency distributions")
    common(p_fit)
    p_fit.add_argument(
        "--family",
        default="all",
        choices=["all"] + [f.value for f in FAMILY_ORDER],
        help="single family to fit (default: all six)",
    )
    p_fit.add_argument(
        "--seed-list", default=None, help="comma-separated optimizer seeds (overrides config)"
    )
    p_fit.set_defaults(func=cmd_fit)

    p_rank = sub.add_parser("rank", help="rank existing fits by AIC and BIC")
    common(p_rank)
    p_rank.set_defaults(func=cmd_rank)

    p_route = sub.add_parser("route", help="route configured hydrographs through the reservoir")
    common(p_route)
    p_route.add_argument(
        "--peak", type=float, default=None, help="scale every hydrograph to this peak (m3/s)"
    )
    p_route.set_defaults(func=cmd_route)

    p_assess = sub.add_parser("assess", help="overtopping safety assessment for all fits")
    common(p_assess)
    p_assess.set_defaults(func=cmd_assess)

    p_plot = sub.add_parser("plot-data", help="emit plot-ready CSV data")
    common(p_plot)
    p_plot.set_defaults(func=cmd_plot_data)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FloodmixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
