"""Command-line entry point.

    curvlab run <config.json> [--out DIR] [--threads N] [--no-figures]
    curvlab verify
    curvlab kcrit --K -1 --smax 20

Exit codes: 0 success, 1 operational error, 2 mathematical property
violated (so CI can gate on the paper-level checks).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import figures
from .acceptance import verify_suite
from .admissibility import VIOLATED, check_curve, circle_radius_threshold, constant_ray_profiles
from .config import ExperimentConfig, load_config
from .curves import curve_from_spec
from .errors import ConfigError, CurvlabError
from .kcrit import kcrit_bounded_backward, kcrit_cross_validate, kcrit_shooting
from .periods import (
    decay_scan,
    kuznecov_sum,
    segment_saturation,
    windowed_sum,
    zonal_great_circle,
)
from .phase import ModelCurvePair, check_mixed_bound, check_pure_second
from .profiles import CurvatureProfile, WeightWindow, surface_from_tag
from .reporting import build_manifest, write_csv, write_json


def _run_kcrit(params, out, ctx):
    profile = CurvatureProfile.from_json(params["profile"])
    s_max = float(params["s_max"])
    tol = float(params.get("tol", 1e-10))
    bracket_tol = float(params.get("bracket_tol", 1e-8))
    method = params.get("method", "both")
    files = []
    result = {}
    if method in ("both", "shooting"):
        est = kcrit_shooting(profile, s_max, tol=tol)
        result = est.to_json_dict()
        files.append(write_csv(out / "kcrit_ladder.csv", ["s", "kappa_s"], est.ladder))
        if ctx["figures"]:
            files.append(
                figures.render_kcrit(est.ladder, est.value, est.error_radius, out / "kcrit_ladder.png")
            )
    if method in ("both", "bounded-backward"):
        bb = kcrit_bounded_backward(profile, s_max, bracket_tol=bracket_tol, tol=tol)
        if method == "bounded-backward":
            result = bb.to_json_dict()
        else:
            result["bounded_backward"] = bb.to_json_dict()
            rep = kcrit_cross_validate(profile, s_max, tol=tol, bracket_tol=bracket_tol)
            result["cross_gap"] = rep.gap
            result["cross_combined_radius"] = rep.combined_radius
    files.append(write_json(out / "kcrit_result.json", result))
    return 0, files, result


def _run_admissibility(params, out, ctx):
    curve = curve_from_spec(params["curve"])
    window = WeightWindow.from_json(params["window"])
    rays = constant_ray_profiles(float(params["K"]))
    report = check_curve(
        curve, window, rays, float(params["s_max"]), int(params.get("n_samples", 24))
    )
    files = [
        write_csv(
            out / "admissibility.csv",
            ["s", "kappa_gamma", "kplus", "kminus", "margin"],
            report.csv_rows(),
        ),
        write_json(
            out / "admissibility_verdict.json",
            {
                "verdict": report.verdict,
                "min_margin": report.min_margin,
                "max_error_radius": report.max_radius,
            },
        ),
    ]
    if ctx["figures"]:
        files.append(
            figures.render_admissibility(report.csv_rows(), report.verdict, out / "admissibility.png")
        )
    return (2 if report.verdict == VIOLATED else 0), files, {"verdict": report.verdict}


def _run_circle_threshold(params, out, ctx):
    K0, K1 = float(params["K0"]), float(params["K1"])
    thr = circle_radius_threshold(K0, K1)
    files = [write_csv(out / "circle_threshold.csv", ["K0", "K1", "radius_bound"], [(K0, K1, thr)])]
    if ctx["figures"]:
        files.append(figures.render_threshold(K0, K1, thr, out / "circle_threshold.png"))
    return 0, files, {"radius_bound": thr}


def _run_phase_check(params, out, ctx):
    surface = surface_from_tag(params["surface"])
    pair = ModelCurvePair(
        surface=surface,
        curve1=curve_from_spec(params["curve1"]),
        curve2=curve_from_spec(params["curve2"]),
        margin=float(params.get("margin", 0.1)),
        s_range=tuple(params.get("s_range", (-1.0, 1.0))),
        t_range=tuple(params.get("t_range", (-1.0, 1.0))),
    )
    n = int(params.get("n_samples", 400))
    which = params.get("check", "both")
    files = []
    status = 0
    summary = {}
    if which in ("both", "mixed"):
        rep = check_mixed_bound(pair, n)
        files.append(
            write_csv(
                out / "phase_mixed.csv",
                ["s", "t", "phi", "ds", "dt", "dst", "dss", "theta", "bound_ratio"],
                rep.rows,
            )
        )
        if ctx["figures"]:
            files.append(figures.render_phase_ratio(rep.rows, out / "phase_mixed.png"))
        summary["mixed_max_ratio"] = rep.max_ratio
        summary["mixed_passed"] = rep.passed
        status = max(status, 0 if rep.passed else 2)
    if which in ("both", "pure-second"):
        rep2 = check_pure_second(pair, n)
        files.append(
            write_csv(
                out / "phase_pure_second.csv",
                ["s", "t", "dss_fd", "dss_formula", "sign", "abs_err"],
                rep2.rows,
            )
        )
        summary["pure_second_max_err"] = rep2.max_abs_err
        summary["pure_second_passed"] = rep2.passed
        status = max(status, 0 if rep2.passed else 2)
    files.append(write_json(out / "phase_summary.json", summary))
    return status, files, summary


def _lambda_list(params):
    if "n_list" in params:
        return [int(n) for n in params["n_list"]]
    lo = int(params.get("lambda_min", 100))
    hi = int(params.get("lambda_max", 300))
    step = int(params.get("lambda_step", 1))
    return [k * k for k in range(lo, hi + 1, step)]


def _run_decay_scan(params, out, ctx):
    curve = curve_from_spec(params["curve"])
    window = WeightWindow.from_json(params["window"])
    from .periods import extremal_period_norm

    n_list = _lambda_list(params)
    rows = []
    for n in n_list:
        norm = extremal_period_norm(curve, window, n)
        if norm is not None:
            rows.append((n, math.sqrt(n), norm))
    fit = decay_scan(curve, window, n_list)
    files = [
        write_csv(out / "decay_scan.csv", ["n", "lambda", "extremal_norm"], rows),
        write_json(
            out / "decay_fit.json",
            {
                "slope": fit.slope,
                "intercept": fit.intercept,
                "residual_rms": fit.residual_rms,
                "points": fit.n_points,
            },
        ),
    ]
    if ctx["figures"]:
        files.append(figures.render_decay(fit, out / "decay_scan.png"))
    return 0, files, {"slope": fit.slope}


def _run_segment_saturation(params, out, ctx):
    window = WeightWindow.from_json(params["window"])
    direction = params["direction"]
    direction = tuple(
        int(v) if isinstance(v, (int, float)) and float(v).is_integer() else float(v)
        for v in direction
    )
    rows = segment_saturation(direction, window, int(params["k_max"]), params.get("mode", "auto"))
    ib = window.integral()
    files = [
        write_csv(
            out / "segment_saturation.csv",
            ["index", "m1", "m2", "abs_integral", "normal_defect", "window_integral"],
            [(r.index, r.m[0], r.m[1], r.magnitude, r.normal_defect, ib) for r in rows],
        )
    ]
    if ctx["figures"]:
        files.append(figures.render_saturation(rows, ib, out / "segment_saturation.png"))
    return 0, files, {"deepest": rows[-1].magnitude, "window_integral": ib}


def _run_zonal(params, out, ctx):
    k_max = int(params["k_max"])
    rows = [(k, zonal_great_circle(k)) for k in range(0, k_max + 1)]
    files = [write_csv(out / "zonal.csv", ["k", "zonal_value"], rows)]
    if ctx["figures"]:
        files.append(
            figures.render_zonal([r[0] for r in rows], [r[1] for r in rows], out / "zonal.png")
        )
    return 0, files, {"k_max": k_max}


def _run_kuznecov(params, out, ctx):
    curve = curve_from_spec(params["curve"])
    window = WeightWindow.from_json(params["window"])
    lams = [float(v) for v in params["Lambdas"]]
    worker = lambda lam: kuznecov_sum(curve, window, lam)
    if ctx["threads"] > 1:
        with ThreadPoolExecutor(max_workers=ctx["threads"]) as pool:
            sums = list(pool.map(worker, lams))
    else:
        sums = [worker(lam) for lam in lams]
    rows = list(zip(lams, sums))
    files = [write_csv(out / "kuznecov.csv", ["Lambda", "kuznecov_sum"], rows)]
    if ctx["figures"]:
        files.append(figures.render_kuznecov(lams, sums, out / "kuznecov.png"))
    return 0, files, {"sums": dict(zip(map(str, lams), sums))}


def _run_windowed_sum(params, out, ctx):
    curve = curve_from_spec(params["curve"])
    window = WeightWindow.from_json(params["window"])
    lam = float(params["lambda"])
    T = float(params["T"])
    mode = params.get("mode", "sharp")
    value = windowed_sum(curve, window, lam, T, mode=mode)
    files = [
        write_csv(out / "windowed_sum.csv", ["lambda", "T", "mode", "windowed_sum"], [(lam, T, mode, value)])
    ]
    if ctx["figures"]:
        files.append(figures.render_windowed([lam], [value], out / "windowed_sum.png"))
    return 0, files, {"windowed_sum": value}


_RUNNERS = {
    "kcrit": _run_kcrit,
    "admissibility": _run_admissibility,
    "circle-threshold": _run_circle_threshold,
    "phase-check": _run_phase_check,
    "decay-scan": _run_decay_scan,
    "segment-saturation": _run_segment_saturation,
    "zonal": _run_zonal,
    "kuznecov": _run_kuznecov,
    "windowed-sum": _run_windowed_sum,
}


def run_experiment(config: ExperimentConfig, out_dir=None, threads: int = 1, render: bool = True) -> int:
    out = Path(out_dir if out_dir is not None else config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ctx = {"threads": max(1, threads), "figures": render, "seed": config.seed}
    np.random.seed(config.seed % (2**32))
    t0 = time.perf_counter()
    status, files, summary = _RUNNERS[config.experiment](config.params, out, ctx)
    elapsed = time.perf_counter() - t0
    manifest = build_manifest(
        config.raw,
        config.seed,
        {"experiment": elapsed},
        files,
        extra={"experiment": config.experiment, "summary": summary},
    )
    write_json(out / "manifest.json", manifest)
    return status


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="curvlab",
        description="critical geodesic curvature, admissibility, and period-integral experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config")
    p_run.add_argument("config", help="path to a JSON experiment config")
    p_run.add_argument("--out", default=None, help="output directory (overrides config)")
    p_run.add_argument("--threads", type=int, default=1, help="worker threads for independent items")
    p_run.add_argument("--no-figures", action="store_true", help="skip PNG rendering")

    sub.add_parser("verify", help="run the acceptance suite")

    p_k = sub.add_parser("kcrit", help="quick kcrit for a constant-curvature ray")
    p_k.add_argument("--K", type=float, required=True, help="constant sectional curvature (<= 0)")
    p_k.add_argument("--smax", type=float, default=20.0, help="ray depth")
    p_k.add_argument("--tol", type=float, default=1e-10)

    args = parser.parse_args(argv)
    if args.command == "verify":
        return verify_suite()
    if args.command == "kcrit":
        from .profiles import make_constant_profile

        try:
            est = kcrit_shooting(make_constant_profile(args.K), args.smax, tol=args.tol)
        except CurvlabError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(json.dumps(est.to_json_dict(), indent=2))
        return 0
    # run
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 1
    try:
        return run_experiment(
            config, out_dir=args.out, threads=args.threads, render=not args.no_figures
        )
    except CurvlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
