"""Figure rendering for the report path (PNG files next to the CSVs)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _save(fig, out_png):
    fig.tight_layout()
    fig.savefig(out_png, dpi=150)
    plt.close(fig)
    return out_png


def render_kcrit(ladder, value, error_radius, out_png):
    s = np.array([p[0] for p in ladder])
    k = np.array([p[1] for p in ladder])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(s, np.maximum(k - value, 1e-17), "o-", label="ladder excess over estimate")
    ax.semilogy(s, 1.0 / s, "k--", label="guaranteed 1/s envelope")
    ax.set_xlabel("shooting depth s")
    ax.set_ylabel("kappa_s(0) - estimate")
    ax.set_title(f"critical curvature {value:.9g} (radius {error_radius:.3g})")
    ax.legend()
    return _save(fig, out_png)


def render_admissibility(rows, verdict, out_png):
    s = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(s, [r[1] for r in rows], "o-", label="kappa_gamma")
    ax.plot(s, [r[2] for r in rows], "s--", label="kcrit (+ normal)")
    ax.plot(s, [r[3] for r in rows], "d--", label="kcrit (- normal)")
    ax.set_xlabel("s")
    ax.set_ylabel("curvature")
    ax.set_title(f"admissibility: {verdict}")
    ax.legend()
    return _save(fig, out_png)


def render_phase_ratio(rows, out_png):
    phi = np.array([r[2] for r in rows])
    ratio = np.array([r[8] for r in rows])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(phi, ratio, ".", ms=3)
    ax.axhline(1.0, color="k", ls="--", label="bound")
    ax.set_xlabel("phi")
    ax.set_ylabel("|d2 phi/ds dt| * phi / 2")
    ax.set_title("mixed-derivative bound ratio")
    ax.legend()
    return _save(fig, out_png)


def render_decay(fit, out_png):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(fit.log_lambda, fit.log_value, ".", ms=4, label="log extremal norm")
    xs = np.array([fit.log_lambda.min(), fit.log_lambda.max()])
    ax.plot(xs, fit.slope * xs + fit.intercept, "r-", label=f"slope {fit.slope:.3f}")
    ax.set_xlabel("log lambda")
    ax.set_ylabel("log extremal period norm")
    ax.set_title(f"decay fit (residual rms {fit.residual_rms:.3f})")
    ax.legend()
    return _save(fig, out_png)


def render_saturation(rows, window_integral, out_png):
    idx = [r.index for r in rows]
    mags = [r.magnitude for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(idx, mags, "o-", label="|integral|")
    ax.axhline(window_integral, color="k", ls="--", label="window integral")
    ax.set_xlabel("sequence index")
    ax.set_ylabel("|period integral|")
    ax.set_title("segment saturation")
    ax.legend()
    return _save(fig, out_png)


def render_zonal(ks, values, out_png):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ks, np.abs(values), "o-", ms=3, label="|equator integral|")
    ax.axhline(2.0, color="k", ls="--", label="limit 2")
    ax.set_xlabel("degree k")
    ax.set_ylabel("|zonal great-circle integral|")
    ax.set_title("sphere non-decay")
    ax.legend()
    return _save(fig, out_png)


def render_kuznecov(lams, sums, out_png):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(lams, sums, "o-", label="spectral sum")
    lam_arr = np.array(lams, dtype=float)
    if len(lams) > 1:
        c = np.array(sums).dot(lam_arr) / lam_arr.dot(lam_arr)
        ax.plot(lam_arr, c * lam_arr, "r--", label=f"{c:.4f} * Lambda")
    ax.set_xlabel("Lambda")
    ax.set_ylabel("cumulative squared period integrals")
    ax.set_title("Kuznecov growth")
    ax.legend()
    return _save(fig, out_png)


def render_windowed(lams, sums, out_png):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.stem(lams, sums)
    ax.set_xlabel("lambda")
    ax.set_ylabel("windowed spectral sum")
    ax.set_title("windowed spectral sums")
    return _save(fig, out_png)


def render_threshold(K0, K1, threshold, out_png):
    fig, ax = plt.subplots(figsize=(6, 4))
    if math.isfinite(threshold):
        a1 = math.sqrt(-K1)
        k0s = np.linspace(K1 * 0.999, min(-1e-3, K0 * 0.5) if K0 < 0 else -1e-3, 200)
        vals = []
        for k0 in k0s:
            a0 = math.sqrt(-k0)
            vals.append(math.log((a1 + a0) / (a1 - a0)) / (2 * a0) if a0 < a1 else math.inf)
        ax.plot(k0s, vals, "-", label="threshold vs K0 (K1 fixed)")
        ax.plot([K0], [threshold], "ro", label=f"this config: {threshold:.6f}")
        ax.set_xlabel("K0")
        ax.set_ylabel("admissible circle radius bound")
    else:
        ax.text(0.5, 0.5, "constant curvature: all radii admissible", ha="center")
    ax.set_title("circle-radius threshold")
    ax.legend()
    return _save(fig, out_png)
