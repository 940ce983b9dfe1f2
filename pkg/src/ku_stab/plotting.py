"""The ``report`` path: CSV tables plus matplotlib figures.

Tables hold exact rationals as ``p/q`` strings.  Floats appear only as plot
coordinates.
"""

from __future__ import annotations

import csv
import os
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .chern import INF, format_slope  # noqa: E402
from .exact import format_rat  # noqa: E402
from .moduli import grid  # noqa: E402
from .tilt import (  # noqa: E402
    ALPHA_SQ_WINDOW,
    BETA_KU,
    FIRST_FOUR,
    SERRE_PARTNER,
    MukaiVector,
    TiltParams,
    exceptional_class,
    independence_determinant,
    ku_charge,
    tilt_slope,
    wall_scan,
)

ALPHA_SQ_SAMPLES = tuple(Fraction(k, 256) for k in range(1, 33)) + tuple(
    Fraction(k, 16) for k in (3, 4, 6, 8, 12, 16, 24, 32))


def slope_rows(beta=BETA_KU, samples=ALPHA_SQ_SAMPLES) -> list[dict]:
    rows = []
    for a2 in samples:
        p = TiltParams(a2, beta)
        row = {"alpha_sq": format_rat(a2)}
        for n in FIRST_FOUR:
            row[f"mu({n})"] = format_slope(tilt_slope(p, exceptional_class(n)))
            row[f"mu(S {n}[-2])"] = format_slope(tilt_slope(p, -exceptional_class(SERRE_PARTNER[n])))
        rows.append(row)
    return rows


def charge_rows(samples=ALPHA_SQ_SAMPLES) -> list[dict]:
    rows = []
    for a2 in samples:
        z1 = ku_charge(a2, MukaiVector(1, 0))
        z2 = ku_charge(a2, MukaiVector(0, 1))
        rows.append({
            "alpha_sq": format_rat(a2),
            "re_Z1": format_rat(z1.re), "im_Z1": format_rat(z1.im),
            "re_Z2": format_rat(z2.re), "im_Z2": format_rat(z2.im),
            "det": format_rat(independence_determinant(a2)),
        })
    return rows


def write_csv(path: str, rows: list[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)


def _f(s: str) -> float:
    return float("inf") if s == "inf" else float(Fraction(s))


def plot_slopes(rows: list[dict], path: str) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [_f(r["alpha_sq"]) for r in rows]
    for key in rows[0]:
        if key == "alpha_sq" or key.endswith(("Cl1)", "Rb)", "Cl1[-2])", "Rb[-2])")):
            continue  # equal to the Cl0 / Ra curves
        ax.plot(xs, [_f(r[key]) for r in rows], marker=".", label=key)
    ax.axvspan(0, float(ALPHA_SQ_WINDOW[1]), color="0.9", label="0 < alpha^2 < 1/16")
    ax.axhline(0, color="k", lw=0.5)
    ax.set_xscale("log")
    ax.set_xlabel("alpha^2")
    ax.set_ylabel("tilt slope at beta = -5/4")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_charges(rows: list[dict], path: str, wall) -> None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    for label, re_k, im_k in (("Z(lambda1)", "re_Z1", "im_Z1"), ("Z(lambda2)", "re_Z2", "im_Z2")):
        ax1.plot([_f(r[re_k]) for r in rows], [_f(r[im_k]) for r in rows], marker=".", label=label)
    ax1.axhline(0, color="k", lw=0.5)
    ax1.axvline(0, color="k", lw=0.5)
    ax1.set_xlabel("Re")
    ax1.set_ylabel("Im")
    ax1.legend(fontsize=8)
    xs = [_f(r["alpha_sq"]) for r in rows]
    ax2.plot(xs, [_f(r["det"]) for r in rows], marker=".", label="det[Z1; Z2]")
    if wall is not None:
        ax2.axvline(float(wall), color="r", ls="--", label=f"wall alpha^2 = {format_rat(wall)}")
    ax2.axvspan(0, float(ALPHA_SQ_WINDOW[1]), color="0.9")
    ax2.axhline(0, color="k", lw=0.5)
    ax2.set_xlabel("alpha^2")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_moduli(rows: list[dict], path: str) -> None:
    fig, ax = plt.subplots(figsize=(5, 4))
    m = [r["a2+b2"] for r in rows]
    ax.scatter(m, [r["dim"] for r in rows], s=10, label="dim")
    ax.scatter(m, [r["degree"] for r in rows], s=10, label="degree")
    ax.scatter(m, [r["divisibility"] for r in rows], s=10, label="divisibility")
    ax.set_xlabel("a^2 + b^2")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(out_dir: str, moduli_max: int = 50) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written = []

    srows = slope_rows()
    p = os.path.join(out_dir, "tilt_slopes.csv")
    write_csv(p, srows)
    written.append(p)
    p = os.path.join(out_dir, "tilt_slopes.png")
    plot_slopes(srows, p)
    written.append(p)

    crows = charge_rows()
    walls = [w for w in wall_scan(MukaiVector(1, 0), 1) if w.alpha_sq_root is not None]
    wall = walls[0].alpha_sq_root if walls else None
    p = os.path.join(out_dir, "ku_charge.csv")
    write_csv(p, crows)
    written.append(p)
    p = os.path.join(out_dir, "ku_charge.png")
    plot_charges(crows, p, wall)
    written.append(p)

    mrows = []
    for r in grid(moduli_max):
        mrows.append({"a": r.v.a, "b": r.v.b, "a2+b2": r.v.a ** 2 + r.v.b ** 2,
                      "dim": r.dim, "degree": r.degree, "divisibility": r.divisibility,
                      "involution_t": r.involution_witness, "label": r.example_label})
    p = os.path.join(out_dir, "moduli.csv")
    write_csv(p, mrows)
    written.append(p)
    p = os.path.join(out_dir, "moduli.png")
    plot_moduli(mrows, p)
    written.append(p)
    return written


__all__ = ["write_report", "slope_rows", "charge_rows", "INF"]
