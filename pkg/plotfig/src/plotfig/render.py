"""Deterministic figure rendering from validated CSV rows.

All figures render to an in-memory buffer first and hit the output path
only on success, so a schema or rendering failure leaves no partial file.
Fonts, hash salt and metadata are pinned so identical inputs produce
byte-identical images.
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams.update({
    "svg.hashsalt": "plotfig",
    "font.family": "DejaVu Sans",
    "figure.figsize": (7.0, 4.6),
    "figure.dpi": 110,
})

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .schema import SchemaError, load_fits, validate  # noqa: E402

KINDS = ("butterfly", "ratio", "loglog", "bs-compare", "scaling")


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    csv_paths: tuple
    out_path: str
    fits_path: str | None = None
    style: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RenderInfo:
    """What ended up in the figure; used by tests and batch logs."""

    kind: str
    out_path: str
    n_rows: int
    columns_drawn: int = 0
    has_reference_line: bool = False
    fitted_slope: float | None = None


def _lcm_denominator(rows) -> int:
    den = 1
    for r in rows:
        den = math.lcm(den, int(r["q"]))
    return den


def _save(fig, out_path: str) -> None:
    ext = os.path.splitext(out_path)[1].lower().lstrip(".") or "svg"
    buf = io.BytesIO()
    if ext == "svg":
        fig.savefig(buf, format="svg", metadata={"Date": None})
    else:
        fig.savefig(buf, format=ext)
    plt.close(fig)
    with open(out_path, "wb") as fh:
        fh.write(buf.getvalue())


def _render_butterfly(spec: FigureSpec, rows) -> RenderInfo:
    den = _lcm_denominator(rows)
    fig, ax = plt.subplots()
    columns = set()
    if "band_lo" in rows[0]:
        for r in rows:
            x = float(r["h"]) * den
            ax.vlines(x, float(r["band_lo"]), float(r["band_hi"]),
                      colors="k", linewidth=2.2)
            columns.add(round(x))
    else:
        for r in rows:
            x = float(r["h"]) * den
            ax.plot(x, float(r["lambda"]), "k.", markersize=1.1)
            columns.add(round(x))
    ax.set_xlabel(spec.style.get("xlabel", f"{den} h"))
    ax.set_ylabel(spec.style.get("ylabel", "spectrum"))
    _save(fig, spec.out_path)
    return RenderInfo(spec.kind, spec.out_path, len(rows),
                      columns_drawn=len(columns))


def _render_ratio(spec: FigureSpec, rows) -> RenderInfo:
    hs = [float(r["h"]) for r in rows]
    fig, ax = plt.subplots()
    ax.plot(hs, [float(r["d"]) for r in rows], "o-", markersize=3,
            label="d(h)")
    ax.plot(hs, [float(r["D"]) for r in rows], "s--", markersize=3,
            label="D(h)")
    ax.axhline(1.0, color="gray", linewidth=0.8)
    ax.set_xlabel("h")
    ax.set_ylabel(spec.style.get("ylabel", "ratio"))
    ax.legend()
    _save(fig, spec.out_path)
    return RenderInfo(spec.kind, spec.out_path, len(rows),
                      has_reference_line=True)


def _render_loglog(spec: FigureSpec, rows) -> RenderInfo:
    pts = [(float(r["h"]), abs(float(r["d"]) - 1.0)) for r in rows
           if abs(float(r["d"]) - 1.0) > 0]
    if not pts:
        raise SchemaError("no usable |d - 1| values to plot")
    hs, devs = zip(*sorted(pts))
    fig, ax = plt.subplots()
    ax.loglog(hs, devs, "ko", markersize=3.5, label="|d(h) - 1|")
    # slope-1 reference line anchored at the smallest h
    ref = [devs[0] * (h / hs[0]) for h in hs]
    ax.loglog(hs, ref, "b--", linewidth=1.0, label="slope 1 reference")
    slope = None
    if spec.fits_path:
        fits = load_fits(spec.fits_path)
        if "d" in fits and "slope" in fits.get("d", {}):
            slope = float(fits["d"]["slope"])
            inter = float(fits["d"]["intercept"])
            fit_line = [math.exp(inter) * h ** slope for h in hs]
            ax.loglog(hs, fit_line, "r-", linewidth=1.0,
                      label=f"fit: slope {slope:.3f}")
    ax.set_xlabel("h")
    ax.set_ylabel("|d(h) - 1|")
    ax.legend()
    _save(fig, spec.out_path)
    return RenderInfo(spec.kind, spec.out_path, len(rows),
                      has_reference_line=True, fitted_slope=slope)


def _render_bs_compare(spec: FigureSpec, rows) -> RenderInfo:
    hs = [float(r["h"]) for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.4, 4.2))
    ax1.loglog(hs, [float(r["e_spec"]) for r in rows], "ko",
               markersize=4, label="spectral")
    ax1.loglog(hs, [float(r["e_bs"]) for r in rows], "r+",
               markersize=7, label="two-term rule")
    ax1.set_xlabel("h")
    ax1.set_ylabel("ground energy")
    ax1.legend()
    ax2.loglog(hs, [float(r["diff"]) for r in rows], "b.-", linewidth=0.8)
    ax2.set_xlabel("h")
    ax2.set_ylabel("|difference|")
    fig.tight_layout()
    _save(fig, spec.out_path)
    return RenderInfo(spec.kind, spec.out_path, len(rows))


def _render_scaling(spec: FigureSpec, rows) -> RenderInfo:
    hs = [float(r["h"]) for r in rows]
    fig, ax = plt.subplots()
    ax.loglog(hs, [float(r["min_eig"]) for r in rows], "ko-",
              markersize=3.5, linewidth=0.8,
              label=rows[0]["potential"])
    slope = None
    if spec.fits_path:
        fits = load_fits(spec.fits_path)
        entry = fits.get("scaling", {})
        if "slope" in entry:
            slope = float(entry["slope"])
            inter = float(entry["intercept"])
            ax.loglog(hs, [math.exp(inter) * h ** slope for h in hs],
                      "r--", linewidth=1.0, label=f"fit: slope {slope:.3f}")
    ax.set_xlabel("h")
    ax.set_ylabel("min eigenvalue")
    ax.legend()
    _save(fig, spec.out_path)
    return RenderInfo(spec.kind, spec.out_path, len(rows), fitted_slope=slope)


_RENDERERS = {
    "butterfly": _render_butterfly,
    "ratio": _render_ratio,
    "loglog": _render_loglog,
    "bs-compare": _render_bs_compare,
    "scaling": _render_scaling,
}


def render(spec: FigureSpec) -> RenderInfo:
    """Validate the inputs and write the figure for spec.kind."""
    if spec.kind not in _RENDERERS:
        raise SchemaError(f"unknown figure kind {spec.kind!r}")
    if not spec.csv_paths:
        raise SchemaError("no input CSV given")
    rows = []
    for path in spec.csv_paths:
        rows.extend(validate(spec.kind, path))
    return _RENDERERS[spec.kind](spec, rows)
