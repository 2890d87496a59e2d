"""Turn solver tables into figures.

One entry point, ``render(spec)``, dispatching on the figure kind.  Each
renderer draws from the table columns only; nothing is recomputed.  Output
size is fixed per kind, so identical inputs give identical dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402
from matplotlib.colors import BoundaryNorm, ListedColormap  # noqa: E402

from .schema import KINDS, SchemaError, Table, read_table, validate

__all__ = ["FigureSpec", "RenderReport", "render"]

_FIGSIZE = {
    "sweep": (6.4, 4.2),
    "scaling": (5.6, 4.2),
    "phase-diagram": (5.8, 4.6),
    "infidelity": (5.6, 4.2),
}

# sign of the n, n+2 displacement correlation picks the condensate pattern
_CORR_TOL = 1e-9
_REGION_COLOR = {-1: "#f4b97f", 0: "#ededed", 1: "#9ec3e0"}
_REGION_GLYPH = {-1: "+ + - -", 0: "0", 1: "+ - + -"}


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: input tables, figure kind, and output path."""

    kind: str
    inputs: tuple[Path, ...]
    out: Path
    title: str | None = None
    xlim: tuple[float, float] | None = None
    ylim: tuple[float, float] | None = None
    dpi: int = 150


@dataclass(frozen=True)
class RenderReport:
    """What was drawn, for callers and tests; sizes are pixels."""

    kind: str
    out: Path
    rows: int
    series: int
    size: tuple[int, int]
    xlim: tuple[float, float]
    ylim: tuple[float, float]
    regions: int | None = None
    boundary_line: bool = False
    notes: tuple[str, ...] = field(default=())


def _finite(x: np.ndarray, *ys: np.ndarray):
    keep = np.isfinite(x)
    for y in ys:
        keep &= np.isfinite(y)
    return (x[keep],) + tuple(y[keep] for y in ys)


def _render_sweep(t: Table, ax) -> tuple[int, list[str]]:
    g = t.floats("g")
    ax2 = ax.twinx()
    e, = ax.plot(*_finite(g, t.floats("E_g")), color="tab:blue",
                 label="ground energy")
    a, = ax2.plot(*_finite(g, t.floats("abs_alpha")), color="tab:red",
                  label="|alpha| analytic")
    handles = [e, a]
    notes = []
    if "E_g_ed" in t.columns:
        handles.append(ax.scatter(
            *_finite(g, t.floats("E_g_ed")), marker="o", s=22,
            facecolors="none", edgecolors="tab:blue", label="energy ED"))
        notes.append("ed-energy-overlay")
    if "abs_alpha_ed" in t.columns:
        handles.append(ax2.scatter(
            *_finite(g, t.floats("abs_alpha_ed")), marker="s", s=22,
            facecolors="none", edgecolors="tab:red", label="|alpha| ED"))
        notes.append("ed-alpha-overlay")
    onset = np.flatnonzero(t.floats("abs_alpha") > 0)
    if onset.size and onset[0] > 0:
        ax.axvline(g[onset[0]], color="0.5", linestyle=":", linewidth=1)
        notes.append(f"onset at g={g[onset[0]]:g}")
    ax.set_xlabel("coupling g")
    ax.set_ylabel("ground energy")
    ax2.set_ylabel("mean field |alpha|")
    ax.legend(handles=handles, loc="center left", fontsize=8)
    return len(handles), notes


def _render_scaling(t: Table, ax) -> tuple[int, list[str]]:
    side = np.array(t.column("side"))
    d = t.floats("delta_g")
    eps = t.floats("eps")
    series = 0
    for tag, marker in (("np", "o"), ("srp", "s")):
        sel = side == tag
        if sel.any():
            ax.loglog(d[sel], eps[sel], marker=marker, markersize=4,
                      linestyle="-", label=f"{tag} side")
            series += 1
    anchor = np.flatnonzero(side == "np")
    i = anchor[0] if anchor.size else 0
    guide = eps[i] * np.sqrt(d / d[i])
    ax.loglog(d, guide, color="k", linestyle="--", linewidth=1,
              label="slope 1/2")
    ax.set_xlabel("|g - g_c|")
    ax.set_ylabel("excitation energy")
    ax.legend(fontsize=8)
    return series + 1, ["slope-half guide"]


def _render_phase_diagram(t: Table, ax) -> tuple[int, list[str], int, bool]:
    j2 = t.floats("j2")
    g = t.floats("g")
    corr = t.floats("corr")
    xs = np.unique(j2)
    ys = np.unique(g)
    cat = np.zeros((ys.size, xs.size))
    for x, y, c in zip(j2, g, corr):
        if np.isfinite(c) and abs(c) > _CORR_TOL:
            cat[np.searchsorted(ys, y), np.searchsorted(xs, x)] = np.sign(c)

    def edges(v):
        mid = 0.5 * (v[1:] + v[:-1])
        first = v[0] - (mid[0] - v[0]) if v.size > 1 else v[0] - 0.5
        last = v[-1] + (v[-1] - mid[-1]) if v.size > 1 else v[0] + 0.5
        return np.concatenate([[first], mid, [last]])

    cmap = ListedColormap([_REGION_COLOR[k] for k in (-1, 0, 1)])
    ax.pcolormesh(edges(xs), edges(ys), cat, cmap=cmap,
                  norm=BoundaryNorm([-1.5, -0.5, 0.5, 1.5], cmap.N))
    present = sorted({int(v) for v in np.unique(cat)})
    for k in present:
        sel = cat == k
        cx = float(np.mean(xs[np.any(sel, axis=0)]))
        cy = float(np.mean(ys[np.any(sel, axis=1)]))
        ax.text(cx, cy, _REGION_GLYPH[k], ha="center", va="center",
                fontsize=9, bbox={"boxstyle": "round", "facecolor": "white",
                                  "alpha": 0.75, "linewidth": 0})
    notes = [f"{len(present)} regions"]
    j1 = t.config.get("j1")
    line = isinstance(j1, (int, float)) and xs[0] <= j1 <= xs[-1]
    if line:
        ax.axvline(j1, color="k", linestyle="--", linewidth=1.2)
        notes.append(f"first-order line at j2={j1:g}")
    ax.set_xlabel("diagonal hopping j2")
    ax.set_ylabel("coupling g")
    return 1, notes, len(present), bool(line)


def _render_infidelity(tables: list[Table], ax) -> tuple[int, list[str]]:
    notes = []
    for t in tables:
        cfg = t.config
        ratio = cfg.get("ratio")
        if ratio is None and "Omega" in cfg:
            ratio = cfg["Omega"] / cfg.get("omega", 1.0)
        label = f"qubit/photon frequency {ratio:g}" if ratio is not None \
            else t.path.name
        ax.plot(*_finite(t.floats("g"), t.floats("infidelity")),
                marker="o", markersize=4, label=label)
        notes.append(label)
    ax.set_xlabel("coupling g")
    ax.set_ylabel("infidelity 1 - f")
    ax.legend(fontsize=8)
    return len(tables), notes


def render(spec: FigureSpec) -> RenderReport:
    """Draw one figure and write it to ``spec.out``."""
    if spec.kind not in KINDS:
        raise SchemaError(f"unknown figure kind {spec.kind!r}; "
                          f"expected one of {sorted(KINDS)}")
    if not spec.inputs:
        raise SchemaError("no input tables given")
    if spec.kind != "infidelity" and len(spec.inputs) != 1:
        raise SchemaError(f"{spec.kind} takes exactly one input table, "
                          f"got {len(spec.inputs)}")
    tables = [read_table(p) for p in spec.inputs]
    for t in tables:
        validate(t, spec.kind)

    fig, ax = plt.subplots(figsize=_FIGSIZE[spec.kind], layout="constrained")
    regions = None
    boundary = False
    try:
        if spec.kind == "sweep":
            series, notes = _render_sweep(tables[0], ax)
        elif spec.kind == "scaling":
            series, notes = _render_scaling(tables[0], ax)
        elif spec.kind == "phase-diagram":
            series, notes, regions, boundary = _render_phase_diagram(
                tables[0], ax)
        else:
            series, notes = _render_infidelity(tables, ax)
        if spec.title:
            ax.set_title(spec.title)
        if spec.xlim:
            ax.set_xlim(*spec.xlim)
        if spec.ylim:
            ax.set_ylim(*spec.ylim)
        fig.savefig(spec.out, dpi=spec.dpi)
        w, h = fig.get_size_inches()
        return RenderReport(
            kind=spec.kind, out=Path(spec.out),
            rows=sum(len(t.rows) for t in tables), series=series,
            size=(int(round(w * spec.dpi)), int(round(h * spec.dpi))),
            xlim=ax.get_xlim(), ylim=ax.get_ylim(),
            regions=regions, boundary_line=boundary, notes=tuple(notes))
    finally:
        plt.close(fig)
