"""Command-line driver producing sweep tables and verification reports.

All physics lives in the library modules; this file parses arguments,
lays out grids, schedules exact-diagonalization workers and formats
output.  Tables are CSV by default (JSON mirrors the same columns); every
table starts with a comment line carrying the tool version and the full
configuration, and floats are written with shortest round-trip formatting
so identical configurations give byte-identical files.

Exit codes: 0 success, 1 usage, 2 domain error, 3 failed verification,
4 eigensolver non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .core import (
    ModelParams,
    MomentumBranch,
    critical_coupling,
    dominant_branch,
    np_excitation_energy,
    np_ground_energy,
)
from .errors import NoConvergence, NoCriticalPoint, RabiSquareError
from .fock import FockSpace, ed_compare_point, ed_ground_point
from .gauge import (
    GaugeParams,
    Regime,
    equivalence_residual,
    map_afrp,
    map_frustrated,
    map_frustrated_critical,
    qrr_critical_coupling,
    triple_point,
)
from .meanfield import (
    PhaseLabel,
    branch_energies,
    classify_phase,
    scaling_exponent,
    srp_excitation_energy,
)
from .spinmap import compare_to_displacements

_SCALING_TOL = 0.02
_RESIDUAL_TOL = 1e-12
_SPIN_TOL = 1e-8


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


@dataclass(frozen=True)
class RunConfig:
    """Validated grid layout for the sweep-style commands."""

    g_min: float
    g_max: float
    g_steps: int
    j2_min: float | None = None
    j2_max: float | None = None
    j2_steps: int | None = None

    def g_grid(self) -> np.ndarray:
        return np.linspace(self.g_min, self.g_max, self.g_steps)

    def j2_grid(self) -> np.ndarray:
        return np.linspace(self.j2_min, self.j2_max, self.j2_steps)


def _grid_config(parser, args, with_j2: bool = False) -> RunConfig:
    if args.steps < 2:
        parser.error(f"--steps must be at least 2, got {args.steps}")
    if not args.g_min < args.g_max:
        parser.error(f"need --g-min < --g-max, got [{args.g_min}, {args.g_max}]")
    kw = {}
    if with_j2:
        j2_steps = args.j2_steps if args.j2_steps is not None else args.steps
        if j2_steps < 2:
            parser.error(f"--j2-steps must be at least 2, got {j2_steps}")
        if not args.j2_min < args.j2_max:
            parser.error(
                f"need --j2-min < --j2-max, got [{args.j2_min}, {args.j2_max}]")
        kw = {"j2_min": args.j2_min, "j2_max": args.j2_max,
              "j2_steps": j2_steps}
    return RunConfig(g_min=args.g_min, g_max=args.g_max, g_steps=args.steps,
                     **kw)


# ---------------------------------------------------------------------------
# Output plumbing
# ---------------------------------------------------------------------------

def _config_echo(args) -> str:
    skip = {"func", "out", "parser"}
    cfg = {k: v for k, v in vars(args).items() if k not in skip}
    return json.dumps(cfg, sort_keys=True)


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _json_cell(v):
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    return v


def _emit_table(args, columns, rows) -> None:
    if args.format == "json":
        doc = {
            "tool": "rabi-square",
            "version": __version__,
            "config": json.loads(_config_echo(args)),
            "columns": list(columns),
            "rows": [[_json_cell(v) for v in r] for r in rows],
        }
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        buf.write(f"# rabi-square {__version__} config={_config_echo(args)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_cell(v) for v in r])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _print_block(name: str, payload: dict) -> None:
    doc = {"check": name}
    doc.update({k: _json_cell(v) for k, v in payload.items()})
    print(json.dumps(doc, sort_keys=True))


# ---------------------------------------------------------------------------
# Shared flags
# ---------------------------------------------------------------------------

def _add_model_flags(sp, coupling: bool = True) -> None:
    sp.add_argument("--omega", type=float, default=1.0,
                    help="photon frequency (energy unit, default 1)")
    sp.add_argument("--Omega", type=float, default=50.0,
                    help="qubit gap (default 50)")
    sp.add_argument("--j1", type=float, default=0.05,
                    help="edge hopping (default 0.05)")
    sp.add_argument("--j2", type=float, default=0.02,
                    help="diagonal hopping (default 0.02)")
    if coupling:
        grp = sp.add_mutually_exclusive_group()
        grp.add_argument("--g", type=float, default=None,
                         help="dimensionless coupling")
        grp.add_argument("--lambda", dest="lam", type=float, default=None,
                         help="bare coupling (alternative to --g)")


def _add_output_flags(sp) -> None:
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")


def _base_params(args) -> ModelParams:
    return ModelParams.from_g(0.0, args.Omega, args.j1, args.j2, args.omega)


def _point_params(args, default_g: float = 0.0) -> tuple[ModelParams, float]:
    if getattr(args, "lam", None) is not None:
        p = ModelParams(Omega=args.Omega, lam=args.lam, j1=args.j1,
                        j2=args.j2, omega=args.omega)
        return p, p.g
    g = args.g if getattr(args, "g", None) is not None else default_g
    return ModelParams.from_g(g, args.Omega, args.j1, args.j2, args.omega), g


def _ed_workers(n_jobs: int, n_c: int, cap_mb: float) -> int:
    # rough per-job footprint; the cap trades workers for memory
    per_job = 60.0 * (n_c / 5.0) ** 4 + 20.0
    allowed = max(1, int(cap_mb / per_job))
    return max(1, min(os.cpu_count() or 1, n_jobs, allowed))


def _run_pool(worker, payloads, workers: int):
    if workers <= 1 or len(payloads) <= 1:
        done = [worker(pl) for pl in payloads]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            done = list(pool.map(worker, payloads))
    return [r for _, r in sorted(done, key=lambda t: t[0])]


# ---------------------------------------------------------------------------
# critical
# ---------------------------------------------------------------------------

def _cmd_critical(args) -> int:
    p = _base_params(args)
    try:
        dom, tie = dominant_branch(p)
        gc_min = critical_coupling(p, dom)
    except NoCriticalPoint:
        dom, tie, gc_min = None, False, None
    rows = []
    failed = []
    for b in MomentumBranch:
        try:
            gc = critical_coupling(p, b)
            err = ""
        except NoCriticalPoint as exc:
            gc, err = None, str(exc)
            failed.append(b.label)
        tied = bool(tie and gc is not None and gc_min is not None
                    and gc - gc_min <= 1e-9 * gc_min)
        rows.append([b.label, gc, b is dom, tied, err])
    _emit_table(args, ["branch_q", "g_c", "dominant", "tie", "error"], rows)
    if failed:
        print(f"error: no critical point for branch(es) q = {', '.join(failed)}",
              file=sys.stderr)
        return 2
    return 0


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _analytic_sweep_point(p: ModelParams, g: float) -> dict:
    pt = classify_phase(p, g)
    out = {"phase": pt.label.value,
           "branch_q": pt.branch.label if pt.branch is not None else "",
           "abs_alpha": pt.abs_alpha, "corr": pt.corr, "err": ""}
    try:
        if pt.label is PhaseLabel.NP:
            out["E"] = np_ground_energy(p, g)
            out["eps_min"] = min(np_excitation_energy(p, g, b)
                                 for b in MomentumBranch)
        else:
            energies = branch_energies(p, g)
            out["E"] = min(energies.values())
            cond = pt.branch if pt.branch is not None else \
                min(energies, key=lambda b: (energies[b], b.value))
            out["eps_min"] = min(srp_excitation_energy(p, g, cond, b)
                                 for b in MomentumBranch)
    except RabiSquareError as exc:
        out.update(E=None, eps_min=None, err=f"{type(exc).__name__}: {exc}")
    return out


def _ed_sweep_worker(payload):
    idx, p, g, n_c = payload
    try:
        pt = ed_ground_point(p, g, FockSpace(n_c))
        return idx, {"E": pt.energy, "alpha": pt.abs_alpha, "err": ""}
    except Exception as exc:  # per-row error column, never abort the sweep
        return idx, {"E": None, "alpha": None,
                     "err": f"{type(exc).__name__}: {exc}"}


def _cmd_sweep(args) -> int:
    cfg = _grid_config(args.parser, args)
    p = _base_params(args)
    gs = cfg.g_grid()
    points = [_analytic_sweep_point(p, float(g)) for g in gs]

    columns = ["g", "phase", "branch_q", "E_g", "abs_alpha", "corr", "eps_min"]
    ed_results = None
    if args.method in ("ed", "both"):
        payloads = [(i, p, float(g), args.nc) for i, g in enumerate(gs)]
        workers = _ed_workers(len(payloads), args.nc, args.memory_cap)
        ed_results = _run_pool(_ed_sweep_worker, payloads, workers)
        columns += ["E_g_ed", "abs_alpha_ed", "delta_E", "delta_alpha"]
    columns.append("error")

    rows = []
    for i, (g, pt) in enumerate(zip(gs, points)):
        row = [float(g), pt["phase"], pt["branch_q"], pt["E"],
               pt["abs_alpha"], pt["corr"], pt["eps_min"]]
        err = pt["err"]
        if ed_results is not None:
            ed = ed_results[i]
            d_e = ed["E"] - pt["E"] \
                if ed["E"] is not None and pt["E"] is not None else None
            d_a = ed["alpha"] - pt["abs_alpha"] \
                if ed["alpha"] is not None else None
            row += [ed["E"], ed["alpha"], d_e, d_a]
            if ed["err"]:
                err = "; ".join(x for x in (err, ed["err"]) if x)
        row.append(err)
        rows.append(row)
    _emit_table(args, columns, rows)
    return 0


# ---------------------------------------------------------------------------
# phase-diagram
# ---------------------------------------------------------------------------

def _cmd_phase_diagram(args) -> int:
    cfg = _grid_config(args.parser, args, with_j2=True)
    gs = cfg.g_grid()
    j2s = cfg.j2_grid()
    tol_g = 0.5 * (gs[1] - gs[0])
    tol_j2 = 0.5 * (j2s[1] - j2s[0])
    rows = []
    for j2 in j2s:
        p = ModelParams.from_g(0.0, args.Omega, args.j1, float(j2), args.omega)
        try:
            dom, _ = dominant_branch(p)
            gc = critical_coupling(p, dom)
        except NoCriticalPoint:
            gc = None
        for g in gs:
            pt = classify_phase(p, float(g))
            marks = []
            if gc is not None and abs(g - gc) <= tol_g:
                marks.append("critical")
            if abs(j2 - args.j1) <= tol_j2 and pt.label is not PhaseLabel.NP:
                marks.append("first-order")
            rows.append([float(j2), float(g), pt.label.value,
                         pt.branch.label if pt.branch is not None else "",
                         pt.corr, "+".join(marks), ""])
    _emit_table(args, ["j2", "g", "phase", "branch_q", "corr", "boundary",
                       "error"], rows)
    return 0


# ---------------------------------------------------------------------------
# scaling
# ---------------------------------------------------------------------------

def _cmd_scaling(args) -> int:
    p = _base_params(args)
    branch, _ = dominant_branch(p)
    gc = critical_coupling(p, branch)
    deltas = np.logspace(math.log10(args.window_min),
                         math.log10(args.window_max), args.points)
    rows = []
    for d in deltas:
        rows.append(["np", float(d),
                     np_excitation_energy(p, gc - float(d), branch)])
    for d in deltas:
        rows.append(["srp", float(d),
                     srp_excitation_energy(p, gc + float(d), branch)])
    slope_np = scaling_exponent(p, branch, "np",
                                (args.window_min, args.window_max), args.points)
    slope_srp = scaling_exponent(p, branch, "srp",
                                 (args.window_min, args.window_max), args.points)
    _emit_table(args, ["side", "delta_g", "eps"], rows)
    ok = (abs(slope_np - 0.5) <= _SCALING_TOL
          and abs(slope_srp - 0.5) <= _SCALING_TOL)
    _print_block("scaling", {
        "branch_q": branch.label, "g_c": gc,
        "np_slope": slope_np, "srp_slope": slope_srp,
        "tolerance": _SCALING_TOL, "pass": ok,
    })
    return 0 if ok else 3


# ---------------------------------------------------------------------------
# gauge
# ---------------------------------------------------------------------------

def _cmd_gauge_map_afrp(args) -> int:
    gp = GaugeParams(j10=args.j10, theta=args.theta)
    p = _base_params(args)
    j2 = map_afrp(gp, p, args.j1)
    _emit_table(args, ["j10", "theta", "j1", "j2"],
                [[args.j10, args.theta, args.j1, j2]])
    return 0


def _cmd_gauge_map_frustrated(args) -> int:
    gp = GaugeParams(j10=args.j10, theta=args.theta)
    p = _base_params(args)
    regime = Regime(args.regime)
    j2 = map_frustrated(gp, p, args.g, regime)
    j2c = map_frustrated_critical(gp, p)
    _emit_table(args, ["j10", "theta", "g", "regime", "j2", "j2_critical"],
                [[args.j10, args.theta, args.g, regime.value, j2, j2c]])
    return 0


def _cmd_gauge_triple(args) -> int:
    gp = GaugeParams(j10=args.j10, theta=0.0)
    p = ModelParams.from_g(0.0, args.Omega, 0.0, 0.0, args.omega)
    tp = triple_point(gp, p)
    ok = tp.spread < _RESIDUAL_TOL
    _emit_table(args, ["j10", "theta_c", "j1", "j2", "spread"],
                [[args.j10, tp.theta_c, tp.j1, tp.j2, tp.spread]])
    _print_block("gauge-triple", {
        "theta_c": tp.theta_c, "j1": tp.j1, "j2": tp.j2,
        "spread": tp.spread, "tolerance": _RESIDUAL_TOL, "pass": ok,
    })
    return 0 if ok else 3


def _cmd_gauge_verify(args) -> int:
    gp = GaugeParams(j10=args.j10, theta=args.theta)
    p = _base_params(args)
    rows = []
    worst = 0.0
    worst_gc = 0.0
    for kind, branch in (("afrp", MomentumBranch.Q_PI),
                         ("frustrated", MomentumBranch.Q_3PI_2)):
        gc = qrr_critical_coupling(gp, p, branch)
        lo = min(args.g_min, 0.9 * gc)
        # keep a relative 1e-4 off the onset: the gap vanishes there and
        # its cancellation error blows past 1e-12 inside a ~1e-6 window
        np_grid = np.linspace(lo, gc * (1.0 - 1e-4), args.steps)
        srp_grid = np.linspace(gc * (1.0 + 1e-4), args.g_max, args.steps)
        for regime, grid in ((Regime.NP, np_grid), (Regime.SRP, srp_grid)):
            for g in grid:
                r = equivalence_residual(gp, p, float(g), kind, regime)
                worst = max(worst, r.residual)
                worst_gc = max(worst_gc, r.gc_consistency)
                rows.append([kind, regime.value, float(g), r.j2,
                             r.eps_plaquette, r.eps_ring, r.residual,
                             r.gc_consistency])
    _emit_table(args, ["kind", "regime", "g", "j2", "eps_square", "eps_ring",
                       "residual", "gc_consistency"], rows)
    ok = worst < _RESIDUAL_TOL and worst_gc < _RESIDUAL_TOL
    _print_block("gauge-verify", {
        "max_residual": worst, "max_gc_consistency": worst_gc,
        "points": len(rows), "tolerance": _RESIDUAL_TOL, "pass": ok,
    })
    return 0 if ok else 3


# ---------------------------------------------------------------------------
# spin
# ---------------------------------------------------------------------------

def _cmd_spin(args) -> int:
    p, g = _point_params(args, default_g=0.6)
    rep = compare_to_displacements(p, g, seed=args.seed)
    ok = rep.delta <= _SPIN_TOL and rep.pattern_match
    _emit_table(args, ["g", "spin_branch_q", "boson_branch_q", "e_numeric",
                       "e_analytic", "delta", "pattern_match",
                       "amplitude_ratio"],
                [[g, rep.spin_branch.label, rep.boson_branch.label,
                  rep.e_numeric, rep.e_analytic, rep.delta,
                  rep.pattern_match, rep.amplitude_ratio]])
    _print_block("spin-map", {
        "delta": rep.delta, "pattern_match": rep.pattern_match,
        "tolerance": _SPIN_TOL, "pass": ok,
    })
    return 0 if ok else 3


# ---------------------------------------------------------------------------
# ed-compare
# ---------------------------------------------------------------------------

def _ed_compare_worker(payload):
    idx, p, g, n_c = payload
    try:
        rec = ed_compare_point(p, g, FockSpace(n_c))
        rec["err"] = ""
        return idx, rec
    except Exception as exc:
        return idx, {"g": g, "err": f"{type(exc).__name__}: {exc}"}


def _cmd_ed_compare(args) -> int:
    cfg = _grid_config(args.parser, args)
    omega = args.omega
    big_omega = args.ratio * omega if args.ratio is not None else args.Omega
    p = ModelParams.from_g(0.0, big_omega, args.j1, args.j2, omega)
    branch, _ = dominant_branch(p)
    gc = critical_coupling(p, branch)
    gs = cfg.g_grid()
    payloads = [(i, p, float(g), args.nc) for i, g in enumerate(gs)]
    workers = _ed_workers(len(payloads), args.nc, args.memory_cap)
    recs = _run_pool(_ed_compare_worker, payloads, workers)

    rows = []
    checked = 0
    failures = 0
    for rec in recs:
        if rec["err"]:
            rows.append([rec["g"], None, None, None, None, None, rec["err"]])
            continue
        rows.append([rec["g"], rec["infidelity"], rec["energy_ed"],
                     rec["energy_analytic"], rec["abs_alpha_ed"],
                     rec["abs_alpha_analytic"], ""])
        if abs(rec["g"] - gc) > 0.1:
            checked += 1
            if rec["infidelity"] >= 0.05:
                failures += 1
    _emit_table(args, ["g", "infidelity", "E_ed", "E_analytic",
                       "abs_alpha_ed", "abs_alpha_analytic", "error"], rows)
    ok = checked > 0 and failures == 0
    _print_block("ed-compare", {
        "g_c": gc, "points_checked": checked, "failures": failures,
        "infidelity_bound": 0.05, "window": 0.1, "pass": ok,
    })
    return 0 if ok else 3


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="rabi-square", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version",
                        version=f"rabi-square {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("critical", help="per-branch critical couplings")
    _add_model_flags(sp, coupling=False)
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_critical)

    sp = sub.add_parser("sweep", help="coupling sweep, analytic and/or ED")
    _add_model_flags(sp, coupling=False)
    sp.add_argument("--g-min", type=float, default=0.40)
    sp.add_argument("--g-max", type=float, default=0.60)
    sp.add_argument("--steps", type=int, default=41)
    sp.add_argument("--method", choices=("analytic", "ed", "both"),
                    default="analytic")
    sp.add_argument("--nc", type=int, default=5, help="photon cutoff per site")
    sp.add_argument("--memory-cap", type=float, default=4000.0,
                    help="ED worker memory budget in MB")
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_sweep, parser=sp)

    sp = sub.add_parser("phase-diagram", help="(j2, g) grid classification")
    _add_model_flags(sp, coupling=False)
    sp.add_argument("--g-min", type=float, default=0.30)
    sp.add_argument("--g-max", type=float, default=0.70)
    sp.add_argument("--j2-min", type=float, default=0.0)
    sp.add_argument("--j2-max", type=float, default=0.10)
    sp.add_argument("--steps", type=int, default=21,
                    help="points per axis unless --j2-steps overrides")
    sp.add_argument("--j2-steps", type=int, default=None)
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_phase_diagram, parser=sp)

    sp = sub.add_parser("scaling", help="gap-closing exponent fit")
    _add_model_flags(sp, coupling=False)
    sp.add_argument("--window-min", type=float, default=1e-6)
    sp.add_argument("--window-max", type=float, default=1e-3)
    sp.add_argument("--points", type=int, default=24)
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_scaling)

    gauge = sub.add_parser("gauge", help="ring equivalence maps and checks")
    gsub = gauge.add_subparsers(dest="gauge_command", required=True)

    sp = gsub.add_parser("map-afrp", help="staggered-branch j2(theta)")
    _add_model_flags(sp, coupling=False)
    sp.add_argument("--j10", type=float, default=0.05)
    sp.add_argument("--theta", type=float, default=math.pi / 4)
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_gauge_map_afrp)

    sp = gsub.add_parser("map-frustrated", help="paired-branch j2(theta, g)")
    _add_model_flags(sp, coupling=False)
    sp.add_argument("--j10", type=float, default=0.05)
    sp.add_argument("--theta", type=float, default=math.pi / 2)
    sp.add_argument("--g", type=float, default=0.3)
    sp.add_argument("--regime", choices=("np", "srp"), default="np")
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_gauge_map_frustrated)

    sp = gsub.add_parser("triple", help="phase-boundary triple point")
    sp.add_argument("--j10", type=float, default=0.05)
    sp.add_argument("--omega", type=float, default=1.0)
    sp.add_argument("--Omega", type=float, default=50.0)
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_gauge_triple)

    sp = gsub.add_parser("verify", help="spectral residual of both maps")
    _add_model_flags(sp, coupling=False)
    sp.add_argument("--j10", type=float, default=0.05)
    sp.add_argument("--theta", type=float, default=math.pi / 4)
    sp.add_argument("--g-min", type=float, default=0.05)
    sp.add_argument("--g-max", type=float, default=0.75)
    sp.add_argument("--steps", type=int, default=50,
                    help="grid points per regime per map")
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_gauge_verify)

    sp = sub.add_parser("spin", help="spin-surface minimizer cross-check")
    _add_model_flags(sp)
    sp.add_argument("--seed", type=int, default=0)
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_spin)

    sp = sub.add_parser("ed-compare", help="mean-field vs ED fidelity")
    _add_model_flags(sp, coupling=False)
    sp.add_argument("--ratio", type=float, default=None,
                    help="Omega/omega; overrides --Omega when given")
    sp.add_argument("--nc", type=int, default=5)
    sp.add_argument("--g-min", type=float, default=0.33)
    sp.add_argument("--g-max", type=float, default=0.63)
    sp.add_argument("--steps", type=int, default=8)
    sp.add_argument("--memory-cap", type=float, default=4000.0)
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_ed_compare, parser=sp)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (RabiSquareError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
