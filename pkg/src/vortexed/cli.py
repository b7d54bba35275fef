"""Command-line front end.

One subcommand per study; every artifact embeds the effective config (as
``# key = value`` lines in CSV, a ``config`` object in JSON) so results
are reproducible from the artifact alone.  Exit codes: 0 success, 2
configuration problem, 3 computation failure (no crossing, no
convergence), 4 dimension cap exceeded, 5 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .basis import build_basis
from .config import (
    ALL_KEYS,
    RunConfig,
    effective_lines,
    parse_config,
)
from .errors import (
    ConfigError,
    DimensionCapError,
    DimensionTooLargeError,
    EmptyBasisError,
    VortexedError,
)
from .hamiltonian import assemble
from .matelems import build_tables, dump_interaction_csv
from .scanner import (
    CSV_HEADER,
    ModelParams,
    SweepEngine,
    compare_truncations,
    csv_row,
    find_critical,
    isotropic_spectrum_per_l,
    lmax_convergence,
    qfi_width,
    sweep_omega,
    validity_diagnostics,
)

THREADS_ENV = "VORTEXED_THREADS"
LMAX_SHIFT_TOL = 1e-4


def convert_g(scattering_length: float, lambda_z: float) -> float:
    """Dimensionless coupling sqrt(8 pi) * a_s / lambda_z."""
    if scattering_length <= 0:
        raise ConfigError(
            f"scattering length must be positive, got {scattering_length}")
    if lambda_z <= 0:
        raise ConfigError(f"lambda_z must be positive, got {lambda_z}")
    return math.sqrt(8.0 * math.pi) * scattering_length / lambda_z


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, (int, np.integer, bool)) or obj is None or isinstance(obj, str):
        return int(obj) if isinstance(obj, np.integer) else obj
    return obj


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(payload), indent=2) + "\n")


def _write_sweep_csv(path: Path, cfg: RunConfig, points) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {ln}" for ln in effective_lines(cfg)]
    lines.append(CSV_HEADER)
    lines.extend(csv_row(pt) for pt in points)
    path.write_text("\n".join(lines) + "\n")


def _params(cfg: RunConfig) -> ModelParams:
    return ModelParams(
        n=cfg.n,
        g=cfg.g if cfg.g is not None else 0.0,
        a=cfg.a if cfg.a is not None else 0.0,
        n_ll=cfg.n_ll,
        l_min=cfg.l_min,
        l_max=cfg.l_max,
    )


def _engine(cfg: RunConfig) -> SweepEngine:
    return SweepEngine(_params(cfg), tol=cfg.tol, seed=cfg.seed,
                       dimension_cap=cfg.basis_cap)


def cmd_basis_info(cfg: RunConfig, args) -> int:
    cfg.require("n")
    params = _params(cfg).resolved()
    basis = build_basis(params.basis_spec(), dimension_cap=cfg.basis_cap)
    print(basis)
    print(f"modes: {len(basis.modes)}")
    occupied = [(l, stop - start) for l, (start, stop) in sorted(basis.blocks.items())
                if stop > start]
    print("block sizes: " + " ".join(f"L={l}:{sz}" for l, sz in occupied))
    if args.stats:
        parts = assemble(basis, build_tables(basis.modes))
        for key, val in parts.stats().items():
            print(f"{key}: {val}")
    if args.states:
        for i in range(min(basis.dimension, args.limit)):
            print(basis.state_line(i))
        if basis.dimension > args.limit:
            print(f"... ({basis.dimension - args.limit} more)")
    if args.interaction_csv:
        itab, _ = build_tables(basis.modes)
        dump_interaction_csv(itab, args.interaction_csv)
        print(f"wrote {args.interaction_csv}")
    return 0


def cmd_ground_state(cfg: RunConfig, args) -> int:
    cfg.require("n", "g", "a", "omega")
    engine = _engine(cfg)
    res = engine.solve(cfg.omega)
    if args.verbose:
        print(f"dimension = {engine.dimension}  method = {res.method}  "
              f"matvecs = {res.iterations}")
        print("residuals: " + " ".join(f"{r:.3e}" for r in res.residual_norms))
    pt, report = engine._point_from_result(cfg.omega, engine.params.g,
                                           engine.params.a, res, with_report=True)
    validity = validity_diagnostics(engine.params, cfg.omega)
    payload = {
        "config": cfg.to_dict(),
        "basis_dimension": engine.dimension,
        "point": asdict(pt),
        "metrology": report.to_dict(),
        "validity": validity.to_dict(),
    }
    out = Path(cfg.out_dir) / "metrology.json"
    _write_json(out, payload)
    print(f"E0 = {pt.e0:.12g}  gap = {pt.gap:.6g}")
    print(f"lam1 = {pt.lam1:.6g}  lam2 = {pt.lam2:.6g}  lam3 = {pt.lam3:.6g}")
    print(f"fidelity = {pt.fidelity:.6g}  F_Q = {pt.fq:.6g}  dphi = {pt.dphi:.6g}")
    print(f"wrote {out}")
    return 0


def cmd_sweep(cfg: RunConfig, args) -> int:
    cfg.require("n", "g", "a", "omega_lo", "omega_hi")
    engine = _engine(cfg)
    points = sweep_omega(engine, cfg.omega_lo, cfg.omega_hi,
                         steps=cfg.omega_steps, threads=cfg.threads)
    out = Path(cfg.out_dir) / "sweep.csv"
    _write_sweep_csv(out, cfg, points)
    failed = sum(1 for pt in points if not pt.ok)
    msg = f"wrote {out} ({len(points)} points, dimension {engine.dimension})"
    if failed:
        msg += f"; {failed} points failed"
    print(msg)
    return 0 if failed == 0 else 3


def cmd_critical(cfg: RunConfig, args) -> int:
    cfg.require("n", "g", "a", "omega_lo", "omega_hi")
    engine = _engine(cfg)
    crit = find_critical(engine, cfg.omega_lo, cfg.omega_hi)
    payload = {
        "config": cfg.to_dict(),
        "basis_dimension": engine.dimension,
        "omega_c": crit.omega_c,
        "bracket": list(crit.bracket),
        "residual": crit.residual,
        "point": asdict(crit.point),
        "validity": validity_diagnostics(engine.params, crit.omega_c).to_dict(),
    }
    if args.check_lmax:
        conv = lmax_convergence(engine.params, cfg.omega_lo, cfg.omega_hi,
                                tol=cfg.tol, seed=cfg.seed)
        payload["lmax_check"] = asdict(conv)
        status = "ok" if conv.delta_omega < LMAX_SHIFT_TOL else "NOT CONVERGED"
        print(f"l_max check: omega_c shifts {conv.delta_omega:.3e} for "
              f"l_max {conv.l_max} -> {conv.l_max_extended} [{status}]")
    out = Path(cfg.out_dir) / "critical.json"
    _write_json(out, payload)
    print(f"omega_c = {crit.omega_c:.9g}  (residual {crit.residual:.3e})")
    pt = crit.point
    print(f"F_Q = {pt.fq:.6g}  fidelity = {pt.fidelity:.6g}  "
          f"lam1 = {pt.lam1:.6g}  lam2 = {pt.lam2:.6g}")
    print(f"wrote {out}")
    return 0


def cmd_width(cfg: RunConfig, args) -> int:
    cfg.require("n", "g", "a", "omega_lo", "omega_hi")
    engine = _engine(cfg)
    crit = find_critical(engine, cfg.omega_lo, cfg.omega_hi)
    wres = qfi_width(engine, crit.omega_c)
    payload = {
        "config": cfg.to_dict(),
        "omega_c": crit.omega_c,
        "f_peak": wres.f_peak,
        "omega_half": wres.omega_half,
        "width": wres.width,
        "bracket": list(wres.bracket),
        "max_seen": wres.max_seen,
    }
    out = Path(cfg.out_dir) / "width.json"
    _write_json(out, payload)
    print(f"omega_c = {crit.omega_c:.9g}  F_Q peak = {wres.f_peak:.6g}")
    print(f"left half-max width = {wres.width:.6g}")
    print(f"wrote {out}")
    return 0


def cmd_compare_levels(cfg: RunConfig, args) -> int:
    cfg.require("n", "g", "a", "omega_lo", "omega_hi")
    try:
        lev_a, lev_b = (int(tok) for tok in args.levels.split(","))
    except ValueError:
        raise ConfigError(
            f"--levels needs two comma-separated integers, got {args.levels!r}")
    if lev_a < 1 or lev_b < 1 or lev_a > lev_b:
        raise ConfigError(f"--levels needs 1 <= a <= b, got {args.levels!r}")
    comp = compare_truncations(_params(cfg), lev_a, lev_b,
                               cfg.omega_lo, cfg.omega_hi,
                               tol=cfg.tol, seed=cfg.seed)
    payload = {"config": cfg.to_dict(), **comp.to_dict()}
    out = Path(cfg.out_dir) / "compare.json"
    _write_json(out, payload)
    print(f"omega_c: {comp.omega_c_a:.9g} ({lev_a} level(s)) vs "
          f"{comp.omega_c_b:.9g} ({lev_b} level(s)); fractional {comp.frac_omega:.4g}")
    print(f"F_Q at omega_c({lev_a}): {comp.fq_a:.6g} vs {comp.fq_b:.6g}; "
          f"fractional {comp.frac_fq:.4g}")
    print(f"wrote {out}")
    return 0


def cmd_spectrum_per_l(cfg: RunConfig, args) -> int:
    cfg.require("n", "g")
    if cfg.a not in (None, 0.0):
        raise ConfigError(f"spectrum-per-l needs a = 0, got a = {cfg.a}")
    params = ModelParams(n=cfg.n, g=cfg.g, a=0.0, n_ll=cfg.n_ll,
                         l_min=cfg.l_min, l_max=cfg.l_max)
    spec = isotropic_spectrum_per_l(params, tol=cfg.tol, seed=cfg.seed,
                                    dense_cap=cfg.dense_cap)
    at_crossing = [spec.energy(int(l), spec.omega_1) for l in spec.l_values] \
        if math.isfinite(spec.omega_1) else []
    payload = {
        "config": cfg.to_dict(),
        "l_values": spec.l_values,
        "e0_at_omega0": spec.e0_values,
        "omega_1": spec.omega_1,
        "e_at_omega_1": at_crossing,
    }
    out = Path(cfg.out_dir) / "spectrum_per_l.json"
    _write_json(out, payload)
    print(f"omega_1 = {spec.omega_1:.9g}")
    for i, l in enumerate(spec.l_values):
        line = f"L = {int(l):3d}  E0 = {spec.e0_values[i]:.12g}"
        if at_crossing:
            line += f"  E(omega_1) = {at_crossing[i]:.12g}"
        print(line)
    print(f"wrote {out}")
    return 0


def cmd_convert_g(cfg: RunConfig, args) -> int:
    g = convert_g(args.scattering_length, args.lambda_z)
    print(f"g = {g:.12g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="flat 'key = value' config file")
    for key in ALL_KEYS:
        common.add_argument(f"--{key.replace('_', '-')}", dest=f"cfg_{key}",
                            metavar="V", help=f"override config key '{key}'")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(
        prog="vortexed",
        description="Exact diagonalization of rotating trapped bosons: "
                    "ground states, natural orbitals, quantum Fisher information.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("basis-info", parents=[common],
                        help="basis dimension, L blocks, optional state dump")
    sp.add_argument("--states", action="store_true", help="print state lines")
    sp.add_argument("--limit", type=int, default=40,
                    help="max state lines to print")
    sp.add_argument("--stats", action="store_true",
                    help="assemble and print sparsity stats")
    sp.add_argument("--interaction-csv", metavar="PATH",
                    help="dump interaction table to CSV")
    sp.set_defaults(func=cmd_basis_info)

    sp = sub.add_parser("ground-state", parents=[common],
                        help="one ground state: energies, orbitals, metrology JSON")
    sp.set_defaults(func=cmd_ground_state)

    sp = sub.add_parser("sweep", parents=[common],
                        help="omega sweep to CSV (header: " + CSV_HEADER + ")")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("critical", parents=[common],
                        help="locate the occupation-crossing frequency omega_c")
    sp.add_argument("--check-lmax", action="store_true",
                    help="re-run with l_max + 2 and report the omega_c shift")
    sp.set_defaults(func=cmd_critical)

    sp = sub.add_parser("width", parents=[common],
                        help="left half-maximum width of the QFI resonance")
    sp.set_defaults(func=cmd_width)

    sp = sub.add_parser("compare-levels", parents=[common],
                        help="fractional omega_c / QFI changes between truncations")
    sp.add_argument("--levels", default="1,2", metavar="A,B",
                    help="Landau-level counts to compare (default 1,2)")
    sp.set_defaults(func=cmd_compare_levels)

    sp = sub.add_parser("spectrum-per-l", parents=[common],
                        help="isotropic (A=0) lowest energy per L block")
    sp.set_defaults(func=cmd_spectrum_per_l)

    sp = sub.add_parser("convert-g", parents=[common],
                        help="scattering length + axial width to dimensionless g")
    sp.add_argument("--scattering-length", type=float, required=True,
                    metavar="A_S", help="s-wave scattering length")
    sp.add_argument("--lambda-z", type=float, required=True, metavar="L_Z",
                    help="axial confinement length (same unit as A_S)")
    sp.set_defaults(func=cmd_convert_g)
    return ap


def _load_config(args) -> RunConfig:
    overrides = {}
    for key in ALL_KEYS:
        val = getattr(args, f"cfg_{key}", None)
        if val is not None:
            overrides[key] = val
    if "threads" not in overrides and os.environ.get(THREADS_ENV):
        overrides["threads"] = os.environ[THREADS_ENV]
    return parse_config(args.config, overrides)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        return args.func(cfg, args)
    except (ConfigError, EmptyBasisError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (DimensionCapError, DimensionTooLargeError) as exc:
        print(f"dimension error: {exc}", file=sys.stderr)
        return 4
    except VortexedError as exc:
        print(f"compute error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
