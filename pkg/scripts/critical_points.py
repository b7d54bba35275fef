"""Locate the occupation crossing for a grid of couplings and truncations.

Runs the `vortexed critical` command once per (g, n_ll) combination, leaving
each artifact in its own subdirectory, and prints a summary table.  The
per-run JSON files are what the fq-vs-g plot script consumes.

    python3 scripts/critical_points.py --g-values 0.2,0.5 --levels 1,2 \
        --out-dir runs/critical
"""
import argparse
import json
import pathlib
import sys

from vortexed import cli


def parse_args(argv):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=6, help="particle number")
    p.add_argument("--g-values", default="0.5",
                   help="comma-separated coupling strengths")
    p.add_argument("--a", type=float, default=0.03, help="anisotropy")
    p.add_argument("--levels", default="1,2",
                   help="comma-separated Landau-level counts")
    p.add_argument("--omega-lo", type=float, default=0.70)
    p.add_argument("--omega-hi", type=float, default=0.99)
    p.add_argument("--out-dir", default="runs/critical")
    p.add_argument("--check-lmax", action="store_true",
                   help="also verify omega_c against an enlarged window")
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    g_values = [float(s) for s in args.g_values.split(",")]
    levels = [int(s) for s in args.levels.split(",")]
    root = pathlib.Path(args.out_dir)

    rows = []
    for g in g_values:
        for n_ll in levels:
            run_dir = root / f"g{g:g}_ll{n_ll}"
            argv_run = ["critical",
                        "--n", str(args.n), "--g", str(g), "--a", str(args.a),
                        "--n-ll", str(n_ll),
                        "--omega-lo", str(args.omega_lo),
                        "--omega-hi", str(args.omega_hi),
                        "--out-dir", str(run_dir)]
            if args.check_lmax:
                argv_run.append("--check-lmax")
            rc = cli.main(argv_run)
            if rc != 0:
                print(f"run g={g} n_ll={n_ll} failed with exit code {rc}",
                      file=sys.stderr)
                return rc
            art = json.loads((run_dir / "critical.json").read_text())
            rows.append((g, n_ll, art["omega_c"], art["point"]["fidelity"],
                         art["point"]["fq"]))

    print()
    print(f"{'g':>6} {'n_ll':>5} {'omega_c':>12} {'fidelity':>10} {'F_Q':>10}")
    for g, n_ll, omega_c, fid, fq in rows:
        print(f"{g:>6g} {n_ll:>5d} {omega_c:>12.6f} {fid:>10.4f} {fq:>10.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
