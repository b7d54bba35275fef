"""Compare one- and two-level critical frequencies across a coupling grid.

Runs `vortexed compare-levels` per coupling and prints the fractional shifts
of omega_c and F_Q.  The per-g JSON artifacts feed the fractional-change
plot script.

    python3 scripts/truncation_study.py --g-values 0.2,0.5,1.0 \
        --out-dir runs/compare
"""
import argparse
import json
import pathlib
import sys

from vortexed import cli


def parse_args(argv):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=6, help="particle number")
    p.add_argument("--g-values", default="0.4,1.0",
                   help="comma-separated coupling strengths")
    p.add_argument("--a", type=float, default=0.03, help="anisotropy")
    p.add_argument("--levels", default="1,2",
                   help="the two truncations to compare, e.g. 1,2")
    p.add_argument("--omega-lo", type=float, default=0.70)
    p.add_argument("--omega-hi", type=float, default=0.99)
    p.add_argument("--out-dir", default="runs/compare")
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    g_values = [float(s) for s in args.g_values.split(",")]
    root = pathlib.Path(args.out_dir)

    rows = []
    for g in g_values:
        run_dir = root / f"g{g:g}"
        rc = cli.main(["compare-levels",
                       "--n", str(args.n), "--g", str(g), "--a", str(args.a),
                       "--levels", args.levels,
                       "--omega-lo", str(args.omega_lo),
                       "--omega-hi", str(args.omega_hi),
                       "--out-dir", str(run_dir)])
        if rc != 0:
            print(f"run g={g} failed with exit code {rc}", file=sys.stderr)
            return rc
        art = json.loads((run_dir / "compare.json").read_text())
        rows.append((g, art["omega_c_a"], art["omega_c_b"],
                     art["frac_omega"], art["frac_fq"]))

    print()
    print(f"{'g':>6} {'omega_c_a':>12} {'omega_c_b':>12} "
          f"{'frac_omega':>11} {'frac_fq':>10}")
    for g, oa, ob, fo, ff in rows:
        print(f"{g:>6g} {oa:>12.6f} {ob:>12.6f} {fo:>11.4f} {ff:>10.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
