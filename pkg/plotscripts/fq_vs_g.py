"""Peak quantum Fisher information against coupling, one series per truncation.

Reads critical-point JSON artifacts (one per (g, levels) run), groups them by
Landau-level count, and draws F_Q at the critical frequency versus g.  The
--log flag switches the y axis to log scale, which is how the collapse from
Heisenberg-like to modest F_Q is usually shown.

    python3 plotscripts/fq_vs_g.py runs/critical/g*/critical.json \
        --log --out figs/fq_vs_g
"""
import argparse

import matplotlib.pyplot as plt

import common


def _series(inputs):
    groups = {}
    for path in inputs:
        art = common.read_critical(path)
        cfg = art["config"]
        groups.setdefault(cfg["n_ll"], []).append(
            (cfg["g"], art["point"]["fq"]))
    return {n_ll: sorted(rows) for n_ll, rows in sorted(groups.items())}


def build(spec):
    fig, ax = plt.subplots(figsize=(4.6, 3.2))
    for n_ll, rows in _series(spec.inputs).items():
        label = f"{n_ll} level" + ("s" if n_ll != 1 else "")
        ax.plot([r[0] for r in rows], [r[1] for r in rows],
                marker="o", label=label)
    if spec.logy:
        ax.set_yscale("log")
    ax.set_xlabel(r"$g$")
    ax.set_ylabel(r"$F_Q(\Omega_c)$")
    ax.legend(frameon=False)
    common.apply_axes(ax, spec)
    fig.tight_layout()
    return fig


def render(spec):
    return common.save_figure(build(spec), spec.out)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("inputs", nargs="+", help="critical-point JSON files")
    p.add_argument("--out", default="fq_vs_g", help="output path or basename")
    p.add_argument("--log", action="store_true", help="log-scale y axis")
    p.add_argument("--xlim", type=common.parse_range, default=None)
    p.add_argument("--ylim", type=common.parse_range, default=None)
    args = p.parse_args(argv)
    spec = common.FigureSpec(inputs=args.inputs, kind="fq_vs_g",
                             out=args.out, xlim=args.xlim, ylim=args.ylim,
                             logy=args.log)
    for path in render(spec):
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
