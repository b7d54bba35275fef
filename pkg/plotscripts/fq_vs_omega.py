"""Quantum Fisher information against rotation frequency.

Reads one or more sweep CSVs and draws F_Q(Omega) as one curve per file,
labelled by the Landau-level count embedded in each file's config block.

    python3 plotscripts/fq_vs_omega.py runs/sweep_ll1.csv runs/sweep_ll2.csv \
        --out figs/fq_curve
"""
import argparse

import matplotlib.pyplot as plt

import common


def build(spec):
    fig, ax = plt.subplots(figsize=(4.6, 3.2))
    for path in spec.inputs:
        meta, cols = common.read_sweep_csv(path)
        n_ll = meta.get("n_ll", "?")
        label = f"{n_ll} level" + ("s" if n_ll != "1" else "")
        ax.plot(cols["omega"], cols["fq"], linewidth=1.4, label=label)
    ax.set_xlabel(r"$\Omega$")
    ax.set_ylabel(r"$F_Q$")
    if len(spec.inputs) > 1:
        ax.legend(frameon=False)
    common.apply_axes(ax, spec)
    fig.tight_layout()
    return fig


def render(spec):
    return common.save_figure(build(spec), spec.out)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("inputs", nargs="+", help="sweep CSV files")
    p.add_argument("--out", default="fq_vs_omega", help="output path or basename")
    p.add_argument("--xlim", type=common.parse_range, default=None)
    p.add_argument("--ylim", type=common.parse_range, default=None)
    args = p.parse_args(argv)
    spec = common.FigureSpec(inputs=args.inputs, kind="fq_vs_omega",
                             out=args.out, xlim=args.xlim, ylim=args.ylim)
    for path in render(spec):
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
