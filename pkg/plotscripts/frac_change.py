"""Fractional change of omega_c and F_Q between truncations, against g.

Reads compare-levels JSON artifacts (one per coupling) and draws two stacked
panels: the relative critical-frequency shift and the relative F_Q change.
Files with different truncation pairs become separate series, labelled
explicitly by (levels_a, levels_b).

    python3 plotscripts/frac_change.py runs/compare/g*/compare.json \
        --out figs/frac_change
"""
import argparse

import matplotlib.pyplot as plt

import common


def _series(inputs):
    """Group artifacts by truncation pair, each sorted by g."""
    groups = {}
    for path in inputs:
        art = common.read_compare(path)
        pair = (art["n_ll_a"], art["n_ll_b"])
        groups.setdefault(pair, []).append(
            (art["config"]["g"], art["frac_omega"], art["frac_fq"]))
    return {pair: sorted(rows) for pair, rows in sorted(groups.items())}


def build(spec):
    fig, (ax_top, ax_bot) = plt.subplots(2, 1, sharex=True,
                                         figsize=(4.6, 5.0))
    for (ll_a, ll_b), rows in _series(spec.inputs).items():
        gs = [r[0] for r in rows]
        label = f"{ll_a} vs {ll_b} levels"
        ax_top.plot(gs, [r[1] for r in rows], marker="o", label=label)
        ax_bot.plot(gs, [r[2] for r in rows], marker="s", label=label)
    ax_top.set_ylabel(r"$|\Delta\Omega_c| / \Omega_c$")
    ax_bot.set_ylabel(r"$|\Delta F_Q| / F_Q$")
    ax_bot.set_xlabel(r"$g$")
    ax_top.legend(frameon=False, fontsize=8)
    common.apply_axes(ax_bot, spec)
    fig.tight_layout()
    return fig


def render(spec):
    return common.save_figure(build(spec), spec.out)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("inputs", nargs="+", help="compare-levels JSON files")
    p.add_argument("--out", default="frac_change", help="output path or basename")
    p.add_argument("--xlim", type=common.parse_range, default=None)
    p.add_argument("--ylim", type=common.parse_range, default=None)
    args = p.parse_args(argv)
    spec = common.FigureSpec(inputs=args.inputs, kind="frac_change",
                             out=args.out, xlim=args.xlim, ylim=args.ylim)
    for path in render(spec):
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
