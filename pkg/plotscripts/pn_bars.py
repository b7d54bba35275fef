"""Bar chart of the two-mode occupation probabilities P_n.

Reads one ground-state JSON artifact and draws P_n against the even
occupation of the second natural orbital.  A pure condensate shows a single
nonzero bar at n = 0; near criticality the distribution spreads out.

    python3 plotscripts/pn_bars.py runs/gs/metrology.json --out figs/pn
"""
import argparse

import matplotlib.pyplot as plt

import common


def build(spec):
    if len(spec.inputs) != 1:
        raise common.SchemaError("pn_bars takes exactly one ground-state JSON")
    art = common.read_metrology(spec.inputs[0])
    n = art["config"]["n"]
    p_n = art["metrology"]["p_n"]
    if len(p_n) != n // 2 + 1:
        raise common.SchemaError(
            f"{spec.inputs[0]}: p_n has {len(p_n)} entries, "
            f"expected {n // 2 + 1} for n = {n}")
    xs = list(range(0, n + 1, 2))

    fig, ax = plt.subplots(figsize=(4.2, 3.0))
    ax.bar(xs, p_n, width=1.2, color="#3b6ea5", edgecolor="black",
           linewidth=0.6)
    ax.set_xticks(xs)
    ax.set_xlabel("occupation of second orbital")
    ax.set_ylabel(r"$P_n$")
    cfg = art["config"]
    ax.set_title(f"N={n}, g={cfg['g']:g}, "
                 f"$\\Omega$={art['metrology']['omega']:.4f}", fontsize=10)
    common.apply_axes(ax, spec)
    fig.tight_layout()
    return fig


def render(spec):
    return common.save_figure(build(spec), spec.out)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("input", help="ground-state JSON artifact")
    p.add_argument("--out", default="pn_bars", help="output path or basename")
    p.add_argument("--xlim", type=common.parse_range, default=None)
    p.add_argument("--ylim", type=common.parse_range, default=None)
    args = p.parse_args(argv)
    spec = common.FigureSpec(inputs=[args.input], kind="pn_bars",
                             out=args.out, xlim=args.xlim, ylim=args.ylim)
    for path in render(spec):
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
