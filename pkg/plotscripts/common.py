"""Shared loading, validation, and saving for the figure scripts.

These scripts are read-only consumers of the simulation CLI's CSV and JSON
artifacts.  Nothing here recomputes physics; every number on a figure comes
straight out of an input file.
"""
import dataclasses
import json
import pathlib

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "plotscripts"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

# column-for-column contract with the sweep command's CSV output
SWEEP_COLUMNS = ["omega", "g", "A", "n_ll", "l_min", "l_max", "e0", "gap",
                 "lam1", "lam2", "lam3", "fidelity", "fq", "dphi"]

FIGURE_KINDS = ("pn_bars", "fq_vs_omega", "frac_change", "fq_vs_g")


class SchemaError(ValueError):
    """An input file does not match the expected artifact schema."""


@dataclasses.dataclass
class FigureSpec:
    """Everything one figure needs: inputs, kind, axis ranges, output path."""

    inputs: list
    kind: str
    out: str
    xlim: tuple | None = None
    ylim: tuple | None = None
    logy: bool = False

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise SchemaError(f"unknown figure kind '{self.kind}'")
        if not self.inputs:
            raise SchemaError("no input files given")


def check_sweep_header(header, source):
    missing = [c for c in SWEEP_COLUMNS if c not in header]
    if missing:
        raise SchemaError(f"{source}: sweep CSV missing column '{missing[0]}'")
    if header != SWEEP_COLUMNS:
        raise SchemaError(f"{source}: sweep CSV header does not match the "
                          f"scanner schema: {header}")


def read_sweep_csv(path):
    """Parse a sweep CSV into (meta, columns).

    meta holds the embedded `# key = value` config block as strings; columns
    maps each schema column name to a list of floats.
    """
    path = pathlib.Path(path)
    meta = {}
    header = None
    columns = {name: [] for name in SWEEP_COLUMNS}
    with open(path, newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, sep, val = line[1:].partition("=")
                if sep:
                    meta[key.strip()] = val.strip()
                continue
            cells = line.split(",")
            if header is None:
                header = cells
                check_sweep_header(header, path)
                continue
            if len(cells) != len(SWEEP_COLUMNS):
                raise SchemaError(f"{path}:{lineno}: expected "
                                  f"{len(SWEEP_COLUMNS)} cells, got {len(cells)}")
            for name, cell in zip(SWEEP_COLUMNS, cells):
                columns[name].append(float(cell))
    if header is None:
        raise SchemaError(f"{path}: no header row found")
    return meta, columns


def _read_json(path, required, label):
    path = pathlib.Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    missing = [k for k in required if k not in data]
    if missing:
        raise SchemaError(f"{path}: {label} JSON missing key '{missing[0]}'")
    return data


def read_metrology(path):
    art = _read_json(path, ["config", "metrology"], "ground-state")
    block = art["metrology"]
    for key in ("p_n", "fidelity", "f_q"):
        if key not in block:
            raise SchemaError(f"{path}: metrology block missing key '{key}'")
    return art


def read_compare(path):
    return _read_json(path, ["config", "n_ll_a", "n_ll_b",
                             "frac_omega", "frac_fq"], "compare-levels")


def read_critical(path):
    return _read_json(path, ["config", "omega_c", "point"], "critical")


def apply_axes(ax, spec):
    if spec.xlim is not None:
        ax.set_xlim(*spec.xlim)
    if spec.ylim is not None:
        ax.set_ylim(*spec.ylim)


def save_figure(fig, out, formats=("png", "svg")):
    """Write the figure as PNG and SVG (or just the format `out` names).

    Returns the written paths.  SVG metadata is pinned so identical inputs
    give byte-identical files.
    """
    out = pathlib.Path(out)
    if out.suffix.lower() in (".png", ".svg"):
        targets = [out]
    else:
        targets = [out.with_suffix("." + fmt) for fmt in formats]
    written = []
    for target in targets:
        target.parent.mkdir(parents=True, exist_ok=True)
        metadata = {"Date": None} if target.suffix == ".svg" else None
        fig.savefig(target, metadata=metadata)
        written.append(target)
    plt.close(fig)
    return written


def parse_range(text):
    """Axis range flag: 'LO,HI' -> (float, float)."""
    parts = text.split(",")
    if len(parts) != 2:
        raise SchemaError(f"expected 'LO,HI', got '{text}'")
    return float(parts[0]), float(parts[1])
