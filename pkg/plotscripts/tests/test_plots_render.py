"""Rendering tests: every figure kind draws from the golden fixtures, the
images are deterministic, and data extracted back off the artists matches
the input files exactly.
"""
import json

import numpy as np
import pytest

import common
import fq_vs_g
import fq_vs_omega
import frac_change
import pn_bars

MODULES = {"pn_bars": pn_bars, "fq_vs_omega": fq_vs_omega,
           "frac_change": frac_change, "fq_vs_g": fq_vs_g}


def spec_for(kind, fixtures, out):
    inputs = {
        "pn_bars": ["metrology_crossing.json"],
        "fq_vs_omega": ["sweep_ll1.csv", "sweep_ll2.csv"],
        "frac_change": ["compare_g0.7.json", "compare_g1.0.json",
                        "compare_g1.3.json"],
        "fq_vs_g": [f"critical_g{g}_ll{ll}.json"
                    for g in ("0.7", "1.0", "1.3") for ll in ("1", "2")],
    }[kind]
    return common.FigureSpec(inputs=[str(fixtures / name) for name in inputs],
                             kind=kind, out=str(out))


@pytest.mark.parametrize("kind", common.FIGURE_KINDS)
def test_renders_png_and_svg(kind, fixtures, tmp_path):
    written = MODULES[kind].render(spec_for(kind, fixtures, tmp_path / kind))
    assert sorted(p.suffix for p in written) == [".png", ".svg"]
    for path in written:
        assert path.exists() and path.stat().st_size > 0


@pytest.mark.parametrize("kind", common.FIGURE_KINDS)
def test_deterministic_output(kind, fixtures, tmp_path):
    first = MODULES[kind].render(spec_for(kind, fixtures, tmp_path / "a" / kind))
    second = MODULES[kind].render(spec_for(kind, fixtures, tmp_path / "b" / kind))
    for p1, p2 in zip(first, second):
        assert p1.read_bytes() == p2.read_bytes(), p1.suffix


def test_pn_bars_roundtrip(fixtures, tmp_path):
    spec = spec_for("pn_bars", fixtures, tmp_path / "pn")
    fig = pn_bars.build(spec)
    art = json.loads((fixtures / "metrology_crossing.json").read_text())
    heights = [rect.get_height() for rect in fig.axes[0].containers[0]]
    xs = [rect.get_x() + rect.get_width() / 2
          for rect in fig.axes[0].containers[0]]
    assert heights == art["metrology"]["p_n"]
    assert xs == [0.0, 2.0, 4.0]


def test_pn_bars_condensate_single_bar(fixtures, tmp_path):
    spec = common.FigureSpec(
        inputs=[str(fixtures / "metrology_condensate.json")],
        kind="pn_bars", out=str(tmp_path / "pn"))
    fig = pn_bars.build(spec)
    heights = [rect.get_height() for rect in fig.axes[0].containers[0]]
    visible = [h for h in heights if h > 1e-5]
    assert len(visible) == 1
    assert heights[0] == visible[0] > 0.999


def test_pn_bars_rejects_wrong_length(fixtures, tmp_path):
    art = json.loads((fixtures / "metrology_crossing.json").read_text())
    art["metrology"]["p_n"] = art["metrology"]["p_n"][:-1]
    path = tmp_path / "truncated.json"
    path.write_text(json.dumps(art))
    spec = common.FigureSpec(inputs=[str(path)], kind="pn_bars",
                             out=str(tmp_path / "pn"))
    with pytest.raises(common.SchemaError, match="p_n has 2 entries"):
        pn_bars.build(spec)


def test_fq_curve_roundtrip_200_points(fixtures, tmp_path):
    spec = common.FigureSpec(inputs=[str(fixtures / "sweep_ll1.csv")],
                             kind="fq_vs_omega", out=str(tmp_path / "fq"))
    fig = fq_vs_omega.build(spec)
    (line,) = fig.axes[0].get_lines()
    _, cols = common.read_sweep_csv(fixtures / "sweep_ll1.csv")
    assert len(line.get_xdata()) == 200
    assert np.array_equal(line.get_xdata(), cols["omega"])
    assert np.array_equal(line.get_ydata(), cols["fq"])


def test_fq_curve_one_line_per_file(fixtures, tmp_path):
    spec = spec_for("fq_vs_omega", fixtures, tmp_path / "fq")
    fig = fq_vs_omega.build(spec)
    lines = fig.axes[0].get_lines()
    assert [ln.get_label() for ln in lines] == ["1 level", "2 levels"]


def test_frac_change_points_per_g(fixtures, tmp_path):
    spec = spec_for("frac_change", fixtures, tmp_path / "fc")
    fig = frac_change.build(spec)
    arts = [json.loads((fixtures / f"compare_g{g}.json").read_text())
            for g in ("0.7", "1.0", "1.3")]
    top, bot = fig.axes
    (line_top,) = top.get_lines()
    (line_bot,) = bot.get_lines()
    assert list(line_top.get_xdata()) == [a["config"]["g"] for a in arts]
    assert list(line_top.get_ydata()) == [a["frac_omega"] for a in arts]
    assert list(line_bot.get_ydata()) == [a["frac_fq"] for a in arts]


def test_fq_vs_g_series_per_truncation(fixtures, tmp_path):
    spec = spec_for("fq_vs_g", fixtures, tmp_path / "fg")
    fig = fq_vs_g.build(spec)
    lines = fig.axes[0].get_lines()
    assert [ln.get_label() for ln in lines] == ["1 level", "2 levels"]
    for n_ll, line in zip(("1", "2"), lines):
        arts = [json.loads(
            (fixtures / f"critical_g{g}_ll{n_ll}.json").read_text())
            for g in ("0.7", "1.0", "1.3")]
        assert list(line.get_xdata()) == [a["config"]["g"] for a in arts]
        assert list(line.get_ydata()) == [a["point"]["fq"] for a in arts]
    assert fig.axes[0].get_yscale() == "linear"


def test_fq_vs_g_log_toggle(fixtures, tmp_path):
    spec = spec_for("fq_vs_g", fixtures, tmp_path / "fg")
    spec.logy = True
    fig = fq_vs_g.build(spec)
    assert fig.axes[0].get_yscale() == "log"


def test_cli_entry_points(fixtures, tmp_path, capsys):
    rc = pn_bars.main([str(fixtures / "metrology_crossing.json"),
                       "--out", str(tmp_path / "pn")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "pn.png" in out and "pn.svg" in out
    rc = fq_vs_g.main([str(fixtures / "critical_g1.0_ll1.json"),
                       "--log", "--out", str(tmp_path / "fg.svg")])
    assert rc == 0
    assert (tmp_path / "fg.svg").exists() and not (tmp_path / "fg.png").exists()
