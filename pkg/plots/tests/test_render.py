"""Renderer unit tests on synthetic inputs in the documented CSV layout."""

import numpy as np
import pytest

from doublewell_plots import PlotDataError, build_figure, load_table, render


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    lines += [",".join(repr(float(v)) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def synth_fig8(run_dir):
    theta = np.linspace(0.0, 2 * np.pi, 64, endpoint=False)
    for name, amp in (("parity_u0.csv", 1.0), ("parity_um0p1.csv", 0.7),
                      ("parity_um0p25.csv", 0.4)):
        write_csv(run_dir / "fig8" / name, ["theta", "parity"],
                  zip(theta, amp * np.cos(20 * theta)))


def synth_fig6(run_dir):
    times = [0.25, 0.5, 1.0, 2.0, 4.0]
    fids = [0.17, 0.03, 0.2, 0.43, 0.67]
    write_csv(run_dir / "fig6" / "fidelity.csv",
              ["ramp_time", "fidelity", "ground_state_fidelity"],
              [(t, f, 0.857) for t, f in zip(times, fids)])


def test_render_writes_png_and_is_idempotent(tmp_path):
    synth_fig8(tmp_path)
    out1 = render(8, tmp_path)
    assert out1.exists() and out1.stat().st_size > 0
    first = out1.read_bytes()
    out2 = render(8, tmp_path)
    assert out2 == out1
    assert out2.stat().st_size > 0
    assert len(first) > 1000


def test_axis_extents_follow_recipe(tmp_path):
    synth_fig8(tmp_path)
    fig = build_figure(8, tmp_path)
    for ax in fig.axes:
        assert ax.get_xlim() == (0.0, pytest.approx(2 * np.pi))
        assert ax.get_ylim() == (-1.05, 1.05)


def test_fig6_draws_reference_line(tmp_path):
    synth_fig6(tmp_path)
    fig = build_figure(6, tmp_path)
    ax = fig.axes[0]
    assert len(ax.lines) >= 2   # dots series plus the dashed reference
    dashed = [ln for ln in ax.lines if ln.get_linestyle() == "--"]
    assert dashed and dashed[0].get_ydata()[0] == pytest.approx(0.857)
    x0, x1 = ax.get_xlim()
    assert x0 <= 0.25 and x1 >= 4.0


def test_missing_file_is_descriptive(tmp_path):
    with pytest.raises(PlotDataError, match="missing input file"):
        build_figure(6, tmp_path)


def test_missing_column_is_descriptive(tmp_path):
    write_csv(tmp_path / "fig6" / "fidelity.csv",
              ["ramp_time", "fidelity"], [(0.5, 0.1)])
    with pytest.raises(PlotDataError, match="ground_state_fidelity"):
        build_figure(6, tmp_path)


def test_loader_rejects_empty_csv(tmp_path):
    target = tmp_path / "fig6" / "fidelity.csv"
    target.parent.mkdir(parents=True)
    target.write_text("", encoding="utf-8")
    with pytest.raises(PlotDataError, match="empty"):
        load_table(target, ("ramp_time",))


def test_cli_exit_codes(tmp_path):
    from doublewell_plots.cli import main

    synth_fig8(tmp_path)
    assert main(["fig8", "--run-dir", str(tmp_path)]) == 0
    assert (tmp_path / "figures" / "fig8.png").exists()
    assert main(["fig6", "--run-dir", str(tmp_path)]) == 2
