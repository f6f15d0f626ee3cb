"""Matplotlib renderers, one per figure id.

``build_figure`` returns a live Figure so tests can inspect axis extents;
``render`` saves it as ``<output_dir>/figures/fig<N>.png`` and closes it.
Rendering is read-only over the inputs and overwrites its own output, so
re-rendering is idempotent.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .recipes import RECIPES, FigureRecipe, Table, load_inputs

U_LABELS = {"u0": "U = 0", "u1": "U = -0.1 /s", "u2": "U = -0.25 /s"}
UK_COLUMNS = (("parity_u0", "U/k = 0"), ("parity_um0p01", "U/k = -0.01"),
              ("parity_um0p025", "U/k = -0.025"))


def _bar_panel(ax, table: Table, x_col: str, label: str):
    ax.bar(table[x_col], table["probability"], width=0.8, color="0.35")
    ax.set_title(label, fontsize=9)


def _build_fig1(recipe, tables):
    fig, axes = plt.subplots(1, 3, figsize=(9, 3), sharey=False)
    for ax, (role, label) in zip(axes, (("weak", "U/k = 0"), ("mid", "U/k = -0.1"),
                                        ("strong", "U/k = -0.5"))):
        _bar_panel(ax, tables[role], "n_left", label)
        ax.set_xlabel(recipe.xlabel)
    axes[0].set_ylabel(recipe.ylabel)
    return fig


def _build_fig2(recipe, tables):
    fig, axes = plt.subplots(1, 3, figsize=(9, 3))
    axes[0].plot(tables["one"]["theta"], tables["one"]["mean_diff"])
    axes[0].set_title("N = 1 mean", fontsize=9)
    axes[1].plot(tables["two"]["theta"], tables["two"]["mean_diff"])
    axes[1].set_title("N = 2 mean", fontsize=9)
    axes[1].set_ylim(-1.1, 1.1)
    axes[2].plot(tables["two"]["theta"], tables["two"]["var_diff"])
    axes[2].set_title("N = 2 variance", fontsize=9)
    for ax in axes:
        ax.set_xlim(*recipe.xrange)
        ax.set_xlabel(recipe.xlabel)
    axes[0].set_ylabel(recipe.ylabel)
    return fig


def _build_fig3(recipe, tables):
    fig, axes = plt.subplots(1, 3, figsize=(9, 3), sharey=True)
    for ax, role in zip(axes, ("u0", "u1", "u2")):
        _bar_panel(ax, tables[role], "n_right", U_LABELS[role])
        ax.set_xlabel(recipe.xlabel)
    axes[0].set_ylabel(recipe.ylabel)
    return fig


def _build_fig4(recipe, tables):
    fig, axes = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    for ax, role, n_atoms in ((axes[0], "n10", 10), (axes[1], "n20", 20)):
        table = tables[role]
        for column, label in UK_COLUMNS:
            ax.plot(table["theta"], table[column], label=label, lw=0.9)
        ax.set_title(f"N = {n_atoms}", fontsize=9)
        ax.set_ylabel(recipe.ylabel)
        ax.set_xlim(*recipe.xrange)
    axes[1].set_xlabel(recipe.xlabel)
    axes[0].legend(fontsize=8, loc="upper right")
    return fig


def _pivot_trajectory(table: Table):
    t = np.asarray(table["t"])
    n = np.asarray(table["n_right"], dtype=int)
    p = np.asarray(table["probability"])
    times = np.unique(t)
    levels = np.arange(n.max() + 1)
    grid = np.zeros((levels.size, times.size))
    t_index = np.searchsorted(times, t)
    grid[n, t_index] = p
    return times, levels, grid


def _build_fig5(recipe, tables):
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.4), sharey=True)
    for ax, role, label in ((axes[0], "fast", "0.5 s ramp"),
                            (axes[1], "slow", "4 s ramp")):
        times, levels, grid = _pivot_trajectory(tables[role])
        mesh = ax.pcolormesh(times, levels, grid, shading="nearest",
                             cmap="viridis")
        ax.set_title(label, fontsize=9)
        ax.set_xlabel(recipe.xlabel)
    axes[0].set_ylabel(recipe.ylabel)
    fig.colorbar(mesh, ax=axes, label="$|c_n|^2$")
    return fig


def _build_fig6(recipe, tables):
    fig, ax = plt.subplots(figsize=(5, 3.4))
    scan = tables["scan"]
    ax.plot(scan["ramp_time"], scan["fidelity"], "o", color="k",
            label="final state")
    reference = scan["ground_state_fidelity"][0]
    ax.axhline(reference, ls="--", color="0.4", label="ground state at final U")
    ax.set_xlabel(recipe.xlabel)
    ax.set_ylabel(recipe.ylabel)
    ax.set_ylim(0.0, 1.0)
    ax.legend(fontsize=8, loc="lower right")
    return fig


def _build_fig7(recipe, tables):
    fig, axes = plt.subplots(1, 3, figsize=(9, 3), sharey=True)
    for ax, role in zip(axes, ("u0", "u1", "u2")):
        table = tables[role]
        ax.plot(table["theta"], table["mean_left"], label="left well", lw=0.9)
        ax.plot(table["theta"], table["mean_right"], label="right well", lw=0.9)
        ax.set_title(U_LABELS[role], fontsize=9)
        ax.set_xlim(*recipe.xrange)
        ax.set_xlabel(recipe.xlabel)
    axes[0].set_ylabel(recipe.ylabel)
    axes[0].legend(fontsize=8)
    return fig


def _build_fig8(recipe, tables):
    fig, axes = plt.subplots(1, 3, figsize=(9, 3), sharey=True)
    for ax, role in zip(axes, ("u0", "u1", "u2")):
        table = tables[role]
        ax.plot(table["theta"], table["parity"], lw=0.8)
        ax.set_title(U_LABELS[role], fontsize=9)
        ax.set_xlim(*recipe.xrange)
        ax.set_ylim(-1.05, 1.05)
        ax.set_xlabel(recipe.xlabel)
    axes[0].set_ylabel(recipe.ylabel)
    return fig


_BUILDERS = {1: _build_fig1, 2: _build_fig2, 3: _build_fig3, 4: _build_fig4,
             5: _build_fig5, 6: _build_fig6, 7: _build_fig7, 8: _build_fig8}


def build_figure(figure_id: int, run_dir: Path):
    """Load a figure's inputs and return the assembled matplotlib Figure."""
    recipe = RECIPES[figure_id]
    tables = load_inputs(recipe, Path(run_dir))
    fig = _BUILDERS[figure_id](recipe, tables)
    fig.suptitle(recipe.title, fontsize=10)
    return fig


def render(figure_id: int, run_dir: Path, output_dir: Path | None = None) -> Path:
    """Render one figure to <output_dir>/figures/fig<N>.png."""
    run_dir = Path(run_dir)
    target_dir = Path(output_dir) if output_dir is not None else run_dir
    out = target_dir / "figures" / f"fig{figure_id}.png"
    out.parent.mkdir(parents=True, exist_ok=True)
    fig = build_figure(figure_id, run_dir)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
