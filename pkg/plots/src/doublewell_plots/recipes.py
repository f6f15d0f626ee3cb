"""Figure recipes: which CSV files each figure consumes and how to label it.

The inputs are the documented outputs of the ``doublewell`` CLI presets, laid
out as ``<run_dir>/fig<N>/<name>.csv``.  Recipes only ever name documented
columns; the loader rejects files whose header lacks a required column.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path


class PlotDataError(ValueError):
    """Missing input file or a CSV without the documented columns."""


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: int
    subdir: str
    files: dict          # role -> file name
    columns: dict        # role -> tuple of required column names
    title: str
    xlabel: str
    ylabel: str
    xrange: tuple | None = None


@dataclass
class Table:
    """A parsed CSV: named float columns of equal length."""

    path: Path
    data: dict = field(default_factory=dict)

    def __getitem__(self, name: str):
        return self.data[name]

    def __len__(self):
        return len(next(iter(self.data.values())))


def load_table(path: Path, required: tuple) -> Table:
    if not path.exists():
        raise PlotDataError(f"missing input file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise PlotDataError(f"empty CSV: {path}") from None
        missing = [c for c in required if c not in header]
        if missing:
            raise PlotDataError(
                f"{path} lacks required columns {missing}; found {header}"
            )
        rows = [[float(x) for x in row] for row in reader if row]
    table = Table(path=path)
    for i, name in enumerate(header):
        table.data[name] = [row[i] for row in rows]
    return table


RECIPES = {
    1: FigureRecipe(
        1, "fig1",
        files={"weak": "distribution_u0.csv", "mid": "distribution_um1.csv",
               "strong": "distribution_um5.csv"},
        columns={role: ("n_left", "probability") for role in ("weak", "mid", "strong")},
        title="Ground-state number distributions",
        xlabel="$N_L$", ylabel="probability",
    ),
    2: FigureRecipe(
        2, "fig2",
        files={"one": "fringe_n1.csv", "two": "fringe_n2.csv"},
        columns={"one": ("theta", "mean_diff"),
                 "two": ("theta", "mean_diff", "var_diff")},
        title="Quadrature fringes of small cat states",
        xlabel="accumulated phase", ylabel="number difference",
        xrange=(0.0, 6.283185307179586),
    ),
    3: FigureRecipe(
        3, "fig3",
        files={"u0": "distribution_u0.csv", "u1": "distribution_um0p1.csv",
               "u2": "distribution_um0p25.csv"},
        columns={role: ("n_right", "probability") for role in ("u0", "u1", "u2")},
        title="Output number distribution after interference",
        xlabel="$n$", ylabel="$|c_n|^2$",
    ),
    4: FigureRecipe(
        4, "fig4",
        files={"n10": "parity_n10.csv", "n20": "parity_n20.csv"},
        columns={"n10": ("theta", "parity_u0", "parity_um0p01", "parity_um0p025"),
                 "n20": ("theta", "parity_u0", "parity_um0p01", "parity_um0p025")},
        title="Parity fringes of ideal cat states",
        xlabel="accumulated phase", ylabel="parity",
        xrange=(0.0, 6.283185307179586),
    ),
    5: FigureRecipe(
        5, "fig5",
        files={"fast": "trajectory_0p5s.csv", "slow": "trajectory_4s.csv"},
        columns={"fast": ("t", "n_right", "probability"),
                 "slow": ("t", "n_right", "probability")},
        title="Number distribution during the interaction ramp",
        xlabel="t (s)", ylabel="$n$",
    ),
    6: FigureRecipe(
        6, "fig6",
        files={"scan": "fidelity.csv"},
        columns={"scan": ("ramp_time", "fidelity", "ground_state_fidelity")},
        title="Cat-state fidelity versus ramp time",
        xlabel="ramp time (s)", ylabel="fidelity",
    ),
    7: FigureRecipe(
        7, "fig7",
        files={"u0": "wells_u0.csv", "u1": "wells_um0p1.csv",
               "u2": "wells_um0p25.csv"},
        columns={role: ("theta", "mean_left", "mean_right")
                 for role in ("u0", "u1", "u2")},
        title="Well populations after interference (ramped state)",
        xlabel="accumulated phase", ylabel="mean atom number",
        xrange=(0.0, 6.283185307179586),
    ),
    8: FigureRecipe(
        8, "fig8",
        files={"u0": "parity_u0.csv", "u1": "parity_um0p1.csv",
               "u2": "parity_um0p25.csv"},
        columns={role: ("theta", "parity") for role in ("u0", "u1", "u2")},
        title="Parity fringes of the ramped (non-ideal) state",
        xlabel="accumulated phase", ylabel="parity",
        xrange=(0.0, 6.283185307179586),
    ),
}


def load_inputs(recipe: FigureRecipe, run_dir: Path) -> dict:
    """Load every input table of a figure, validating columns."""
    base = Path(run_dir) / recipe.subdir
    return {role: load_table(base / name, recipe.columns[role])
            for role, name in recipe.files.items()}
