"""Render figures from doublewell CLI run directories.

One command per figure id, plus ``all``:

    doublewell-plots fig5 --run-dir runs
    doublewell-plots all --run-dir runs --output-dir out
"""

from __future__ import annotations

import argparse
import sys

from .recipes import RECIPES, PlotDataError
from .render import render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="doublewell-plots",
        description="Render doublewell preset outputs as figures",
    )
    parser.add_argument("figure", choices=[f"fig{i}" for i in RECIPES] + ["all"])
    parser.add_argument("--run-dir", default="runs",
                        help="directory the doublewell presets wrote into")
    parser.add_argument("--output-dir", default=None,
                        help="where figures/ goes (default: the run dir)")
    args = parser.parse_args(argv)

    ids = list(RECIPES) if args.figure == "all" else [int(args.figure[3:])]
    try:
        for figure_id in ids:
            path = render(figure_id, args.run_dir, args.output_dir)
            print(path)
    except PlotDataError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
