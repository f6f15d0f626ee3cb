"""Command-line runner.

Subcommands: ground-state | ramp | ramsey | coherence | estimate-u | preset.
Each accepts an optional ``--config`` file (INI, or a previous run's
summary.json) with flags taking precedence over file keys.  Exit codes:
0 success, 2 configuration/validation failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from .config import Scenario, load_config
from .errors import ConfigError, DoubleWellError
from .runners import run


def _add_common(parser):
    parser.add_argument("--config", help="INI config or summary.json to start from")
    parser.add_argument("--output-dir", dest="run.output_dir", metavar="DIR")


def _add_model(parser):
    parser.add_argument("--n-atoms", dest="model.n_atoms", metavar="N")
    parser.add_argument("--kappa", dest="model.kappa", metavar="RAD_PER_S")
    parser.add_argument("--convention", dest="model.convention",
                        choices=["HALF", "FULL"])


def _add_state(parser):
    parser.add_argument("--state-type", dest="state.type",
                        choices=["noon", "mixture", "ground", "ramp"])
    parser.add_argument("--phi", dest="state.phi", metavar="RAD")
    parser.add_argument("--state-u", dest="state.u", metavar="RAD_PER_S")
    parser.add_argument("--state-u-start", dest="state.u_start", metavar="RAD_PER_S")
    parser.add_argument("--state-u-end", dest="state.u_end", metavar="RAD_PER_S")
    parser.add_argument("--state-ramp-time", dest="state.ramp_time", metavar="S")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doublewell",
        description="Two-mode double-well condensate experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ground-state", help="imaginary-time ground states")
    _add_common(p)
    _add_model(p)
    p.add_argument("--u-values", dest="ground.u_values", metavar="U1,U2,...")
    p.add_argument("--tol", dest="ground.tol", metavar="RAD_PER_S")
    p.set_defaults(scenario=Scenario.GROUND_STATE)

    p = sub.add_parser("ramp", help="linear interaction ramp from the ground state")
    _add_common(p)
    _add_model(p)
    p.add_argument("--u-start", dest="ramp.u_start", metavar="RAD_PER_S")
    p.add_argument("--u-end", dest="ramp.u_end", metavar="RAD_PER_S")
    p.add_argument("--ramp-time", dest="ramp.ramp_time", metavar="S")
    p.add_argument("--samples", dest="ramp.samples", metavar="COUNT")
    p.add_argument("--step-tolerance", dest="integrator.step_tolerance")
    p.set_defaults(scenario=Scenario.RAMP)

    p = sub.add_parser("ramsey", help="interference fringes or a single-phase run")
    _add_common(p)
    _add_model(p)
    _add_state(p)
    p.add_argument("--theta", dest="ramsey.theta", metavar="RAD",
                   help="single accumulated phase; omit to sweep the grid")
    p.add_argument("--theta-points", dest="ramsey.theta_points", metavar="COUNT")
    p.add_argument("--kappa-bs", dest="ramsey.kappa_bs", metavar="RAD_PER_S")
    p.add_argument("--u-bs", dest="ramsey.u_bs", metavar="RAD_PER_S")
    p.add_argument("--max-moment", dest="ramsey.max_moment", metavar="K")
    p.add_argument("--include-distributions", dest="ramsey.include_distributions",
                   nargs="?", const="true")
    p.set_defaults(scenario=Scenario.RAMSEY_SWEEP)

    p = sub.add_parser("coherence", help="parity-fringe spectrum and coherence sums")
    _add_common(p)
    _add_model(p)
    _add_state(p)
    p.add_argument("--theta-points", dest="coherence.theta_points", metavar="COUNT")
    p.add_argument("--kappa-bs", dest="coherence.kappa_bs", metavar="RAD_PER_S")
    p.add_argument("--u-bs", dest="coherence.u_bs", metavar="RAD_PER_S")
    p.set_defaults(scenario=Scenario.COHERENCE_ANALYSIS)

    p = sub.add_parser("estimate-u", help="interaction rate from trap parameters")
    _add_common(p)
    p.add_argument("--mass-amu", dest="trap.mass_amu", metavar="AMU")
    p.add_argument("--omega", dest="trap.omega", metavar="WX,WY,WZ")
    p.add_argument("--omega-units", dest="trap.omega_units",
                   choices=["angular", "hertz"])
    p.add_argument("--scattering-length-a0", dest="trap.scattering_lengths_a0",
                   metavar="A1,A2,...")
    p.set_defaults(scenario=Scenario.ESTIMATE_U)

    p = sub.add_parser("preset", help="run a pinned figure-reproduction preset")
    p.add_argument("name", choices=[s.value for s in Scenario
                                    if s.value.startswith("FIG")])
    _add_common(p)
    p.set_defaults(scenario=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    scenario = args.scenario if args.scenario is not None else Scenario(args.name)
    overrides = {}
    for key, value in vars(args).items():
        if "." in key and value is not None:
            section, option = key.split(".", 1)
            overrides[(section, option)] = value
    try:
        config = load_config(scenario, args.config, overrides)
        result = run(config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"invalid argument: {exc}", file=sys.stderr)
        return 2
    except DoubleWellError as exc:
        print(f"numerical failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 3
    for name in result.summary["outputs"]:
        print(result.directory / name)
    print(result.summary_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
