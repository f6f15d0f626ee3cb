"""Scenario runners: turn a validated configuration into CSV/JSON artifacts.

Each runner writes into ``<output_dir>/<scenario_dir>/`` and finishes with a
``summary.json`` whose ``parameters`` block can be fed back in as a config
to reproduce the run byte-for-byte (CSV-wise; the summary itself carries the
wall time).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import coherence as coh
from .config import ExperimentConfig, Scenario
from .evolve import (
    IntegratorConfig,
    Method,
    ground_state,
    fidelity_vs_ramp,
    noon_overlap_fidelity,
    ramp_run,
)
from .fock import (
    FockVector,
    InteractionConvention,
    SystemParams,
    diff_variance,
    make_mixture,
    make_noon,
    mean_left,
)
from .output import write_csv, write_json
from .physical import TrapSpec, gaussian_widths, interaction_strength
from .ramsey import RamseyConfig, default_theta_grid, fringe_sweep, ramsey_run

SCENARIO_DIRS = {
    Scenario.GROUND_STATE: "ground_state",
    Scenario.RAMP: "ramp",
    Scenario.RAMSEY_SWEEP: "ramsey",
    Scenario.COHERENCE_ANALYSIS: "coherence",
    Scenario.ESTIMATE_U: "estimate_u",
    **{s: s.value.lower() for s in Scenario if s.value.startswith("FIG")},
}

BINOMIAL_NOTE = (
    "At u = 0 the ground state is exactly binomial, so the number-difference "
    "variance equals N (here {value}). A reference value of 12 is sometimes "
    "quoted for this point; it is inconsistent with the binomial ground state "
    "and is flagged here instead of being reproduced."
)


@dataclass(frozen=True)
class RunResult:
    scenario: Scenario
    directory: Path
    files: tuple
    summary: dict
    summary_path: Path


def _label(u: float) -> str:
    return ("u%g" % u).replace("-", "m").replace(".", "p")


def _convention(config: ExperimentConfig) -> InteractionConvention:
    return InteractionConvention(config.get("model", "convention"))


def _integrator(config: ExperimentConfig, section: str = "integrator") -> IntegratorConfig:
    if section not in config.sections:
        return IntegratorConfig()
    return IntegratorConfig(
        method=Method(config.get(section, "method")),
        step_tolerance=config.get(section, "step_tolerance"),
        max_step=config.get(section, "max_step"),
    )


def _build_state(config: ExperimentConfig):
    """Initial state per the [state] section (noon | mixture | ground | ramp)."""
    n_atoms = config.get("model", "n_atoms")
    kind = config.get("state", "type")
    if kind == "noon":
        return make_noon(n_atoms, config.get("state", "phi"))
    if kind == "mixture":
        return make_mixture(n_atoms)
    convention = _convention(config)
    kappa = config.get("model", "kappa")
    if kind == "ground":
        params = SystemParams.symmetric(kappa, config.get("state", "u"), convention)
        return ground_state(params, n_atoms)
    run = ramp_run(n_atoms, kappa, config.get("state", "u_start"),
                   config.get("state", "u_end"), config.get("state", "ramp_time"),
                   config=_integrator(config), samples=2, convention=convention)
    return run.final_state


def _ramsey_config(config: ExperimentConfig, section: str, u_bs: float | None = None) -> RamseyConfig:
    return RamseyConfig(
        kappa_bs=config.get(section, "kappa_bs"),
        u_interference=config.get(section, "u_bs") if u_bs is None else u_bs,
        convention=_convention(config),
    )


def _distribution_rows(state: FockVector):
    n_atoms = state.total_atoms
    for n, p in enumerate(state.probabilities()):
        yield (n_atoms - n, n, float(p))


def _fringe_csv(directory: Path, name: str, fringe, include_distribution: bool = False):
    return write_csv(directory / name, fringe.header(include_distribution),
                     fringe.rows(include_distribution))


def _finalize(config: ExperimentConfig, directory: Path, files: list,
              derived: dict, notes: list, started: float) -> RunResult:
    summary = {
        "scenario": config.scenario.value,
        "parameters": config.parameters_payload(),
        "derived": derived,
        "notes": sorted(notes),
        "outputs": sorted(str(f.name) for f in files),
        "wall_time_s": time.perf_counter() - started,
    }
    summary_path = write_json(directory / "summary.json", summary)
    return RunResult(scenario=config.scenario, directory=directory,
                     files=tuple(files), summary=summary, summary_path=summary_path)


def run(config: ExperimentConfig) -> RunResult:
    started = time.perf_counter()
    directory = config.output_dir / SCENARIO_DIRS[config.scenario]
    directory.mkdir(parents=True, exist_ok=True)
    runner = _RUNNERS[config.scenario]
    files, derived, notes = runner(config, directory)
    return _finalize(config, directory, files, derived, notes, started)


def _ground_state_runs(config: ExperimentConfig, directory: Path, section: str):
    n_atoms = config.get("model", "n_atoms")
    kappa = config.get("model", "kappa")
    convention = _convention(config)
    tol = config.get(section, "tol")
    max_iterations = config.get(section, "max_iterations")
    files, derived, notes = [], {}, []
    for u in config.get(section, "u_values"):
        params = SystemParams.symmetric(kappa, u, convention)
        state, info = ground_state(params, n_atoms, tol=tol,
                                   max_iterations=max_iterations, with_info=True)
        label = _label(u)
        files.append(write_csv(directory / f"distribution_{label}.csv",
                               ["n_left", "n_right", "probability"],
                               _distribution_rows(state)))
        files.append(write_json(directory / f"state_{label}.json", state.to_payload()))
        variance = diff_variance(state)
        derived[label] = {
            "u": u,
            "u_over_kappa": u / kappa if kappa else None,
            "energy_rad_per_s": info.energy,
            "iterations": info.iterations,
            "diff_variance": variance,
            "mean_left": mean_left(state),
        }
        if u == 0.0:
            notes.append(BINOMIAL_NOTE.format(value=float(n_atoms)))
    return files, derived, notes


def _run_ground_state(config, directory):
    return _ground_state_runs(config, directory, "ground")


def _run_fig1(config, directory):
    return _ground_state_runs(config, directory, "fig1")


def _ramp_artifacts(directory: Path, stem: str, trajectory) -> list:
    files = [
        write_csv(directory / f"{stem}.csv", ["t", "n_right", "probability"],
                  ((t, n, p) for t, n, p in trajectory.distribution_rows())),
        write_csv(directory / f"{stem}_summary.csv",
                  ["t", "u", "diff_variance", "noon_fidelity"],
                  trajectory.summary_rows()),
    ]
    return files


def _run_ramp(config, directory):
    trajectory = ramp_run(
        config.get("model", "n_atoms"), config.get("model", "kappa"),
        config.get("ramp", "u_start"), config.get("ramp", "u_end"),
        config.get("ramp", "ramp_time"), config=_integrator(config),
        samples=config.get("ramp", "samples"), convention=_convention(config),
    )
    files = _ramp_artifacts(directory, "trajectory", trajectory)
    derived = {
        "final_diff_variance": diff_variance(trajectory.final_state),
        "final_noon_fidelity": noon_overlap_fidelity(trajectory.final_state),
        "norm_drift": trajectory.norm_drift,
    }
    return files, derived, []


def _run_fig5(config, directory):
    files, derived = [], {}
    integ = IntegratorConfig(step_tolerance=config.get("fig5", "step_tolerance"))
    for ramp_time in config.get("fig5", "ramp_times"):
        trajectory = ramp_run(
            config.get("model", "n_atoms"), config.get("model", "kappa"),
            config.get("fig5", "u_start"), config.get("fig5", "u_end"),
            ramp_time, config=integ, samples=config.get("fig5", "samples"),
            convention=_convention(config),
        )
        stem = "trajectory_" + ("%gs" % ramp_time).replace(".", "p")
        files.extend(_ramp_artifacts(directory, stem, trajectory))
        derived[stem] = {
            "ramp_time": ramp_time,
            "final_diff_variance": diff_variance(trajectory.final_state),
            "final_noon_fidelity": noon_overlap_fidelity(trajectory.final_state),
            "norm_drift": trajectory.norm_drift,
        }
    return files, derived, []


def _run_fig6(config, directory):
    scan = fidelity_vs_ramp(
        config.get("model", "n_atoms"), config.get("model", "kappa"),
        config.get("fig6", "u_start"), config.get("fig6", "u_end"),
        config.get("fig6", "ramp_times"),
        config=IntegratorConfig(step_tolerance=config.get("fig6", "step_tolerance")),
        convention=_convention(config),
    )
    files = [write_csv(directory / "fidelity.csv",
                       ["ramp_time", "fidelity", "ground_state_fidelity"],
                       scan.rows())]
    derived = {
        "ramp_times": list(scan.ramp_times),
        "fidelities": list(scan.fidelities),
        "ground_state_fidelity": scan.reference_fidelity,
    }
    return files, derived, []


def _run_ramsey(config, directory):
    state = _build_state(config)
    rconfig = _ramsey_config(config, "ramsey")
    theta_raw = config.get("ramsey", "theta")
    files, derived = [], {}
    if str(theta_raw).strip():
        theta = float(theta_raw)
        record = ramsey_run(state, theta, rconfig)
        n = np.arange(record.n_atoms + 1)
        files.append(write_csv(directory / "distribution.csv",
                               ["n_right", "probability"],
                               zip(n.tolist(), map(float, record.distribution))))
        even = record.distribution[0::2]
        odd = record.distribution[1::2]
        derived.update({
            "theta": theta,
            "mean_diff": record.mean_diff,
            "var_diff": record.var_diff,
            "parity": record.parity,
            "min_even_probability": float(np.min(even)),
            "max_odd_probability": float(np.max(odd)),
        })
    else:
        grid = default_theta_grid(config.get("ramsey", "theta_points"))
        fringe = fringe_sweep(state, grid, rconfig,
                              max_moment=config.get("ramsey", "max_moment"))
        files.append(_fringe_csv(directory, "fringe.csv", fringe,
                                 config.get("ramsey", "include_distributions")))
        derived.update({
            "parity_min": float(np.min(fringe.parity)),
            "parity_max": float(np.max(fringe.parity)),
            "mean_diff_amplitude": float(np.max(fringe.mean_diff) - np.min(fringe.mean_diff)) / 2.0,
        })
    return files, derived, []


def _run_coherence(config, directory):
    state = _build_state(config)
    rconfig = _ramsey_config(config, "coherence")
    grid = default_theta_grid(config.get("coherence", "theta_points"))
    fringe = fringe_sweep(state, grid, rconfig)
    spectrum = coh.parity_fourier(fringe).merged(coh.coherence_sums(state))
    files = [
        _fringe_csv(directory, "fringe.csv", fringe),
        write_csv(directory / "spectrum.csv", spectrum.header(), spectrum.rows()),
    ]
    amps = np.abs(spectrum.fourier)
    derived = {
        "noise_floor": coh.fringe_noise_floor(fringe),
        "top_frequency_amplitude": float(amps[-1]),
        "dominant_nonzero_m": int(np.argmax(amps[1:]) + 1),
    }
    notes = []
    if rconfig.u_interference == 0.0:
        report = coh.verify_decomposition(state, rconfig)
        derived["reconstruction_max_error"] = report.max_error
    else:
        notes.append("reconstruction check skipped: only valid for u_bs = 0")
    return files, derived, notes


def _run_estimate_u(config, directory):
    spec0 = TrapSpec.from_lab(
        config.get("trap", "mass_amu"), config.get("trap", "omega"),
        config.get("trap", "omega_units"), 0.0,
    )
    rows, u_values = [], {}
    for a0 in config.get("trap", "scattering_lengths_a0"):
        spec = TrapSpec.from_lab(config.get("trap", "mass_amu"),
                                 config.get("trap", "omega"),
                                 config.get("trap", "omega_units"), a0)
        u = interaction_strength(spec)
        rows.append((float(a0), u))
        u_values["a0_%g" % a0] = u
    files = [write_csv(directory / "interaction_strength.csv",
                       ["scattering_length_a0", "u_rad_per_s"], rows)]
    sx, sy, sz = gaussian_widths(spec0)
    derived = {
        "gaussian_widths_m": [sx, sy, sz],
        "u_rad_per_s": u_values,
    }
    return files, derived, []


def _run_fig2(config, directory):
    files, derived = [], {}
    phi = config.get("fig2", "phi")
    rconfig = RamseyConfig(kappa_bs=config.get("fig2", "kappa_bs"),
                           u_interference=config.get("fig2", "u_bs"),
                           convention=_convention(config))
    grid = default_theta_grid(config.get("fig2", "theta_points"))
    for n in config.get("fig2", "atom_numbers"):
        fringe = fringe_sweep(make_noon(n, phi), grid, rconfig)
        files.append(_fringe_csv(directory, f"fringe_n{n}.csv", fringe))
        derived[f"n{n}"] = {
            "mean_diff_amplitude": float(np.max(fringe.mean_diff) - np.min(fringe.mean_diff)) / 2.0,
            "var_diff_amplitude": float(np.max(fringe.var_diff) - np.min(fringe.var_diff)) / 2.0,
        }
    return files, derived, []


def _run_fig3(config, directory):
    files, derived = [], {}
    n_atoms = config.get("model", "n_atoms")
    state = make_noon(n_atoms, config.get("fig3", "phi"))
    theta = config.get("fig3", "theta")
    for u_bs in config.get("fig3", "u_bs_values"):
        rconfig = RamseyConfig(kappa_bs=config.get("fig3", "kappa_bs"),
                               u_interference=u_bs, convention=_convention(config))
        record = ramsey_run(state, theta, rconfig)
        label = _label(u_bs)
        n = np.arange(n_atoms + 1)
        files.append(write_csv(directory / f"distribution_{label}.csv",
                               ["n_right", "probability"],
                               zip(n.tolist(), map(float, record.distribution))))
        even = record.distribution[0::2]
        odd = record.distribution[1::2]
        derived[label] = {
            "u_bs": u_bs,
            "min_even_probability": float(np.min(even)),
            "max_odd_probability": float(np.max(odd)),
        }
    return files, derived, []


def _run_fig4(config, directory):
    files, derived = [], {}
    phi = config.get("fig4", "phi")
    kappa_bs = config.get("fig4", "kappa_bs")
    ratios = config.get("fig4", "u_over_kappa_bs")
    grid = default_theta_grid(config.get("fig4", "theta_points"))
    for n in config.get("fig4", "atom_numbers"):
        columns, header = [], ["theta"]
        amplitudes = {}
        for ratio in ratios:
            rconfig = RamseyConfig(kappa_bs=kappa_bs, u_interference=ratio * kappa_bs,
                                   convention=_convention(config))
            fringe = fringe_sweep(make_noon(n, phi), grid, rconfig)
            header.append(f"parity_{_label(ratio)}")
            columns.append(fringe.parity)
            amplitudes[_label(ratio)] = float(np.max(fringe.parity) - np.min(fringe.parity)) / 2.0
        rows = zip(grid.tolist(), *[map(float, c) for c in columns])
        files.append(write_csv(directory / f"parity_n{n}.csv", header, rows))
        derived[f"n{n}"] = {"parity_amplitudes": amplitudes}
    return files, derived, []


def _nonideal_state(config: ExperimentConfig, section: str):
    integ = IntegratorConfig(step_tolerance=config.get(section, "step_tolerance"))
    run_ = ramp_run(
        config.get("model", "n_atoms"), config.get("model", "kappa"),
        config.get(section, "u_start"), config.get(section, "u_end"),
        config.get(section, "ramp_time"), config=integ, samples=2,
        convention=_convention(config),
    )
    return run_.final_state


def _run_fig7(config, directory):
    state = _nonideal_state(config, "fig7")
    files, derived = [], {}
    grid = default_theta_grid(config.get("fig7", "theta_points"))
    n_atoms = state.total_atoms
    for u_bs in config.get("fig7", "u_bs_values"):
        rconfig = RamseyConfig(kappa_bs=config.get("fig7", "kappa_bs"),
                               u_interference=u_bs, convention=_convention(config))
        fringe = fringe_sweep(state, grid, rconfig)
        means_left = (n_atoms + fringe.mean_diff) / 2.0
        label = _label(u_bs)
        rows = zip(grid.tolist(), map(float, means_left),
                   map(float, n_atoms - means_left))
        files.append(write_csv(directory / f"wells_{label}.csv",
                               ["theta", "mean_left", "mean_right"], rows))
        derived[label] = {
            "u_bs": u_bs,
            "mean_left_amplitude": float(np.max(means_left) - np.min(means_left)) / 2.0,
        }
    return files, derived, []


def _run_fig8(config, directory):
    state = _nonideal_state(config, "fig8")
    files, derived = [], {}
    grid = default_theta_grid(config.get("fig8", "theta_points"))
    for u_bs in config.get("fig8", "u_bs_values"):
        rconfig = RamseyConfig(kappa_bs=config.get("fig8", "kappa_bs"),
                               u_interference=u_bs, convention=_convention(config))
        fringe = fringe_sweep(state, grid, rconfig)
        label = _label(u_bs)
        rows = zip(grid.tolist(), map(float, fringe.parity))
        files.append(write_csv(directory / f"parity_{label}.csv",
                               ["theta", "parity"], rows))
        entry = {"u_bs": u_bs,
                 "parity_amplitude": float(np.max(fringe.parity) - np.min(fringe.parity)) / 2.0}
        if u_bs == 0.0:
            spectrum = coh.parity_fourier(fringe)
            entry["top_frequency_amplitude"] = float(np.abs(spectrum.fourier[-1]))
            entry["noise_floor"] = coh.fringe_noise_floor(fringe)
        derived[label] = entry
    return files, derived, []


_RUNNERS = {
    Scenario.GROUND_STATE: _run_ground_state,
    Scenario.RAMP: _run_ramp,
    Scenario.RAMSEY_SWEEP: _run_ramsey,
    Scenario.COHERENCE_ANALYSIS: _run_coherence,
    Scenario.ESTIMATE_U: _run_estimate_u,
    Scenario.FIG1: _run_fig1,
    Scenario.FIG2: _run_fig2,
    Scenario.FIG3: _run_fig3,
    Scenario.FIG4: _run_fig4,
    Scenario.FIG5: _run_fig5,
    Scenario.FIG6: _run_fig6,
    Scenario.FIG7: _run_fig7,
    Scenario.FIG8: _run_fig8,
}
