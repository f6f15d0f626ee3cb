"""Acceptance suite: one test per release criterion, each printing a verdict.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the per-criterion
lines.  Criterion 3 is expected to fail; see notes in the repository docs:
the fidelity-versus-ramp-time curve is genuinely non-monotonic at the fast
end (cross-validated with two independent integrators), so its strict
pairwise ordering cannot hold as stated.
"""

import time

import numpy as np
import pytest

from doublewell import (
    InteractionConvention,
    MixedEnsemble,
    RamseyConfig,
    SystemParams,
    ParamSchedule,
    basis_state,
    calibrate_parity_weights,
    default_theta_grid,
    diff_variance,
    eigen_evolve,
    fidelity_vs_ramp,
    fringe_noise_floor,
    fringe_sweep,
    ground_state,
    interaction_strength,
    make_mixture,
    make_noon,
    parity_fourier,
    parity_spectrum_bins,
    quadrature_moment,
    ramp_run,
    ramsey_run,
    real_evolve,
    verify_decomposition,
    TrapSpec,
)
from doublewell.config import Scenario, load_config
from doublewell.runners import run as run_scenario
from conftest import random_ensemble, random_pure_state

FULL = InteractionConvention.FULL
BS10 = RamseyConfig(kappa_bs=10.0)


def report(number: int, name: str, ok: bool, detail: str) -> bool:
    verdict = "PASS" if ok else "FAIL"
    print(f"[criterion {number:02d}] {verdict} {name}: {detail}")
    return ok


def test_criterion_01_ground_state_variances(tmp_path):
    variances = {}
    for u_over_kappa in (0.0, -0.1, -0.5):
        state = ground_state(SystemParams.symmetric(10.0, 10.0 * u_over_kappa, FULL), 20)
        variances[u_over_kappa] = diff_variance(state)
    ok = (
        abs(variances[-0.1] - 293.0) <= 0.03 * 293.0
        and abs(variances[-0.5] - 396.0) <= 0.03 * 396.0
        and abs(variances[0.0] - 20.0) < 1e-2
    )
    # the u = 0 run must also emit the note flagging the quoted value of 12
    result = run_scenario(load_config(Scenario.GROUND_STATE, None, {
        ("run", "output_dir"): str(tmp_path),
        ("model", "convention"): "FULL",
        ("ground", "u_values"): "0",
    }))
    note_ok = any("12" in note and "binomial" in note for note in result.summary["notes"])
    detail = (f"FULL convention: var(0)={variances[0.0]:.2f} (analytic 20, note "
              f"emitted: {note_ok}), var(-0.1)={variances[-0.1]:.1f} (293 +-3%), "
              f"var(-0.5)={variances[-0.5]:.1f} (396 +-3%)")
    assert report(1, "ground-state variances", ok and note_ok, detail)


def test_criterion_02_ramp_variances():
    results = {}
    runtimes = {}
    for ramp_time, target in ((0.5, 283.0), (4.0, 371.0)):
        started = time.perf_counter()
        trajectory = ramp_run(20, 10.0, 1.0, -3.0, ramp_time, samples=2,
                              convention=FULL)
        runtimes[ramp_time] = time.perf_counter() - started
        results[ramp_time] = diff_variance(trajectory.final_state)
    ok = (
        abs(results[0.5] - 283.0) <= 5.0
        and abs(results[4.0] - 371.0) <= 5.0
        and max(runtimes.values()) < 30.0
    )
    detail = (f"var(0.5s)={results[0.5]:.1f} (283 +-5), var(4s)={results[4.0]:.1f} "
              f"(371 +-5), runtimes {runtimes[0.5]:.1f}s/{runtimes[4.0]:.1f}s (<30s)")
    assert report(2, "ramp-generated variances", ok, detail)


def test_criterion_03_fidelity_ordering():
    scan = fidelity_vs_ramp(20, 10.0, 1.0, -3.0, (0.25, 0.5, 1.0, 2.0, 4.0),
                            convention=FULL)
    fids = list(scan.fidelities)
    bounded = all(f <= scan.reference_fidelity + 1e-12 for f in fids)
    monotone = all(a <= b + 1e-12 for a, b in zip(fids, fids[1:]))
    detail = (f"fidelities {[round(f, 5) for f in fids]} at {list(scan.ramp_times)}s, "
              f"reference {scan.reference_fidelity:.5f}, bounded={bounded}, "
              f"non-decreasing={monotone}")
    report(3, "fidelity ordering", bounded and monotone, detail)
    assert bounded, detail
    assert monotone, (
        "fidelity is not non-decreasing over {0.25, 0.5, 1, 2, 4} s: "
        f"{[round(f, 5) for f in fids]}. The 0.25 s ramp lands on a "
        "post-quench oscillation maximum (value cross-validated with an "
        "independent midpoint-eigendecomposition propagator), so the strict "
        "ordering cannot hold for this ramp-time set; see docs/ledger."
    )


def test_criterion_04_number_distribution_interference():
    state = make_noon(20, 0.0)
    contrasts = {}
    max_odd = {}
    for u_over_kappa in (0.0, -0.01, -0.025):
        config = RamseyConfig(kappa_bs=10.0, u_interference=10.0 * u_over_kappa,
                              convention=FULL)
        dist = ramsey_run(state, np.pi / 2, config).distribution
        max_odd[u_over_kappa] = float(np.max(dist[1::2]))
        contrasts[u_over_kappa] = float(np.min(dist[0::2])) / max(max_odd[u_over_kappa], 1e-300)
    ok = (
        max_odd[0.0] < 1e-10
        and max_odd[-0.01] > 1e-10 and max_odd[-0.025] > 1e-10
        and contrasts[0.0] > contrasts[-0.01] > contrasts[-0.025]
    )
    detail = (f"max odd p: {max_odd[0.0]:.1e} (U=0, <1e-10), "
              f"{max_odd[-0.01]:.2e}, {max_odd[-0.025]:.2e}; contrast "
              f"{contrasts[0.0]:.2e} > {contrasts[-0.01]:.2e} > {contrasts[-0.025]:.2e}")
    assert report(4, "even/odd interference pattern", ok, detail)


def test_criterion_05_quadrature_oracles():
    thetas = default_theta_grid(512)
    phi = 0.0
    one = make_noon(1, phi)
    err1 = max(abs(quadrature_moment(one, t, 1) - np.cos(t - phi)) for t in thetas)
    two = make_noon(2, phi)
    err2_mean = max(abs(quadrature_moment(two, t, 1)) for t in thetas)
    err2_var = max(
        abs((quadrature_moment(two, t, 2) - quadrature_moment(two, t, 1) ** 2)
            - (2.0 + 2.0 * np.cos(2.0 * (t - phi)))) for t in thetas)
    ok = err1 < 1e-8 and err2_mean < 1e-10 and err2_var < 1e-8
    detail = (f"N=1 mean vs cos: {err1:.1e} (<1e-8); N=2 mean: {err2_mean:.1e} "
              f"(<1e-10); N=2 variance vs 2+2cos: {err2_var:.1e} (<1e-8)")
    assert report(5, "quadrature fringe oracles", ok, detail)


def test_criterion_06_parity_fringe_frequency():
    shares = {}
    for n_atoms in (10, 20):
        fringe = fringe_sweep(make_noon(n_atoms, 0.0), default_theta_grid(512), BS10)
        bins = parity_spectrum_bins(fringe)
        power = np.abs(bins[1:]) ** 2
        shares[n_atoms] = float(power[n_atoms - 1] / np.sum(power))
    flat = fringe_sweep(make_mixture(20), default_theta_grid(512), BS10)
    mixture_std = float(np.std(flat.parity))
    ok = min(shares.values()) > 0.999 and mixture_std < 1e-10
    detail = (f"non-DC power at m=N: {shares[10]:.6f} (N=10), {shares[20]:.6f} "
              f"(N=20) (>0.999); mixture parity std {mixture_std:.1e} (<1e-10)")
    assert report(6, "parity fringe frequency", ok, detail)


def test_criterion_07_parity_reconstruction(rng):
    worst_error = 0.0
    worst_imag = 0.0
    cases = []
    for n_atoms in (2, 5, 8, 12):
        cases.append(random_pure_state(rng, n_atoms))
        cases.append(random_ensemble(rng, n_atoms))
        weights = calibrate_parity_weights(n_atoms, BS10)
        worst_imag = max(worst_imag, weights.max_imag_residual)
    for state in cases:
        rep = verify_decomposition(state, BS10)
        worst_error = max(worst_error, rep.max_error)
    ok = worst_error < 1e-8 and worst_imag < 1e-10
    detail = (f"max reconstruction error {worst_error:.2e} (<1e-8) over "
              f"{len(cases)} states, weight imaginary residual {worst_imag:.1e} "
              f"(<1e-10)")
    assert report(7, "fringe-to-coherence reconstruction", ok, detail)


def test_criterion_08_nonideal_coherence_detection():
    trajectory = ramp_run(20, 10.0, 1.0, -1.0, 4.0, samples=2, convention=FULL)
    state = trajectory.final_state
    fringe = fringe_sweep(state, default_theta_grid(512), BS10)
    amplitude = float(np.abs(parity_fourier(fringe).fourier[20]))
    floor = max(fringe_noise_floor(fringe), 1e-300)

    probabilities = state.probabilities()
    keep = probabilities > 1e-16
    weights = probabilities[keep] / probabilities[keep].sum()
    mixture = MixedEnsemble(tuple(
        (float(w), basis_state(20, int(n)))
        for w, n in zip(weights, np.flatnonzero(keep))))
    flat_fringe = fringe_sweep(mixture, default_theta_grid(512), BS10)
    flat_amplitude = float(np.abs(parity_fourier(flat_fringe).fourier[20]))

    ok = amplitude > 10.0 * floor and flat_amplitude < 1e-12
    detail = (f"ramp state |F_20|={amplitude:.3e} vs noise floor {floor:.1e} "
              f"(>10x); same-distribution mixture |F_20|={flat_amplitude:.1e} "
              f"(<1e-12)")
    assert report(8, "non-ideal state coherence detection", ok, detail)


def test_criterion_09_physical_estimate():
    values = {}
    for a0, target in ((2000.0, 30.0), (-200.0, -3.0)):
        spec = TrapSpec.from_lab(85.0, (1000.0, 1000.0, 100.0), "angular", a0)
        values[a0] = interaction_strength(spec)
    ok = (abs(values[2000.0] - 30.0) <= 3.0
          and abs(values[-200.0] + 3.0) <= 0.3)
    detail = (f"U(2000 a0)={values[2000.0]:.2f} rad/s (30 +-10%), "
              f"U(-200 a0)={values[-200.0]:.3f} rad/s (-3 +-10%)")
    assert report(9, "interaction-strength estimate", ok, detail)


def test_criterion_10_numerical_hygiene():
    # every propagation in this suite runs through the same guard that raises
    # beyond 1e-9 norm drift, so completing criteria 1-8 already audits them;
    # spot-check representative drifts and the eigendecomposition oracle here
    drift_ramp = ramp_run(20, 10.0, 1.0, -3.0, 0.5, samples=2,
                          convention=FULL).norm_drift
    params = SystemParams.symmetric(10.0, -3.0, FULL)
    state = make_noon(30, 0.2)
    schedule = ParamSchedule.constant(params, 10.0)
    numeric, info = real_evolve(state, schedule, with_info=True)
    exact = eigen_evolve(state, params, 10.0)
    overlap = abs(np.vdot(numeric.amplitudes, exact.amplitudes))
    ok = drift_ramp < 1e-9 and info.norm_drift < 1e-9 and overlap > 1.0 - 1e-9
    detail = (f"ramp drift {drift_ramp:.1e}, constant-H drift {info.norm_drift:.1e} "
              f"(<1e-9); oracle overlap deficit {max(0.0, 1.0 - overlap):.1e} (<1e-9)")
    assert report(10, "numerical hygiene", ok, detail)
