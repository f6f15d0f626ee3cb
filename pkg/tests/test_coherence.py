"""Parity-fringe spectra, coherence sums, weight calibration, reconstruction."""

import numpy as np
import pytest

from doublewell import (
    AliasingError,
    FockVector,
    MixedEnsemble,
    RamseyConfig,
    basis_state,
    beam_splitter_propagator,
    calibrate_parity_weights,
    coherence_sums,
    default_theta_grid,
    fringe_noise_floor,
    fringe_sweep,
    make_mixture,
    make_noon,
    parity_fourier,
    ramsey_run,
    reconstruct_parity,
    verify_decomposition,
)
from conftest import random_ensemble, random_pure_state
from test_fock import binomial_state

BS10 = RamseyConfig(kappa_bs=10.0)


# ------------------------------------------------------------- coherence sums

def test_cat_state_coherence_sums():
    for phi in (0.0, 1.3):
        spec = coherence_sums(make_noon(12, phi))
        assert spec.coherence[12] == pytest.approx(np.exp(-1j * phi) / 2.0, abs=1e-12)
        assert spec.coherence[0] == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(spec.coherence[1:12])) < 1e-12


def test_mixture_has_no_offdiagonal_coherence():
    spec = coherence_sums(make_mixture(10))
    assert np.max(np.abs(spec.coherence[1:])) < 1e-15


def test_binomial_state_has_full_first_order_coherence():
    spec = coherence_sums(binomial_state(10))
    assert np.all(spec.coherence.real > 0.0)
    assert np.max(np.abs(spec.coherence.imag)) < 1e-15


# ------------------------------------------------------------ fringe spectrum

def test_cat_fringe_spectrum_is_single_frequency():
    n_atoms = 20
    fringe = fringe_sweep(make_noon(n_atoms, 0.0), default_theta_grid(512), BS10)
    spec = parity_fourier(fringe)
    amps = np.abs(spec.fourier)
    assert amps[n_atoms] == pytest.approx(0.5, abs=1e-12)
    assert np.max(amps[:n_atoms]) < 1e-12
    assert fringe_noise_floor(fringe) < 1e-12


def test_mixture_fringe_spectrum_is_empty():
    fringe = fringe_sweep(make_mixture(20), default_theta_grid(512), BS10)
    amps = np.abs(parity_fourier(fringe).fourier)
    assert np.max(amps[1:]) < 1e-12


def test_fourier_grid_validation():
    fringe = fringe_sweep(make_noon(8, 0.0), default_theta_grid(12), BS10)
    with pytest.raises(AliasingError):
        parity_fourier(fringe)   # needs >= 2N+2 = 18 points
    uneven = default_theta_grid(8).copy()
    uneven[3] += 0.05
    bad = fringe_sweep(make_noon(2, 0.0), uneven, BS10)
    with pytest.raises(ValueError):
        parity_fourier(bad)


# ------------------------------------------------------------------ calibration

def test_weights_match_propagator_identity():
    """Independent oracle: w[n, m] = Re(i^m (P+ Pi P)[n+m, n])."""
    for n_atoms in (1, 2, 5, 9):
        weights = calibrate_parity_weights(n_atoms, BS10)
        prop = beam_splitter_propagator(n_atoms, BS10)
        w_matrix = prop.conj().T @ np.diag((-1.0) ** np.arange(n_atoms + 1)) @ prop
        for m in range(n_atoms + 1):
            for n in range(n_atoms + 1 - m):
                expected = (1j**m) * w_matrix[n + m, n]
                assert abs(expected.imag) < 1e-12
                assert weights.weight(n, m) == pytest.approx(expected.real, abs=1e-12)
                if m != n_atoms - 2 * n:
                    # the quarter-period splitter supports only m = N - 2n
                    assert abs(weights.weight(n, m)) < 1e-12
        assert weights.max_imag_residual < 1e-10
        assert weights.max_fit_residual < 1e-12


def test_single_atom_weights_reproduce_two_level_fringe():
    weights = calibrate_parity_weights(1, BS10)
    assert weights.weight(0, 0) == pytest.approx(0.0, abs=1e-12)
    assert weights.weight(1, 0) == pytest.approx(0.0, abs=1e-12)
    assert weights.weight(0, 1) == pytest.approx(1.0, abs=1e-12)
    thetas = default_theta_grid(64)
    rebuilt = reconstruct_parity(weights, make_noon(1, 0.0), thetas)
    simulated = np.array([ramsey_run(make_noon(1, 0.0), t, BS10).parity for t in thetas])
    assert np.allclose(rebuilt, simulated, atol=1e-10)
    assert np.allclose(rebuilt, np.sin(thetas), atol=1e-10)


def test_highest_dyad_oscillates_at_frequency_n():
    n_atoms = 20
    prop = beam_splitter_propagator(n_atoms, BS10)
    signs = (-1.0) ** np.arange(n_atoms + 1)
    grid = default_theta_grid(4 * (n_atoms + 1))
    n_idx = np.arange(n_atoms + 1)
    response = []
    for theta in grid:
        out0 = prop @ (np.eye(n_atoms + 1)[0] * np.exp(-1j * n_idx * theta)[0])
        out_n = prop @ (np.eye(n_atoms + 1)[n_atoms] * np.exp(-1j * n_idx * theta)[n_atoms])
        response.append(np.sum(np.conj(out_n) * signs * out0))
    response = np.asarray(response)
    bins = np.array([np.sum(response * np.exp(-1j * m * grid)) / grid.size
                     for m in range(grid.size // 2)])
    assert abs(bins[n_atoms]) > 0.1
    others = np.delete(np.abs(bins), n_atoms)
    assert np.max(others) < 1e-10


def test_diagonal_weights_reproduce_diagonal_state_parity(rng):
    n_atoms = 8
    weights = calibrate_parity_weights(n_atoms, BS10)
    probs = rng.uniform(0.05, 1.0, size=n_atoms + 1)
    probs /= probs.sum()
    ens = MixedEnsemble(tuple(
        (float(p), basis_state(n_atoms, n)) for n, p in enumerate(probs)))
    predicted = float(np.sum(weights.weights[:, 0] * probs))
    assert ramsey_run(ens, 0.63, BS10).parity == pytest.approx(predicted, abs=1e-12)


def test_calibration_requires_linear_channel():
    with pytest.raises(ValueError):
        calibrate_parity_weights(4, RamseyConfig(kappa_bs=10.0, u_interference=-0.1))


# --------------------------------------------------------------- reconstruction

def test_decomposition_for_cat_and_random_states(rng):
    report = verify_decomposition(make_noon(8, 0.0), BS10)
    assert report.passed and report.max_error < 1e-8
    report = verify_decomposition(random_pure_state(rng, 6), BS10)
    assert report.max_error < 1e-8


def test_decomposition_for_mixture_is_flat():
    thetas = default_theta_grid(64)
    weights = calibrate_parity_weights(10, BS10)
    rebuilt = reconstruct_parity(weights, make_mixture(10), thetas)
    assert float(np.ptp(rebuilt)) < 1e-12
    simulated = fringe_sweep(make_mixture(10), thetas, BS10).parity
    assert np.allclose(rebuilt, simulated, atol=1e-10)
    assert verify_decomposition(make_mixture(10), BS10).passed


def test_decomposition_for_random_ensembles(rng):
    for n_atoms in (4, 9, 12):
        report = verify_decomposition(random_ensemble(rng, n_atoms), BS10)
        assert report.max_error < 1e-8


def test_decomposition_rejects_nonlinear_channel(rng):
    with pytest.raises(ValueError):
        verify_decomposition(random_pure_state(rng, 4),
                             RamseyConfig(kappa_bs=10.0, u_interference=0.3))


def test_top_frequency_amplitude_is_linear_in_cat_coherence():
    n_atoms, grid = 10, default_theta_grid(128)
    pure = fringe_sweep(make_noon(n_atoms, 0.0), grid, BS10)
    amp_pure = np.abs(parity_fourier(pure).fourier[n_atoms])
    for blend in (0.5, 0.25):
        ens = MixedEnsemble((
            (blend, make_noon(n_atoms, 0.0)),
            ((1 - blend) / 2, basis_state(n_atoms, 0)),
            ((1 - blend) / 2, basis_state(n_atoms, n_atoms)),
        ))
        assert np.abs(coherence_sums(ens).coherence[n_atoms]) == pytest.approx(
            blend / 2.0, abs=1e-12)
        fringe = fringe_sweep(ens, grid, BS10)
        amp = np.abs(parity_fourier(fringe).fourier[n_atoms])
        assert amp == pytest.approx(blend * amp_pure, abs=1e-8)


def test_spectrum_detects_coherence_soundly(rng):
    """Zero coherences produce no fringe line; live top coherence produces one.

    The frequency-m line is sourced by rho_{(N-m)/2,(N+m)/2} alone, so it
    vanishes whenever S_m = 0 (structurally) and in particular for every m
    with the wrong parity relative to N.
    """
    n_atoms = 10
    grid = default_theta_grid(64)
    # support on every third occupation: rho_{n,n+m} = 0 unless 3 | m
    amp = np.zeros(n_atoms + 1, dtype=complex)
    amp[::3] = rng.normal(size=4) + 1j * rng.normal(size=4)
    state = FockVector(amp / np.linalg.norm(amp))
    sums = coherence_sums(state).coherence
    fringe = fringe_sweep(state, grid, BS10)
    amps = np.abs(parity_fourier(fringe).fourier)
    for m in range(1, n_atoms + 1):
        if m % 3 != 0:
            assert abs(sums[m]) < 1e-12
            assert amps[m] < 1e-10
        if m % 2 == 1:
            # odd frequencies cannot appear for even N at all
            assert amps[m] < 1e-10
    # m = 6 reads rho_{2,8}: zero for this support even though S_6 is not
    assert abs(sums[6]) > 1e-3
    assert amps[6] < 1e-10

    # completeness where it matters: S_N = rho_{0,N} nonzero gives a line
    full = rng.normal(size=n_atoms + 1) + 1j * rng.normal(size=n_atoms + 1)
    full_state = FockVector(full / np.linalg.norm(full))
    full_fringe = fringe_sweep(full_state, grid, BS10)
    full_amps = np.abs(parity_fourier(full_fringe).fourier)
    top = np.abs(coherence_sums(full_state).coherence[n_atoms])
    assert top > 1e-3
    assert full_amps[n_atoms] > 10 * max(fringe_noise_floor(full_fringe), 1e-15)


def test_spectrum_rows_need_both_sides():
    fringe = fringe_sweep(make_noon(4, 0.0), default_theta_grid(32), BS10)
    spec = parity_fourier(fringe)
    with pytest.raises(ValueError):
        list(spec.rows())
    merged = spec.merged(coherence_sums(make_noon(4, 0.0)))
    rows = list(merged.rows())
    assert len(rows) == 5 and len(rows[0]) == 5
