"""Mapping parity fringes to density-matrix coherences.

For the linear interference channel (zero interaction during the beam
splitter) the parity after the Ramsey protocol is a finite Fourier series in
the accumulated phase, and the component at angular frequency m is sourced
exclusively by the density-matrix off-diagonals between Fock states m atoms
apart:

    P(theta) = sum_n w[n,0] rho_{n,n}
             + sum_{m>=1} 2 Re( e^{i m theta'} sum_n w[n,m] rho_{n,n+m} )

with theta' the effective quadrature angle of the protocol and w[n,m] real
weights fixed by the beam splitter alone.  The weights are calibrated here
by brute force: each basis dyad |N-n,n><N-n-m,n+m| is pushed through the
channel and its parity response, a pure e^{i m theta} oscillation, is fitted.

A frequency-N component in a measured fringe therefore certifies coherence
between |N,0> and |0,N>, which no statistical mixture can produce.

For the quarter-period 50-50 splitter the calibrated table turns out to be
supported on the anti-diagonal m = N - 2n only (the channel conjugates the
parity into a reversal rotation), so the frequency-m fringe line reads out
exactly the single coherence rho_{(N-m)/2,(N+m)/2} between states m atoms
apart, and only frequencies with m congruent to N mod 2 can appear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AliasingError, CalibrationFailure, DecompositionViolation
from .fock import State, _components
from .ramsey import (
    FringeData,
    PhaseSign,
    RamseyConfig,
    beam_splitter_propagator,
    effective_quadrature_angle,
    fringe_sweep,
)

FIT_RESIDUAL_LIMIT = 1e-8
IMAG_RESIDUAL_LIMIT = 1e-10
RECONSTRUCTION_LIMIT = 1e-8


@dataclass(frozen=True)
class CoherenceSpectrum:
    """Per-m complex data: fringe Fourier amplitudes and/or coherence sums."""

    n_atoms: int
    fourier: np.ndarray | None = None     # amplitude of e^{i m theta}, m = 0..N
    coherence: np.ndarray | None = None   # S_m = sum_n rho_{n,n+m}, m = 0..N

    def __post_init__(self):
        for name in ("fourier", "coherence"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr, dtype=complex)
                if arr.shape != (self.n_atoms + 1,):
                    raise ValueError(f"{name} must have length n_atoms + 1")
                arr.flags.writeable = False
                object.__setattr__(self, name, arr)

    def merged(self, other: "CoherenceSpectrum") -> "CoherenceSpectrum":
        if other.n_atoms != self.n_atoms:
            raise ValueError("atom numbers differ")
        return CoherenceSpectrum(
            n_atoms=self.n_atoms,
            fourier=self.fourier if self.fourier is not None else other.fourier,
            coherence=self.coherence if self.coherence is not None else other.coherence,
        )

    def rows(self):
        """(m, fourier_re, fourier_im, coherence_re, coherence_im) per m."""
        if self.fourier is None or self.coherence is None:
            raise ValueError("spectrum is missing one side; merge both before export")
        for m in range(self.n_atoms + 1):
            yield (m, float(self.fourier[m].real), float(self.fourier[m].imag),
                   float(self.coherence[m].real), float(self.coherence[m].imag))

    @staticmethod
    def header() -> list:
        return ["m", "fourier_re", "fourier_im", "coherence_re", "coherence_im"]


def _check_fourier_grid(theta: np.ndarray, min_points: int) -> None:
    m = theta.size
    if m < min_points:
        raise AliasingError(
            f"{m} grid points cannot resolve all components; need >= {min_points}"
        )
    spacing = np.diff(theta)
    if spacing.size and (np.max(spacing) - np.min(spacing)) > 1e-12:
        raise ValueError("fringe grid must be uniform")
    if abs(m * spacing[0] - 2.0 * np.pi) > 1e-9:
        raise ValueError("fringe grid must cover exactly one period [0, 2 pi)")


def _dft(values: np.ndarray, theta: np.ndarray, orders: np.ndarray) -> np.ndarray:
    """Coefficients of e^{i m theta} on a uniform full-period grid."""
    return np.exp(-1j * np.outer(orders, theta)) @ values / theta.size


def parity_fourier(fringe: FringeData) -> CoherenceSpectrum:
    """Fourier amplitudes of the parity fringe at frequencies m = 0..N."""
    n_atoms = fringe.n_atoms
    _check_fourier_grid(fringe.theta, 2 * n_atoms + 2)
    orders = np.arange(n_atoms + 1)
    amps = _dft(fringe.parity, fringe.theta, orders)
    return CoherenceSpectrum(n_atoms=n_atoms, fourier=amps)


def parity_spectrum_bins(fringe: FringeData) -> np.ndarray:
    """One-sided amplitudes at every resolvable integer frequency 0..M//2."""
    _check_fourier_grid(fringe.theta, 2)
    orders = np.arange(fringe.theta.size // 2 + 1)
    return _dft(fringe.parity, fringe.theta, orders)


def fringe_noise_floor(fringe: FringeData) -> float:
    """Largest amplitude above frequency N, pure numerical noise for U = 0."""
    bins = parity_spectrum_bins(fringe)
    if bins.size <= fringe.n_atoms + 1:
        raise AliasingError("grid too coarse to expose any above-band frequencies")
    return float(np.max(np.abs(bins[fringe.n_atoms + 1:])))


def density_upper_diagonals(state: State) -> list:
    """rho_{n,n+m} arrays for m = 0..N, built from the ensemble decomposition."""
    comps = _components(state)
    n_atoms = comps[0][1].total_atoms
    diags = []
    for m in range(n_atoms + 1):
        d = np.zeros(n_atoms + 1 - m, dtype=complex)
        for w, s in comps:
            amp = s.amplitudes
            d += w * amp[: n_atoms + 1 - m] * np.conj(amp[m:])
        diags.append(d)
    return diags


def coherence_sums(state: State) -> CoherenceSpectrum:
    """S_m = sum_n rho_{n,n+m}; S_N detects all-atoms coherence."""
    diags = density_upper_diagonals(state)
    n_atoms = _components(state)[0][1].total_atoms
    sums = np.array([np.sum(d) for d in diags], dtype=complex)
    return CoherenceSpectrum(n_atoms=n_atoms, coherence=sums)


@dataclass(frozen=True)
class ParityWeights:
    """Real dyad weights w[n, m] of the linear interference channel."""

    n_atoms: int
    weights: np.ndarray            # (N+1, N+1), zero where n + m > N
    config: RamseyConfig
    grid_points: int
    max_fit_residual: float
    max_imag_residual: float

    def weight(self, n: int, m: int) -> float:
        return float(self.weights[n, m])


def calibrate_parity_weights(n_atoms: int,
                             config: RamseyConfig = RamseyConfig()) -> ParityWeights:
    """Fit the per-dyad parity response of the channel on a phase grid.

    Each dyad responds at the single frequency m; the fitted complex
    coefficient times i^m must be real.  Violations of either property raise
    :class:`CalibrationFailure` since they indicate a convention bug.
    """
    if n_atoms < 1:
        raise ValueError("n_atoms must be >= 1")
    if config.u_interference != 0.0:
        raise ValueError("parity weights are defined for the linear channel (u_interference = 0)")
    grid = 4 * (n_atoms + 1)
    theta = np.arange(grid) * (2.0 * np.pi / grid)
    prop = beam_splitter_propagator(n_atoms, config)
    signs = (-1.0) ** np.arange(n_atoms + 1)
    sign = -1.0 if config.phase_sign is PhaseSign.RIGHT_WELL else 1.0

    # responses[t, i, j] = <out_i(theta_t)| parity |out_j(theta_t)>; the
    # (n+m, n) entry is the parity response of the dyad |n><n+m| channel image
    cols = np.empty((grid, n_atoms + 1, n_atoms + 1), dtype=complex)
    phases = np.exp(sign * 1j * np.outer(theta, np.arange(n_atoms + 1)))
    for t in range(grid):
        cols[t] = prop * phases[t][None, :]
    responses = np.einsum("tki,k,tkj->tij", cols.conj(), signs, cols)

    # the dyad oscillates at +m for the default sign, -m for the flipped one
    freq_sign = 1.0 if config.phase_sign is PhaseSign.RIGHT_WELL else -1.0
    weights = np.zeros((n_atoms + 1, n_atoms + 1))
    worst_fit = 0.0
    worst_imag = 0.0
    for m in range(n_atoms + 1):
        coef = np.tensordot(np.exp(-1j * freq_sign * m * theta), responses, axes=(0, 0)) / grid
        oscillation = np.exp(1j * freq_sign * m * theta)
        for n in range(n_atoms + 1 - m):
            c = coef[n + m, n]
            residual = float(np.max(np.abs(responses[:, n + m, n] - c * oscillation)))
            worst_fit = max(worst_fit, residual)
            if residual > FIT_RESIDUAL_LIMIT:
                raise CalibrationFailure(
                    f"dyad (n={n}, m={m}) response is not a pure frequency-{m} "
                    f"oscillation (residual {residual:.3e})"
                )
            value = (1j**m) * c
            worst_imag = max(worst_imag, abs(float(value.imag)))
            if abs(value.imag) > IMAG_RESIDUAL_LIMIT:
                raise CalibrationFailure(
                    f"weight (n={n}, m={m}) is not real: {value!r}"
                )
            weights[n, m] = float(value.real)
    return ParityWeights(n_atoms=n_atoms, weights=weights, config=config,
                         grid_points=grid, max_fit_residual=worst_fit,
                         max_imag_residual=worst_imag)


def reconstruct_parity(weights: ParityWeights, state: State, theta) -> np.ndarray:
    """Predict the parity fringe from coherences and calibrated weights."""
    theta = np.asarray(theta, dtype=float)
    diags = density_upper_diagonals(state)
    if len(diags) != weights.n_atoms + 1:
        raise ValueError("state and weights have different atom numbers")
    theta_eff = np.array([effective_quadrature_angle(t, weights.config.phase_sign)
                          for t in theta])
    out = np.full(theta.shape, float(np.sum(weights.weights[:, 0] * diags[0].real)))
    for m in range(1, weights.n_atoms + 1):
        s = np.sum(weights.weights[: weights.n_atoms + 1 - m, m] * diags[m])
        out = out + 2.0 * np.real(np.exp(1j * m * theta_eff) * s)
    return out


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of checking reconstruction against simulation."""

    n_atoms: int
    grid_points: int
    max_error: float
    threshold: float
    max_fit_residual: float
    max_imag_residual: float

    @property
    def passed(self) -> bool:
        return self.max_error < self.threshold


def verify_decomposition(state: State, config: RamseyConfig = RamseyConfig(),
                         theta_points: int | None = None) -> DecompositionReport:
    """Simulate the fringe, reconstruct it from coherences, compare pointwise.

    Raises :class:`DecompositionViolation` when the maximum error exceeds
    the reconstruction limit, which would signal a convention bug.
    """
    if config.u_interference != 0.0:
        raise ValueError("decomposition only holds for the linear channel (u_interference = 0)")
    n_atoms = _components(state)[0][1].total_atoms
    points = theta_points if theta_points is not None else max(4 * (n_atoms + 1), 64)
    theta = np.arange(points) * (2.0 * np.pi / points)
    fringe = fringe_sweep(state, theta, config)
    weights = calibrate_parity_weights(n_atoms, config)
    rebuilt = reconstruct_parity(weights, state, theta)
    max_error = float(np.max(np.abs(rebuilt - fringe.parity)))
    report = DecompositionReport(
        n_atoms=n_atoms, grid_points=points, max_error=max_error,
        threshold=RECONSTRUCTION_LIMIT,
        max_fit_residual=weights.max_fit_residual,
        max_imag_residual=weights.max_imag_residual,
    )
    if not report.passed:
        raise DecompositionViolation(report)
    return report
