"""Virtual Ramsey interference experiment on a two-mode Fock state.

The protocol has two stages.  A phase stage imprints the accumulated phase
theta on the number basis (c_n -> c_n e^{-i n theta} for the default sign,
equivalent to holding an energy imbalance dE for a time dt with
dE dt = theta).  A beam-splitter stage then switches on tunneling kappa_bs
for a quarter Josephson period pi/(4 kappa_bs), after which the atom number
in each well is counted.

With zero interaction during the beam splitter, the protocol measures the
two-mode quadrature exactly: every moment of the output number difference
N_L - N_R equals the corresponding moment of X at the effective angle

    theta' = theta - pi/2        (default phase sign)

which :func:`effective_quadrature_angle` exposes and the test-suite checks
against :func:`doublewell.fock.quadrature_moment`.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .fock import (
    FockVector,
    InteractionConvention,
    MixedEnsemble,
    State,
    SystemParams,
    _components,
    hamiltonian_matrix,
    number_difference,
)


class PhaseSign(enum.Enum):
    """Which well accrues the accumulated phase."""

    RIGHT_WELL = "RIGHT_WELL"   # c_n -> c_n e^{-i n theta}
    LEFT_WELL = "LEFT_WELL"     # c_n -> c_n e^{+i n theta} (up to a global phase)


@dataclass(frozen=True)
class RamseyConfig:
    """Beam-splitter stage parameters.

    ``bs_duration`` defaults to pi/(4 kappa_bs), the 50-50 splitter.
    ``u_interference`` is an absolute rate in rad/s; quote it as
    (U/kappa) * kappa_bs when thinking in ratio terms.  The interaction
    convention only matters when u_interference is nonzero.
    """

    kappa_bs: float = 10.0
    u_interference: float = 0.0
    bs_duration: float | None = None
    phase_sign: PhaseSign = PhaseSign.RIGHT_WELL
    convention: InteractionConvention = InteractionConvention.HALF

    def __post_init__(self):
        if self.kappa_bs <= 0:
            raise ValueError("kappa_bs must be > 0")
        if self.bs_duration is not None and self.bs_duration <= 0:
            raise ValueError("bs_duration must be > 0")

    @property
    def duration(self) -> float:
        if self.bs_duration is not None:
            return self.bs_duration
        return np.pi / (4.0 * self.kappa_bs)


def effective_quadrature_angle(theta: float, phase_sign: PhaseSign = PhaseSign.RIGHT_WELL) -> float:
    """Operator angle measured by the protocol for accumulated phase theta."""
    if phase_sign is PhaseSign.RIGHT_WELL:
        return theta - np.pi / 2.0
    return -theta - np.pi / 2.0


def phase_stage(state: FockVector, theta: float,
                phase_sign: PhaseSign = PhaseSign.RIGHT_WELL) -> FockVector:
    """Diagonal phase imprint; moduli (and hence all number statistics) unchanged."""
    n = np.arange(state.total_atoms + 1)
    sign = -1.0 if phase_sign is PhaseSign.RIGHT_WELL else 1.0
    return FockVector(state.amplitudes * np.exp(sign * 1j * n * theta))


@functools.lru_cache(maxsize=128)
def beam_splitter_propagator(n_atoms: int, config: RamseyConfig) -> np.ndarray:
    """Unitary for the tunneling stage, exact via eigendecomposition."""
    params = SystemParams.symmetric(config.kappa_bs, config.u_interference,
                                    config.convention)
    h = hamiltonian_matrix(params, n_atoms)
    w, v = np.linalg.eigh(h)
    u = v @ (np.exp(-1j * w * config.duration)[:, None] * v.conj().T)
    u.flags.writeable = False
    return u


def _distribution_stats(dist: np.ndarray, n_atoms: int) -> tuple:
    d = number_difference(n_atoms)
    mean = float(np.sum(d * dist))
    var = float(np.sum(d**2 * dist) - mean**2)
    par = float(np.sum((-1.0) ** np.arange(n_atoms + 1) * dist))
    return mean, var, par


@dataclass(frozen=True)
class RamseyRecord:
    """Measurement statistics of one protocol run at a single theta."""

    theta: float
    n_atoms: int
    distribution: np.ndarray
    mean_diff: float
    var_diff: float
    parity: float
    output_state: FockVector | None   # None when the input was an ensemble

    def moment(self, k: int) -> float:
        """k-th moment of the output number difference."""
        if k < 0:
            raise ValueError("moment order k must be >= 0")
        d = number_difference(self.n_atoms)
        return float(np.sum(d**k * self.distribution))


def ramsey_run(state: State, theta: float,
               config: RamseyConfig = RamseyConfig()) -> RamseyRecord:
    """Phase stage followed by beam splitter; returns the output statistics."""
    n_atoms = _components(state)[0][1].total_atoms
    prop = beam_splitter_propagator(n_atoms, config)
    dist = np.zeros(n_atoms + 1)
    out_state = None
    for w, s in _components(state):
        phased = phase_stage(s, theta, config.phase_sign)
        raw = prop @ phased.amplitudes
        raw /= np.linalg.norm(raw)
        dist += w * np.abs(raw) ** 2
        if isinstance(state, FockVector):
            out_state = FockVector(raw)
    mean, var, par = _distribution_stats(dist, n_atoms)
    return RamseyRecord(theta=float(theta), n_atoms=n_atoms, distribution=dist,
                        mean_diff=mean, var_diff=var, parity=par,
                        output_state=out_state)


def default_theta_grid(points: int = 512) -> np.ndarray:
    """Uniform accumulated-phase grid over [0, 2 pi)."""
    if points < 1:
        raise ValueError("points must be >= 1")
    return np.arange(points) * (2.0 * np.pi / points)


@dataclass(frozen=True)
class FringeData:
    """Protocol statistics sampled over an accumulated-phase grid.

    ``moments[:, k]`` holds the k-th moment of the output number difference,
    so mean_diff is moments[:, 1].  Every stored distribution sums to one and
    reproduces the stored parity by construction.
    """

    theta: np.ndarray
    distributions: np.ndarray        # shape (grid, N+1)
    moments: np.ndarray              # shape (grid, max_moment+1)
    parity: np.ndarray
    n_atoms: int

    @property
    def mean_diff(self) -> np.ndarray:
        return self.moments[:, 1]

    @property
    def var_diff(self) -> np.ndarray:
        return self.moments[:, 2] - self.moments[:, 1] ** 2

    @property
    def max_moment(self) -> int:
        return self.moments.shape[1] - 1

    def rows(self, include_distribution: bool = False):
        for i in range(self.theta.size):
            row = [float(self.theta[i]), float(self.mean_diff[i]),
                   float(self.var_diff[i]), float(self.parity[i])]
            if include_distribution:
                row.extend(float(p) for p in self.distributions[i])
            yield tuple(row)

    def header(self, include_distribution: bool = False) -> list:
        cols = ["theta", "mean_diff", "var_diff", "parity"]
        if include_distribution:
            cols.extend(f"p{n}" for n in range(self.n_atoms + 1))
        return cols


def fringe_sweep(state: State, theta_grid=None,
                 config: RamseyConfig = RamseyConfig(),
                 max_moment: int = 2) -> FringeData:
    """Run the protocol over a phase grid and collect fringe statistics."""
    if theta_grid is None:
        theta_grid = default_theta_grid()
    theta_grid = np.asarray(theta_grid, dtype=float)
    if theta_grid.size == 0:
        raise ValueError("theta_grid must be nonempty")
    if max_moment < 2:
        raise ValueError("max_moment must be >= 2 (variance is always recorded)")
    n_atoms = _components(state)[0][1].total_atoms
    d = number_difference(n_atoms)
    powers = np.vstack([d**k for k in range(max_moment + 1)])
    distributions = np.empty((theta_grid.size, n_atoms + 1))
    parities = np.empty(theta_grid.size)
    moments = np.empty((theta_grid.size, max_moment + 1))
    for i, theta in enumerate(theta_grid):
        rec = ramsey_run(state, float(theta), config)
        distributions[i] = rec.distribution
        parities[i] = rec.parity
        moments[i] = powers @ rec.distribution
    return FringeData(theta=theta_grid, distributions=distributions,
                      moments=moments, parity=parities, n_atoms=n_atoms)
