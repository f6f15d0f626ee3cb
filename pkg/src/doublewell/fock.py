"""Fixed-total-number Fock representation of a two-mode condensate.

A pure state of N atoms distributed over a left and a right well is stored as
the N+1 complex amplitudes c_n of the number states |N-n, n>, with n counting
atoms in the *right* well:

    |psi> = sum_n c_n |N-n, n>,       sum_n |c_n|^2 = 1.

The two-mode Hamiltonian (units of rad/s, hbar divided out) is

    H = E_L a_L^+ a_L + E_R a_R^+ a_R
        + chi_L a_L^+ a_L^+ a_L a_L + chi_R a_R^+ a_R^+ a_R a_R
        - kappa (a_L^+ a_R + a_R^+ a_L),

which over the number basis is a real symmetric tridiagonal matrix: diagonal
E_L(N-n) + E_R n + chi_L (N-n)(N-n-1) + chi_R n(n-1), and coupling between
n and n+1 equal to -kappa sqrt((n+1)(N-n)).

The on-site prefactor chi is U/2 or U depending on the interaction
convention in use (see :class:`InteractionConvention`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-9
WEIGHT_TOL = 1e-12


class InteractionConvention(enum.Enum):
    """Prefactor convention for the on-site interaction term.

    HALF uses chi = U/2 (the (hbar U / 2) a+ a+ a a form), FULL uses chi = U.
    Both appear in the double-well literature; HALF is the package default,
    while the bundled experiment presets pin FULL because that choice
    reproduces the reference cat-state variances (see README).
    """

    HALF = "HALF"
    FULL = "FULL"

    @property
    def chi_factor(self) -> float:
        return 0.5 if self is InteractionConvention.HALF else 1.0


@dataclass(frozen=True, eq=False)
class FockVector:
    """Normalized pure state: amplitudes c_0..c_N over |N-n, n>."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.ndim != 1 or amp.size < 2:
            raise ValueError("amplitudes must be a 1-D sequence of length N+1 with N >= 1")
        norm_sq = float(np.sum(np.abs(amp) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: sum |c_n|^2 = {norm_sq!r}")
        amp = amp.copy()
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @property
    def total_atoms(self) -> int:
        return self.amplitudes.size - 1

    def probabilities(self) -> np.ndarray:
        """|c_n|^2 over the right-well occupation n."""
        return np.abs(self.amplitudes) ** 2

    def overlap(self, other: "FockVector") -> complex:
        _check_same_atoms(self, other)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def to_payload(self) -> dict:
        """JSON-serializable form: integer N plus [re, im] pairs."""
        return {
            "total_atoms": self.total_atoms,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "FockVector":
        amp = np.array([complex(re, im) for re, im in payload["amplitudes"]])
        state = cls(amp)
        if state.total_atoms != int(payload["total_atoms"]):
            raise ValueError("total_atoms inconsistent with amplitude count")
        return state


@dataclass(frozen=True, eq=False)
class MixedEnsemble:
    """Statistical mixture: weighted FockVectors sharing one atom number."""

    components: tuple

    def __post_init__(self):
        comps = tuple((float(w), s) for w, s in self.components)
        if not comps:
            raise ValueError("ensemble needs at least one component")
        n = comps[0][1].total_atoms
        for w, s in comps:
            if not 0.0 < w <= 1.0:
                raise ValueError(f"component weight {w!r} outside (0, 1]")
            if s.total_atoms != n:
                raise ValueError("all components must share the same atom number")
        total = sum(w for w, _ in comps)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "components", comps)

    @property
    def total_atoms(self) -> int:
        return self.components[0][1].total_atoms

    def probabilities(self) -> np.ndarray:
        """Ensemble-averaged number distribution."""
        return sum(w * s.probabilities() for w, s in self.components)


State = FockVector | MixedEnsemble


@dataclass(frozen=True)
class SystemParams:
    """Two-mode model parameters, all in angular-frequency units (rad/s)."""

    kappa: float
    u_left: float = 0.0
    u_right: float = 0.0
    e_left: float = 0.0
    e_right: float = 0.0
    convention: InteractionConvention = InteractionConvention.HALF

    def __post_init__(self):
        if not np.isfinite(self.kappa) or self.kappa < 0:
            raise ValueError("kappa must be finite and >= 0 (sign lives in the Hamiltonian)")

    @classmethod
    def symmetric(cls, kappa: float, u: float = 0.0,
                  convention: InteractionConvention = InteractionConvention.HALF) -> "SystemParams":
        return cls(kappa=kappa, u_left=u, u_right=u, convention=convention)

    @property
    def is_symmetric(self) -> bool:
        return self.u_left == self.u_right and self.e_left == self.e_right


def _components(state: State) -> tuple:
    if isinstance(state, FockVector):
        return ((1.0, state),)
    if isinstance(state, MixedEnsemble):
        return state.components
    raise ValueError(f"expected FockVector or MixedEnsemble, got {type(state).__name__}")


def _check_same_atoms(a, b):
    if a.total_atoms != b.total_atoms:
        raise ValueError(f"atom numbers differ: {a.total_atoms} vs {b.total_atoms}")


def basis_state(n_atoms: int, n_right: int) -> FockVector:
    """The number state |N - n_right, n_right>."""
    if not 0 <= n_right <= n_atoms:
        raise ValueError("n_right must lie in 0..n_atoms")
    amp = np.zeros(n_atoms + 1, dtype=complex)
    amp[n_right] = 1.0
    return FockVector(amp)


def make_noon(n_atoms: int, phase: float = 0.0) -> FockVector:
    """Coherent cat state (|N,0> + e^{i phase} |0,N>) / sqrt(2).

    The phase factor multiplies the all-atoms-right component |0,N>, i.e.
    c_0 = 1/sqrt(2) and c_N = e^{i phase}/sqrt(2).
    """
    if n_atoms < 1:
        raise ValueError("n_atoms must be >= 1")
    amp = np.zeros(n_atoms + 1, dtype=complex)
    amp[0] = 1.0 / np.sqrt(2.0)
    amp[n_atoms] = np.exp(1j * phase) / np.sqrt(2.0)
    return FockVector(amp)


def make_mixture(n_atoms: int) -> MixedEnsemble:
    """Fifty-fifty incoherent blend of |N,0> and |0,N>.

    Number statistics cannot distinguish it from :func:`make_noon`; phase
    sensitive measurements can.
    """
    if n_atoms < 1:
        raise ValueError("n_atoms must be >= 1")
    return MixedEnsemble((
        (0.5, basis_state(n_atoms, 0)),
        (0.5, basis_state(n_atoms, n_atoms)),
    ))


def hamiltonian_matrix(params: SystemParams, n_atoms: int) -> np.ndarray:
    """Dense (N+1)x(N+1) real symmetric tridiagonal Hamiltonian, rad/s."""
    if n_atoms < 1:
        raise ValueError("n_atoms must be >= 1")
    n = np.arange(n_atoms + 1, dtype=float)
    chi = params.convention.chi_factor
    diag = (
        params.e_left * (n_atoms - n)
        + params.e_right * n
        + chi * params.u_left * (n_atoms - n) * (n_atoms - n - 1)
        + chi * params.u_right * n * (n - 1)
    )
    off = -params.kappa * np.sqrt((n[:-1] + 1.0) * (n_atoms - n[:-1]))
    h = np.diag(diag)
    h += np.diag(off, 1) + np.diag(off, -1)
    return h


def number_difference(n_atoms: int) -> np.ndarray:
    """Eigenvalues N-2n of (N_L - N_R) along the basis index n."""
    return n_atoms - 2.0 * np.arange(n_atoms + 1, dtype=float)


def mean_left(state: State) -> float:
    """Expected atom number in the left well, sum_n (N-n) |c_n|^2."""
    n_atoms = _components(state)[0][1].total_atoms
    p = state.probabilities()
    return float(np.sum((n_atoms - np.arange(n_atoms + 1)) * p))


def diff_variance(state: State) -> float:
    """Variance of the number difference N_L - N_R.

    Ensembles use the ensemble-averaged first and second moments, i.e. the
    variance of the mixture, not the average of component variances.
    """
    d = number_difference(_components(state)[0][1].total_atoms)
    p = state.probabilities()
    return float(np.sum(d**2 * p) - np.sum(d * p) ** 2)


def parity(state: State) -> float:
    """Right-well parity sum_n (-1)^n |c_n|^2, in [-1, 1]."""
    n_atoms = _components(state)[0][1].total_atoms
    signs = (-1.0) ** np.arange(n_atoms + 1)
    return float(np.sum(signs * state.probabilities()))


def fidelity(a: FockVector, b: State) -> float:
    """Squared overlap |<a|b>|^2, weight-averaged over ensemble components."""
    if not isinstance(a, FockVector):
        raise ValueError("first argument must be a pure FockVector")
    total = 0.0
    for w, s in _components(b):
        _check_same_atoms(a, s)
        total += w * abs(np.vdot(a.amplitudes, s.amplitudes)) ** 2
    return float(total)


def quadrature_matrix(n_atoms: int, theta: float) -> np.ndarray:
    """Matrix of the two-mode quadrature a_L^+ a_R e^{-i theta} + h.c.

    Tridiagonal with |<n|X|n+1>| = sqrt((n+1)(N-n)); its spectrum is the
    N+1 values {-N, -N+2, ..., N}.
    """
    n = np.arange(n_atoms, dtype=float)
    off = np.sqrt((n + 1.0) * (n_atoms - n))
    x = np.zeros((n_atoms + 1, n_atoms + 1), dtype=complex)
    x += np.diag(off * np.exp(-1j * theta), 1)
    x += np.diag(off * np.exp(1j * theta), -1)
    return x


def quadrature_moment(state: State, theta: float, k: int) -> float:
    """k-th moment <X_theta^k> by direct operator algebra.

    Serves as the oracle for the interference protocol in :mod:`.ramsey`.
    Entries of X^k grow like N^k, so k * log10(N) must stay below ~308 to
    avoid float64 overflow; the physically useful range is k <= N.
    """
    if k < 0:
        raise ValueError("moment order k must be >= 0")
    if k == 0:
        return 1.0
    n_atoms = _components(state)[0][1].total_atoms
    xk = np.linalg.matrix_power(quadrature_matrix(n_atoms, theta), k)
    total = 0.0
    for w, s in _components(state):
        total += w * np.real(np.vdot(s.amplitudes, xk @ s.amplitudes))
    return float(total)
