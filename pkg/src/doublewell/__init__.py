"""Two-mode double-well condensate simulator.

Builds cat-like superpositions of a fixed number of atoms via interaction
ramps and probes their coherence with a simulated Ramsey interference
protocol, parity fringes, and a fringe-spectrum-to-coherence decomposition.
"""

from .coherence import (
    CoherenceSpectrum,
    DecompositionReport,
    ParityWeights,
    calibrate_parity_weights,
    coherence_sums,
    density_upper_diagonals,
    fringe_noise_floor,
    parity_fourier,
    parity_spectrum_bins,
    reconstruct_parity,
    verify_decomposition,
)
from .errors import (
    AliasingError,
    CalibrationFailure,
    ConfigError,
    ConvergenceFailure,
    DecompositionViolation,
    DoubleWellError,
    IntegrationFailure,
)
from .evolve import (
    EvolveInfo,
    GroundStateInfo,
    IntegratorConfig,
    Method,
    ParamSchedule,
    PiecewiseLinearRamp,
    RampFidelityScan,
    RampTrajectory,
    eigen_evolve,
    fidelity_vs_ramp,
    ground_state,
    noon_overlap_fidelity,
    ramp_run,
    real_evolve,
)
from .fock import (
    FockVector,
    InteractionConvention,
    MixedEnsemble,
    SystemParams,
    basis_state,
    diff_variance,
    fidelity,
    hamiltonian_matrix,
    make_mixture,
    make_noon,
    mean_left,
    number_difference,
    parity,
    quadrature_matrix,
    quadrature_moment,
)
from .ramsey import (
    FringeData,
    PhaseSign,
    RamseyConfig,
    RamseyRecord,
    beam_splitter_propagator,
    default_theta_grid,
    effective_quadrature_angle,
    fringe_sweep,
    phase_stage,
    ramsey_run,
)
from .physical import (
    ATOMIC_MASS,
    BOHR_RADIUS,
    HBAR,
    TrapSpec,
    feshbach_ramp,
    gaussian_widths,
    interaction_strength,
)

__version__ = "0.1.0"
