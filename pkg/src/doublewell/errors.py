"""Exception hierarchy for the doublewell package.

Invalid arguments raise the builtin ``ValueError``; everything that can go
wrong *numerically* (or while parsing a run configuration) gets its own class
so the CLI can map error categories to exit codes.
"""


class DoubleWellError(Exception):
    """Base class for doublewell runtime failures."""


class IntegrationFailure(DoubleWellError):
    """Time propagation lost unitarity beyond the allowed norm drift."""

    def __init__(self, drift: float, message: str = ""):
        self.drift = drift
        hint = message or (
            f"norm drift {drift:.3e} exceeds the 1e-9 budget; "
            "tighten IntegratorConfig.step_tolerance or reduce max_step"
        )
        super().__init__(hint)


class ConvergenceFailure(DoubleWellError):
    """Imaginary-time relaxation did not reach the energy tolerance."""

    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"ground-state search not converged after {iterations} iterations; "
            f"achieved energy residual {residual:.3e} rad/s"
        )


class CalibrationFailure(DoubleWellError):
    """Parity-weight calibration found a non-single-frequency dyad response."""


class DecompositionViolation(DoubleWellError):
    """Reconstructed parity fringe disagrees with the simulated one."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"parity reconstruction error {report.max_error:.3e} exceeds "
            f"{report.threshold:.1e}; this signals a convention bug"
        )


class AliasingError(DoubleWellError):
    """Fringe grid too coarse to resolve all frequency components."""


class ConfigError(DoubleWellError):
    """Invalid or unknown experiment configuration."""
