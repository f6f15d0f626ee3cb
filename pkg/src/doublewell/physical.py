"""From trap and atom parameters to effective two-mode model parameters.

The condensate mode in each well is approximated by the Gaussian ground
state of the local harmonic trap, sigma_i = sqrt(hbar / (m omega_i)).  The
on-site interaction rate then follows from the contact-interaction strength
U_0 = 4 pi a hbar / m evaluated on that Gaussian:

    U = U_0 * (2 pi)^{-3/2} / (sigma_x sigma_y sigma_z)   [rad/s]

which is exactly linear in the scattering length a, so a linear Feshbach
sweep of a maps onto a linear ramp of U.  Tunneling is not derived from a
potential here; treat kappa as a direct input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evolve import PiecewiseLinearRamp

# CODATA values, 10 significant digits
HBAR = 1.054571817e-34        # J s
BOHR_RADIUS = 5.291772109e-11  # m
ATOMIC_MASS = 1.660539067e-27  # kg


@dataclass(frozen=True)
class TrapSpec:
    """Harmonic trap angular frequencies (rad/s), scattering length (m), mass (kg)."""

    omega_x: float
    omega_y: float
    omega_z: float
    scattering_length: float
    mass: float

    def __post_init__(self):
        if min(self.omega_x, self.omega_y, self.omega_z) <= 0:
            raise ValueError("trap frequencies must be > 0")
        if self.mass <= 0:
            raise ValueError("mass must be > 0")

    @classmethod
    def from_lab(cls, mass_amu: float, omegas, omega_units: str = "angular",
                 scattering_length_a0: float = 0.0) -> "TrapSpec":
        """Build from lab-style numbers: amu, (wx, wy, wz), a in Bohr radii.

        ``omega_units`` is "angular" (rad/s, the default) or "hertz"
        (ordinary frequency, multiplied by 2 pi).
        """
        wx, wy, wz = (float(w) for w in omegas)
        if omega_units == "hertz":
            wx, wy, wz = (2.0 * np.pi * w for w in (wx, wy, wz))
        elif omega_units != "angular":
            raise ValueError("omega_units must be 'angular' or 'hertz'")
        return cls(omega_x=wx, omega_y=wy, omega_z=wz,
                   scattering_length=float(scattering_length_a0) * BOHR_RADIUS,
                   mass=float(mass_amu) * ATOMIC_MASS)


def gaussian_widths(spec: TrapSpec) -> tuple:
    """Single-particle harmonic oscillator widths sqrt(hbar/(m omega_i)), meters."""
    return tuple(float(np.sqrt(HBAR / (spec.mass * w)))
                 for w in (spec.omega_x, spec.omega_y, spec.omega_z))


def interaction_strength(spec: TrapSpec) -> float:
    """Effective on-site interaction rate U in rad/s; sign follows a."""
    sx, sy, sz = gaussian_widths(spec)
    u0 = 4.0 * np.pi * spec.scattering_length * HBAR / spec.mass
    return float(u0 * (2.0 * np.pi) ** -1.5 / (sx * sy * sz))


def feshbach_ramp(a_start: float, a_end: float, ramp_time: float,
                  spec: TrapSpec) -> PiecewiseLinearRamp:
    """Linear scattering-length sweep expressed as a linear U(t) ramp.

    ``a_start`` and ``a_end`` are in meters; U is linear in a, so the two
    endpoints fully determine the schedule fragment.
    """
    if ramp_time <= 0:
        raise ValueError("ramp_time must be > 0")
    u_values = []
    for a in (a_start, a_end):
        point = TrapSpec(spec.omega_x, spec.omega_y, spec.omega_z,
                         scattering_length=float(a), mass=spec.mass)
        u_values.append(interaction_strength(point))
    return PiecewiseLinearRamp.linear(u_values[0], u_values[1], ramp_time)
