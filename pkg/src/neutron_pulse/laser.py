"""
SI-unit field estimates for a laser-generated magnetic pulse, and the
dimensionless coupling they imply for a neutron.

The pulse duration ``tau`` doubles as the time scale of the delta-pulse
model, so a field ``B`` acting for ``tau`` has coupling ``mu tau B / hbar``.
"""

import csv
import io
import math
from dataclasses import asdict, dataclass

from .errors import NegativeInput, NonPositiveDuration, NonPositiveInput
from .transfer import post_pulse_expectations, spin_flip_probability

# Constants [SI], frozen here so reports are bit-reproducible.
# Neutron magnetic moment, magnitude [J/T]
MU_NEUTRON = 0.96623645e-26
# Reduced Planck constant [J s] (CODATA 2018, exact)
HBAR = 1.054571817e-34
# Vacuum permeability [T m / A] (CODATA 2018)
MU_0 = 1.25663706212e-6
# Speed of light [m / s] (exact)
C_LIGHT = 299792458.0

# Coupling at which the weak-field literature estimate is quoted
REFERENCE_COUPLING = 0.3


@dataclass(frozen=True)
class PhysicalConstants:
    mu_neutron: float = MU_NEUTRON
    hbar: float = HBAR
    mu0: float = MU_0
    c: float = C_LIGHT


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class LaserPulseSpec:
    """Laser pulse parameters in SI units (W/m^2, J, s, m^2)."""

    peak_intensity: float
    total_energy: float
    duration: float
    cross_section: float


# 20 fs, 5.5e22 W/cm^2 petawatt-class pulse; 5 J focused onto 2 um^2
J_KAREN_P = LaserPulseSpec(
    peak_intensity=5.5e26,
    total_energy=5.0,
    duration=20e-15,
    cross_section=2e-12,
)


def peak_field_from_intensity(intensity: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Peak magnetic field [T] of a plane wave of intensity [W/m^2]: sqrt(mu0 I / c)."""
    if intensity < 0:
        raise NegativeInput(f"intensity must be non-negative, got {intensity!r}")
    return math.sqrt(constants.mu0 * intensity / constants.c)


def rms_field_from_energy(
    energy: float, tau: float, area: float, constants: PhysicalConstants = CONSTANTS
) -> float:
    """Volume-averaged (quadratic mean) field [T] of a pulse of energy [J]
    spread over duration ``tau`` [s] and cross-section ``area`` [m^2]:
    sqrt(mu0 E / (2 c tau A)).

    Zero energy is allowed and gives zero field.
    """
    if energy < 0:
        raise NonPositiveInput(f"energy must be non-negative, got {energy!r}")
    if tau <= 0 or area <= 0:
        raise NonPositiveInput("duration and cross-section must be positive")
    return math.sqrt(constants.mu0 * energy / (2.0 * constants.c * tau * area))


def dimensionless_coupling(
    field: float, tau: float, constants: PhysicalConstants = CONSTANTS
) -> float:
    """mu_n tau B / hbar for a field [T] lasting ``tau`` [s]."""
    if tau <= 0:
        raise NonPositiveDuration(f"duration must be positive, got {tau!r}")
    if field < 0:
        raise NegativeInput(f"field must be non-negative, got {field!r}")
    return constants.mu_neutron * tau * field / constants.hbar


def field_for_coupling(coupling: float, tau: float, constants: PhysicalConstants = CONSTANTS) -> float:
    if tau <= 0:
        raise NonPositiveDuration(f"duration must be positive, got {tau!r}")
    return coupling * constants.hbar / (constants.mu_neutron * tau)


@dataclass(frozen=True)
class ScenarioReport:
    peak_B_tesla: float
    rms_B_tesla: float
    coupling_peak: float
    coupling_rms: float
    flip_probability_peak: float
    flip_probability_rms: float
    S_x_peak_hbar_half: float
    S_y_peak_hbar_half: float
    S_z_peak_hbar_half: float
    S_x_rms_hbar_half: float
    S_y_rms_hbar_half: float
    S_z_rms_hbar_half: float
    reference_coupling: float
    reference_B_tesla: float
    flip_probability_reference: float
    S_y_reference_hbar_half: float
    S_z_reference_hbar_half: float

    def as_dict(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        return "".join(f"{k}={v:.8e}\n" for k, v in self.as_dict().items())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        d = self.as_dict()
        writer.writerow(d.keys())
        writer.writerow(f"{v:.8e}" for v in d.values())
        return buf.getvalue()


def scenario_report(
    spec: LaserPulseSpec,
    reference_coupling: float = REFERENCE_COUPLING,
    constants: PhysicalConstants = CONSTANTS,
) -> ScenarioReport:
    """Chain field estimates into spin observables.

    The pulse field is taken along x and the neutrons polarized along +z.
    Observables are given at the peak field, at the volume-averaged field,
    and at ``reference_coupling`` for comparison with quoted estimates.
    """
    tau = spec.duration
    peak_b = peak_field_from_intensity(spec.peak_intensity, constants)
    rms_b = rms_field_from_energy(spec.total_energy, tau, spec.cross_section, constants)
    g_peak = dimensionless_coupling(peak_b, tau, constants)
    g_rms = dimensionless_coupling(rms_b, tau, constants)
    e_peak = post_pulse_expectations((g_peak, 0.0, 0.0))
    e_rms = post_pulse_expectations((g_rms, 0.0, 0.0))
    e_ref = post_pulse_expectations((reference_coupling, 0.0, 0.0))
    return ScenarioReport(
        peak_B_tesla=peak_b,
        rms_B_tesla=rms_b,
        coupling_peak=g_peak,
        coupling_rms=g_rms,
        flip_probability_peak=spin_flip_probability((g_peak, 0.0, 0.0)),
        flip_probability_rms=spin_flip_probability((g_rms, 0.0, 0.0)),
        S_x_peak_hbar_half=e_peak.x,
        S_y_peak_hbar_half=e_peak.y,
        S_z_peak_hbar_half=e_peak.z,
        S_x_rms_hbar_half=e_rms.x,
        S_y_rms_hbar_half=e_rms.y,
        S_z_rms_hbar_half=e_rms.z,
        reference_coupling=reference_coupling,
        reference_B_tesla=field_for_coupling(reference_coupling, tau, constants),
        flip_probability_reference=spin_flip_probability((reference_coupling, 0.0, 0.0)),
        S_y_reference_hbar_half=e_ref.y,
        S_z_reference_hbar_half=e_ref.z,
    )
