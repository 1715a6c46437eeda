"""Spin response of slow neutrons to an impulsive (delta-in-time) magnetic pulse."""

from .errors import GeometryViolation, NotNormalized, NumericalQualityError, ValidationError
from .spinor import (
    IDENTITY,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    SPIN_DOWN,
    SPIN_UP,
    BlochVector,
    apply,
    axis_angle_rotation,
    bloch_vector,
    expectation_spin,
    is_unitary,
    pauli_matrix,
    spinor,
)
from .transfer import (
    delta_transfer,
    general_a_transfer,
    larmor_approx,
    norm_ratio,
    post_pulse_expectations,
    rotation_angle,
    spin_flip_probability,
)

__version__ = "0.1.0"
