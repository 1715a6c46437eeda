"""
Two-component spinor and 2x2 operator algebra.

Spinors are complex numpy arrays of shape ``(2,)`` ordered ``(up, down)`` in
the sigma_z eigenbasis; operators are complex arrays of shape ``(2, 2)``.
Expectation values are returned in units of hbar/2, i.e. as expectations of
the bare Pauli matrices.

Global phases are never removed, so every observable here is computed in a
phase-invariant way.
"""

from typing import NamedTuple, Sequence

import numpy as np

from .errors import BadAxis, NotNormalized

NORM_TOL = 1e-9

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

SPIN_UP = np.array([1, 0], dtype=complex)
SPIN_DOWN = np.array([0, 1], dtype=complex)

_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}
_PAULI_STACK = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

for _arr in (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z, SPIN_UP, SPIN_DOWN, _PAULI_STACK):
    _arr.flags.writeable = False


class BlochVector(NamedTuple):
    """Expectations of (sigma_x, sigma_y, sigma_z) for a pure state."""

    x: float
    y: float
    z: float

    def norm(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))


def spinor(up: complex, down: complex) -> np.ndarray:
    return np.array([up, down], dtype=complex)


def normalized(s) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    n = np.linalg.norm(s)
    if n == 0:
        raise NotNormalized("cannot normalize the zero spinor")
    return s / n


def norm_squared(s) -> float:
    s = np.asarray(s, dtype=complex)
    return float(np.real(np.vdot(s, s)))


def _check_normalized(s: np.ndarray, tol: float = NORM_TOL) -> None:
    n2 = norm_squared(s)
    if abs(n2 - 1.0) > tol:
        raise NotNormalized(f"spinor has squared norm {n2!r}, expected 1")


def pauli_matrix(axis: str) -> np.ndarray:
    """Return the Pauli matrix for ``axis`` in ``{'x', 'y', 'z'}``."""
    try:
        return _PAULI[axis]
    except KeyError:
        raise ValueError(f"unknown axis {axis!r}; expected 'x', 'y' or 'z'") from None


def sigma_dot(v) -> np.ndarray:
    """Contract a real 3-vector (or a stack of them, shape ``(..., 3)``) with
    the Pauli vector, giving ``v . sigma`` with shape ``(..., 2, 2)``."""
    v = np.asarray(v, dtype=float)
    return np.tensordot(v, _PAULI_STACK, axes=([-1], [0]))


def apply(op, s) -> np.ndarray:
    return np.asarray(op, dtype=complex) @ np.asarray(s, dtype=complex)


def dagger(op) -> np.ndarray:
    return np.conj(np.swapaxes(np.asarray(op), -1, -2))


def unitarity_defect(op) -> float:
    """Largest entry of ``|op^dagger op - I|``."""
    op = np.asarray(op, dtype=complex)
    return float(np.max(np.abs(dagger(op) @ op - IDENTITY)))


def is_unitary(op, tol: float = 1e-12) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return unitarity_defect(op) <= tol


def max_entry_distance(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def expectation_spin(s, axis: str) -> float:
    """<sigma_axis> for a normalized spinor, in units of hbar/2."""
    s = np.asarray(s, dtype=complex)
    _check_normalized(s)
    return float(np.real(np.vdot(s, pauli_matrix(axis) @ s)))


def bloch_vector(s) -> BlochVector:
    s = np.asarray(s, dtype=complex)
    _check_normalized(s)
    up, down = s
    cross = np.conj(up) * down
    return BlochVector(
        float(2.0 * cross.real),
        float(2.0 * cross.imag),
        float(abs(up) ** 2 - abs(down) ** 2),
    )


def axis_angle_rotation(axis: Sequence[float], angle: float) -> np.ndarray:
    """Return ``exp(-i angle n.sigma) = cos(angle) I - i sin(angle) n.sigma``.

    Note the convention: ``angle`` multiplies ``n.sigma`` directly, so the
    corresponding Bloch-sphere rotation is by ``2*angle``.
    """
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > NORM_TOL:
        raise BadAxis(f"rotation axis must be a unit 3-vector, got {axis!r}")
    return np.cos(angle) * IDENTITY - 1j * np.sin(angle) * sigma_dot(n)
