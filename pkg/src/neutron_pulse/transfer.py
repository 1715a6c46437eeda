"""
Junction condition across an impulsive magnetic pulse.

A pulse ``B(t, x) = tau * delta(t) * B(x)`` enters only through the
dimensionless coupling vector ``b = (mu * tau / hbar) * B``.  Immediately
after the pulse the spinor is

    Phi_plus = U(b) Phi_minus,
    U(b) = [(1 - |b|^2/4) I - i b.sigma] / (1 + |b|^2/4),

which is the Cayley transform of ``-(i/2) b.sigma`` and hence a rotation
``exp(-i theta bhat.sigma)`` with ``theta = 2 arctan(|b|/2)``.

The closed-form observables below assume the initial state is spin-up along
z.  Coupling vectors are plain length-3 sequences; :func:`delta_transfer`
also accepts stacks of shape ``(..., 3)``.
"""

import math

import numpy as np

from .errors import GeometryViolation
from .spinor import IDENTITY, BlochVector, sigma_dot

GEOMETRY_TOL = 1e-12


def as_coupling(b) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    if b.shape[-1:] != (3,):
        raise ValueError(f"coupling vector must have 3 components, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise ValueError("coupling vector components must be finite")
    return b


def delta_transfer(b) -> np.ndarray:
    """Transfer matrix of a delta pulse with coupling ``b``.

    Parameters
    ----------
    b : array_like, shape (3,) or (..., 3)
        Dimensionless coupling ``(mu tau / hbar) B``.

    Returns
    -------
    ndarray, shape (2, 2) or (..., 2, 2)
        Unitary matrix mapping the spinor just before the pulse to the one
        just after it.
    """
    b = as_coupling(b)
    q = 0.25 * np.sum(b * b, axis=-1)[..., None, None]
    return ((1.0 - q) * IDENTITY - 1j * sigma_dot(b)) / (1.0 + q)


def general_a_transfer(a: float, b) -> np.ndarray:
    """Junction map for an arbitrary association constant ``a``.

    Solves ``(I + i a b.sigma) Phi_plus = (I - i (1 - a) b.sigma) Phi_minus``
    using the closed-form inverse ``(I + i a b.sigma)^-1 =
    (I - i a b.sigma) / (1 + a^2 |b|^2)``.  Only ``a = 1/2`` yields a
    norm-preserving map.
    """
    b = as_coupling(b)
    sb = sigma_dot(b)
    b2 = float(np.dot(b, b))
    left_inv = (IDENTITY - 1j * a * sb) / (1.0 + a * a * b2)
    return left_inv @ (IDENTITY - 1j * (1.0 - a) * sb)


def norm_ratio(a: float, bmag: float) -> float:
    """Squared-norm ratio ``|Phi_plus|^2 / |Phi_minus|^2`` for association
    constant ``a`` and coupling magnitude ``bmag``, in the expanded form

        [1 + (1 - 2a(1-a)) b^2 + a^2 (1-a)^2 b^4] / (1 + a^2 b^2)^2.

    It is identically 1 only for ``a = 1/2``.
    """
    if bmag < 0:
        raise ValueError("bmag must be non-negative")
    b2 = bmag * bmag
    c = a * (1.0 - a)
    return (1.0 + (1.0 - 2.0 * c) * b2 + c * c * b2 * b2) / (1.0 + a * a * b2) ** 2


def _components(b) -> tuple[float, float, float]:
    bx, by, bz = as_coupling(b)
    return float(bx), float(by), float(bz)


def _require_zero(value: float, name: str) -> None:
    if abs(value) > GEOMETRY_TOL:
        raise GeometryViolation(
            f"{name} = {value!r} must vanish (tolerance {GEOMETRY_TOL:g}) for this closed form"
        )


def spin_flip_probability(b) -> float:
    """Probability of ending in spin-down after a pulse acting on spin-up.

    The field must lie in the xy-plane: ``|b|^2 / (1 + |b|^2/4)^2``.
    """
    bx, by, bz = _components(b)
    _require_zero(bz, "bz")
    b2 = bx * bx + by * by
    return b2 / (1.0 + 0.25 * b2) ** 2


def post_pulse_expectations(b) -> BlochVector:
    """Spin expectations (units of hbar/2) after an x-directed pulse on spin-up."""
    bx, by, bz = _components(b)
    _require_zero(by, "by")
    _require_zero(bz, "bz")
    q = 0.25 * bx * bx
    d2 = (1.0 + q) ** 2
    s_y = -2.0 * bx * (1.0 - q) / d2
    s_z = ((1.0 - q) ** 2 - bx * bx) / d2
    return BlochVector(0.0, s_y + 0.0, s_z)


def larmor_approx(b) -> float:
    """First-order <S_y> (units of hbar/2), ``-2 bx``; only good for ``|b| << 1``.

    In physical units this is ``-omega_L * tau`` with the Larmor frequency
    ``omega_L = 2 mu B / hbar``.
    """
    bx, by, bz = _components(b)
    _require_zero(by, "by")
    _require_zero(bz, "bz")
    return -2.0 * bx + 0.0


def rotation_angle(b) -> float:
    """Angle ``theta`` in ``delta_transfer(b) = exp(-i theta bhat.sigma)``."""
    bmag = float(np.linalg.norm(as_coupling(b)))
    return 2.0 * math.atan(0.5 * bmag)


def exponential_angle_gap(bmag: float) -> float:
    """``|b| - 2 arctan(|b|/2)``: how far the delta-pulse rotation falls short
    of the rotation ``exp(-i b.sigma)`` produced by any smooth pulse of the
    same area.  Behaves as ``|b|^3 / 12`` for small ``|b|``."""
    return bmag - 2.0 * math.atan(0.5 * bmag)
