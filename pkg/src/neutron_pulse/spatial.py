"""
Spinor wave functions on a periodic 1-D grid.

Units hbar = m = 1.  A grid of ``N`` points (a power of two) on ``[0, L)``
holds ``psi(x_k)`` at ``x_k = k L / N`` as an ``(N, 2)`` complex array.
Discrete mode ``m`` carries momentum ``p_m = 2 pi m / L``; spectra are
returned in numpy FFT order, so mode ``m`` sits at index ``m mod N``.

Free evolution is applied exactly in the spectral basis.  A pulse multiplies
each sample by the local delta-pulse transfer matrix.
"""

import csv
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .errors import IndexOutOfBand, LengthMismatch, ValidationError, ZeroNorm
from .spinor import NORM_TOL, norm_squared
from .transfer import as_coupling, delta_transfer

GRID_CSV_COLUMNS = ("x", "re_up", "im_up", "re_down", "im_down")


@dataclass(frozen=True, eq=False)
class WaveGrid:
    length: float
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.ndim != 2 or values.shape[1] != 2:
            raise ValidationError(f"grid values must have shape (N, 2), got {values.shape}")
        n = values.shape[0]
        if n < 2 or n & (n - 1):
            raise ValidationError(f"number of grid points must be a power of two, got {n}")
        if not self.length > 0:
            raise ValidationError("grid length must be positive")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def points(self) -> int:
        return self.values.shape[0]

    @property
    def dx(self) -> float:
        return self.length / self.points

    def x(self) -> np.ndarray:
        return np.arange(self.points) * self.dx

    def momenta(self) -> np.ndarray:
        """Momentum of each spectral index, in FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.points, d=self.dx)

    def norm(self) -> float:
        return float(self.dx * np.sum(np.abs(self.values) ** 2))

    def with_values(self, values) -> "WaveGrid":
        return WaveGrid(self.length, values)


def empty_grid(length: float, points: int) -> WaveGrid:
    return WaveGrid(length, np.zeros((points, 2), dtype=complex))


def make_plane_wave(grid: WaveGrid, momentum_index: int, polarization) -> WaveGrid:
    """Plane wave ``chi exp(i p x)`` with ``p = 2 pi momentum_index / L``.

    Only ``grid.length`` and ``grid.points`` are used from ``grid``.
    """
    n = grid.points
    if not -n // 2 <= momentum_index < n // 2:
        raise IndexOutOfBand(f"momentum index {momentum_index} outside [{-n // 2}, {n // 2})")
    chi = np.asarray(polarization, dtype=complex)
    if abs(norm_squared(chi) - 1.0) > NORM_TOL:
        raise ValidationError("polarization spinor must be normalized")
    p = 2.0 * np.pi * momentum_index / grid.length
    phase = np.exp(1j * p * grid.x())
    return grid.with_values(phase[:, None] * chi[None, :])


def homogeneous_field(b, points: int) -> np.ndarray:
    return np.tile(as_coupling(b), (points, 1))


def apply_pulse_pointwise(w: WaveGrid, field) -> WaveGrid:
    """Apply the local transfer matrix ``U(b(x_k))`` to every sample.

    ``field`` has shape ``(N, 3)``: one coupling vector per grid point.
    """
    field = as_coupling(field)
    if field.shape != (w.points, 3):
        raise LengthMismatch(f"field has shape {field.shape}, grid needs ({w.points}, 3)")
    u = delta_transfer(field)
    return w.with_values(np.einsum("kij,kj->ki", u, w.values))


def free_propagate(w: WaveGrid, dt: float) -> WaveGrid:
    """Exact free evolution over ``dt``: mode ``p`` gains ``exp(-i p^2 dt / 2)``."""
    phase = np.exp(-0.5j * w.momenta() ** 2 * dt)
    spec = np.fft.fft(w.values, axis=0)
    return w.with_values(np.fft.ifft(phase[:, None] * spec, axis=0))


def momentum_spectrum(w: WaveGrid) -> np.ndarray:
    """Normalized weight per discrete mode, summed over both spin components."""
    spec = np.fft.fft(w.values, axis=0)
    weights = np.sum(np.abs(spec) ** 2, axis=1)
    total = weights.sum()
    if total == 0:
        raise ZeroNorm("wave function vanishes identically")
    return weights / total


def write_grid_csv(w: WaveGrid, stream: TextIO, fmt: str = "{:.8e}") -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(GRID_CSV_COLUMNS)
    for xk, (up, down) in zip(w.x(), w.values):
        row = (xk, up.real, up.imag, down.real, down.imag)
        writer.writerow([fmt.format(v + 0.0) for v in row])
