"""Grids, transform conventions, field containers, and error metrics.

Conventions used throughout the package:

* fields live on a uniform n x n lattice with spacing ``delta_x`` meters,
  stored as arrays indexed ``[iy, ix]`` (row = y, column = x);
* all quantities are strict SI (meters, tesla, A/m^2);
* fields are periodic on the grid, so FFT-based convolution is circular and
  compact sources must be padded by the caller;
* DFT normalization is numpy's default: unnormalized forward, 1/n^2 inverse.
  The unnormalized forward DFT of samples approximates the continuous
  Fourier transform divided by delta_x^2, which lets continuous kernels act
  as plain spectral multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GridMismatchError(ValueError):
    """Two fields that must share a grid do not."""


class ZeroReferenceError(ValueError):
    """The reference field of a relative error is identically zero."""


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform n x n sampling lattice.

    ``n`` must be a power of two (required by the dyadic wavelet transform)
    and ``delta_x`` is the sample spacing in meters.
    """

    n: int
    delta_x: float

    def __post_init__(self):
        if not _is_pow2(self.n):
            raise ValueError(f"grid size must be a power of two, got {self.n}")
        if not (self.delta_x > 0):
            raise ValueError(f"delta_x must be positive, got {self.delta_x}")

    @property
    def extent(self) -> float:
        """Physical side length in meters."""
        return self.n * self.delta_x

    @property
    def nyquist(self) -> float:
        """Largest representable spatial frequency, cycles/m."""
        return 0.5 / self.delta_x


def _check_samples(grid: GridSpec, values: np.ndarray, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape != (grid.n, grid.n):
        raise GridMismatchError(
            f"{name} has shape {arr.shape}, expected {(grid.n, grid.n)}"
        )
    return arr


@dataclass(frozen=True)
class ScalarMap:
    """A single real-valued map on a grid (units depend on context)."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_samples(self.grid, self.values, "values"))


@dataclass(frozen=True)
class CurrentField:
    """Two-component current density J = (jx, jy) in A/m^2."""

    grid: GridSpec
    jx: np.ndarray
    jy: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "jx", _check_samples(self.grid, self.jx, "jx"))
        object.__setattr__(self, "jy", _check_samples(self.grid, self.jy, "jy"))

    def norm(self) -> float:
        """Joint L2 norm over both components."""
        return float(np.sqrt(np.sum(self.jx**2) + np.sum(self.jy**2)))


@dataclass(frozen=True)
class FieldMap3:
    """Three-component magnetic field samples in tesla.

    ``z`` is the measurement standoff and ``d`` the conductor thickness,
    both in meters; both are carried as metadata because every inversion
    needs them.
    """

    grid: GridSpec
    bx: np.ndarray
    by: np.ndarray
    bz: np.ndarray
    z: float
    d: float

    def __post_init__(self):
        object.__setattr__(self, "bx", _check_samples(self.grid, self.bx, "bx"))
        object.__setattr__(self, "by", _check_samples(self.grid, self.by, "by"))
        object.__setattr__(self, "bz", _check_samples(self.grid, self.bz, "bz"))
        if not (self.z > 0):
            raise ValueError(f"standoff z must be positive, got {self.z}")
        if not (self.d > 0):
            raise ValueError(f"thickness d must be positive, got {self.d}")

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.bx**2) + np.sum(self.by**2) + np.sum(self.bz**2)))


def wavenumber_grid(grid: GridSpec) -> tuple[ScalarMap, ScalarMap]:
    """Spatial-frequency maps (kx, ky) in cycles/m, standard DFT ordering.

    Index i maps to frequency i/(n*delta_x) for i < n/2 and (i-n)/(n*delta_x)
    otherwise; index (0, 0) carries k = 0.
    """
    freqs = np.fft.fftfreq(grid.n, d=grid.delta_x)
    ky, kx = np.meshgrid(freqs, freqs, indexing="ij")
    return ScalarMap(grid, kx), ScalarMap(grid, ky)


def deriv_multipliers(grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Spectral-derivative multipliers (2*pi*i*kx, 2*pi*i*ky), cycles/m based.

    The Nyquist row/column is zeroed: a real signal's Nyquist mode is its own
    conjugate partner, so any nonzero odd-derivative multiplier there would
    produce a spurious imaginary output.
    """
    f = np.fft.fftfreq(grid.n, d=grid.delta_x)
    f = f.copy()
    f[grid.n // 2] = 0.0
    ky, kx = np.meshgrid(f, f, indexing="ij")
    return 2j * np.pi * kx, 2j * np.pi * ky


def rel_l2_error(a: CurrentField, b: CurrentField) -> float:
    """Joint relative L2 error ||a - b|| / ||b|| over both components."""
    if a.grid != b.grid:
        raise GridMismatchError("rel_l2_error requires matching grids")
    ref = b.norm()
    if ref == 0.0:
        raise ZeroReferenceError("reference field is identically zero")
    diff = np.sqrt(np.sum((a.jx - b.jx) ** 2) + np.sum((a.jy - b.jy) ** 2))
    return float(diff / ref)


def spectral_divergence(j: CurrentField) -> ScalarMap:
    """Divergence of a current field computed in the Fourier domain.

    Returns the inverse DFT of ``i*2*pi*(kx*jx_hat + ky*jy_hat)`` as a real
    map in A/m^3; the imaginary residue (below 1e-12 of the map norm) is
    discarded.  Used as a validation probe for continuity.
    """
    dx_mult, dy_mult = deriv_multipliers(j.grid)
    div_hat = dx_mult * np.fft.fft2(j.jx) + dy_mult * np.fft.fft2(j.jy)
    div = np.fft.ifft2(div_hat)
    return ScalarMap(j.grid, div.real)
