"""Current-to-field operator, analytic kernel, adjoint, and noise model.

The x/y field components are circular convolutions of the current components
with the standoff kernel; in the Fourier domain the operator is diagonal:

    bx_hat =  g * jy_hat
    by_hat = -g * jx_hat
    bz_hat = -i*g*(ky/|k|) * jx_hat + i*g*(kx/|k|) * jy_hat

with g(k, z) = (mu0*d/2) * exp(-2*pi*z*|k|).  Under the package DFT
convention (unnormalized forward, 1/n^2 inverse) the continuous kernel g is
the spectral multiplier as-is, which makes the operator agree with direct
spatial quadrature of the Biot-Savart sheet integral.

The k = 0 entries of the bz multipliers are zero: ky/|k| is undefined there
and a mean current produces no bz in this model.  The Nyquist row/column is
zeroed as well so the operator maps real fields to real fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from mci.grid import CurrentField, FieldMap3, GridSpec

MU0 = 4e-7 * np.pi  # vacuum permeability, T*m/A


@dataclass(frozen=True)
class KernelParams:
    """Standoff z and conductor thickness d (meters) of the sheet kernel."""

    z: float
    d: float
    mu0: float = field(default=MU0)

    def __post_init__(self):
        if not (self.z > 0):
            raise ValueError(f"standoff z must be positive, got {self.z}")
        if not (self.d > 0):
            raise ValueError(f"thickness d must be positive, got {self.d}")


@dataclass(frozen=True)
class NoiseSpec:
    """Per-component Gaussian noise level (tesla) and RNG seed."""

    sigma: float
    seed: int = 0

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")


def kernel_fourier(k_mag, p: KernelParams):
    """Fourier transform of the sheet kernel: (mu0*d/2)*exp(-2*pi*z*|k|).

    ``k_mag`` is in cycles/m; the result has units T*m^2/A.  Accepts scalars
    or arrays.
    """
    return (p.mu0 * p.d / 2.0) * np.exp(-2.0 * np.pi * p.z * np.asarray(k_mag, dtype=float))


def kernel_spatial(x_mag, p: KernelParams):
    """Spatial sheet kernel mu0*z*d/(4*pi) * (|x|^2 + z^2)^(-3/2)."""
    r2 = np.asarray(x_mag, dtype=float) ** 2
    return (p.mu0 * p.z * p.d / (4.0 * np.pi)) * (r2 + p.z**2) ** (-1.5)


def _spectral_tables(grid: GridSpec, p: KernelParams):
    """Multiplier tables (g, gx, gz-y) shared by forward and adjoint.

    Returns (g, mx, my) with bz_hat = mx*jx_hat + my*jy_hat.  The k = 0 and
    Nyquist entries of mx, my are zero (realness; see module docstring).
    """
    f = np.fft.fftfreq(grid.n, d=grid.delta_x)
    ky, kx = np.meshgrid(f, f, indexing="ij")
    k_mag = np.hypot(kx, ky)
    g = kernel_fourier(k_mag, p)

    with np.errstate(invalid="ignore", divide="ignore"):
        ux = np.where(k_mag > 0, kx / k_mag, 0.0)
        uy = np.where(k_mag > 0, ky / k_mag, 0.0)
    half = grid.n // 2
    for u in (ux, uy):
        u[half, :] = 0.0
        u[:, half] = 0.0
    mx = -1j * g * uy
    my = 1j * g * ux
    return g, mx, my


def apply_forward(j: CurrentField, p: KernelParams) -> FieldMap3:
    """Apply the discrete forward operator: current field -> field map.

    The output is real to within 1e-12 of its norm; the imaginary residue is
    discarded.
    """
    g, mx, my = _spectral_tables(j.grid, p)
    jx_hat = np.fft.fft2(j.jx)
    jy_hat = np.fft.fft2(j.jy)
    bx = np.fft.ifft2(g * jy_hat).real
    by = np.fft.ifft2(-g * jx_hat).real
    bz = np.fft.ifft2(mx * jx_hat + my * jy_hat).real
    return FieldMap3(j.grid, bx, by, bz, z=p.z, d=p.d)


def apply_adjoint(b: FieldMap3, p: KernelParams | None = None) -> CurrentField:
    """Exact adjoint of :func:`apply_forward` under real Euclidean products.

    Kernel parameters default to the z, d metadata carried by ``b``.
    """
    if p is None:
        p = KernelParams(z=b.z, d=b.d)
    g, mx, my = _spectral_tables(b.grid, p)
    bx_hat = np.fft.fft2(b.bx)
    by_hat = np.fft.fft2(b.by)
    bz_hat = np.fft.fft2(b.bz)
    # Conjugate-transposed multiplier block; g is real.
    jx_hat = -g * by_hat + np.conj(mx) * bz_hat
    jy_hat = g * bx_hat + np.conj(my) * bz_hat
    jx = np.fft.ifft2(jx_hat).real
    jy = np.fft.ifft2(jy_hat).real
    return CurrentField(b.grid, jx, jy)


def add_noise(b: FieldMap3, nz: NoiseSpec) -> FieldMap3:
    """Add i.i.d. zero-mean Gaussian noise to every sample of every component.

    Deterministic for a fixed seed.
    """
    if nz.sigma == 0.0:
        return b
    rng = np.random.default_rng(nz.seed)
    shape = (3, b.grid.n, b.grid.n)
    eta = rng.standard_normal(shape) * nz.sigma
    return FieldMap3(b.grid, b.bx + eta[0], b.by + eta[1], b.bz + eta[2], z=b.z, d=b.d)
