"""Magnetic current imaging: reconstruct 2-D current densities from vector field maps.

The package provides the forward current-to-field operator and its adjoint,
a cosine-tapered Fourier reconstruction baseline, an L1-curl regularized
inversion on a divergence-free wavelet basis, and a finite-volume Poisson
simulator for generating ground-truth current distributions.
"""

from mci.grid import (
    GridSpec,
    ScalarMap,
    CurrentField,
    FieldMap3,
    wavenumber_grid,
    rel_l2_error,
    spectral_divergence,
)
from mci.forward import (
    KernelParams,
    NoiseSpec,
    kernel_fourier,
    kernel_spatial,
    apply_forward,
    apply_adjoint,
    add_noise,
)

__version__ = "0.1.0"

__all__ = [
    "GridSpec",
    "ScalarMap",
    "CurrentField",
    "FieldMap3",
    "wavenumber_grid",
    "rel_l2_error",
    "spectral_divergence",
    "KernelParams",
    "NoiseSpec",
    "kernel_fourier",
    "kernel_spatial",
    "apply_forward",
    "apply_adjoint",
    "add_noise",
]
