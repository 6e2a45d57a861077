"""Periodized fast wavelet transforms, 1-D and fully separable 2-D.

Analysis correlates with the dual filters and downsamples on the even
phase; synthesis upsamples and convolves with the primal filters.  The
multi-level layout packs bands as ``[a_L | d_L | d_(L-1) | ... | d_1]``
(coarsest first).  The adjoint of synthesis is analysis run with the primal
filters, which the solver uses for gradients.

All routines operate along a chosen axis of a 2-D array so the fully
separable (anisotropic) transform is two passes of the same machinery.
"""

from __future__ import annotations

import numpy as np

from mci.wavelets.filters import FilterBank, FirFilter


def _down(x: np.ndarray, f: FirFilter, axis: int) -> np.ndarray:
    """y[k] = sum_m f[m] * x[(2k + m + offset) mod n] along axis."""
    n = x.shape[axis]
    base = np.arange(n // 2) * 2
    out = None
    for m, c in enumerate(f.coeffs):
        idx = (base + m + f.offset) % n
        term = c * np.take(x, idx, axis=axis)
        out = term if out is None else out + term
    return out


def _up(a: np.ndarray, f: FirFilter, axis: int, n: int) -> np.ndarray:
    """x[2k + m + offset] += f[m] * a[k] along axis, circular.

    Tap t contributes c * a[k] at position 2k + t, i.e. a circular shift by
    (t - parity)/2 within the output phase t mod 2; shifts act on the
    half-length band, not the upsampled signal.
    """
    shape = list(a.shape)
    shape[axis] = n
    out = np.zeros(shape)
    half = [np.zeros(a.shape), np.zeros(a.shape)]
    for m, c in enumerate(f.coeffs):
        t = m + f.offset
        p = t % 2
        half[p] += c * np.roll(a, (t - p) // 2, axis=axis)
    for p in (0, 1):
        sl = [slice(None)] * a.ndim
        sl[axis] = slice(p, n, 2)
        out[tuple(sl)] = half[p]
    return out


def analyze_step(x: np.ndarray, bank: FilterBank, axis: int, primal: bool = False):
    """One analysis level; ``primal=True`` runs the synthesis adjoint."""
    lo, hi = (bank.h, bank.g) if primal else (bank.h_dual, bank.g_dual)
    return _down(x, lo, axis), _down(x, hi, axis)


def synth_step(a: np.ndarray, d: np.ndarray, bank: FilterBank, axis: int) -> np.ndarray:
    """One synthesis level from approximation and detail bands."""
    n = 2 * a.shape[axis]
    return _up(a, bank.h, axis, n) + _up(d, bank.g, axis, n)


def band_bounds(n: int, levels: int) -> list[tuple[int, int]]:
    """Packed band boundaries: scaling band then details coarsest to finest."""
    bounds = [(0, n >> levels)]
    for lev in range(levels, 0, -1):
        w = n >> lev
        bounds.append((w, 2 * w))
    return bounds


def forward_1d(x: np.ndarray, bank: FilterBank, levels: int, axis: int,
               primal: bool = False) -> np.ndarray:
    """Multi-level periodic analysis along ``axis`` into the packed layout."""
    n = x.shape[axis]
    if n % (1 << levels) != 0:
        raise ValueError(f"axis length {n} not divisible by 2^{levels}")
    out = np.array(x, dtype=float, copy=True)
    stop = n
    for _ in range(levels):
        head = [slice(None)] * x.ndim
        head[axis] = slice(0, stop)
        a, d = analyze_step(out[tuple(head)], bank, axis, primal)
        half = stop // 2
        sa = [slice(None)] * x.ndim
        sa[axis] = slice(0, half)
        sd = [slice(None)] * x.ndim
        sd[axis] = slice(half, stop)
        out[tuple(sa)] = a
        out[tuple(sd)] = d
        stop = half
    return out


def inverse_1d(w: np.ndarray, bank: FilterBank, levels: int, axis: int) -> np.ndarray:
    """Multi-level periodic synthesis from the packed layout."""
    n = w.shape[axis]
    out = np.array(w, dtype=float, copy=True)
    width = n >> levels
    for _ in range(levels):
        sa = [slice(None)] * w.ndim
        sa[axis] = slice(0, width)
        sd = [slice(None)] * w.ndim
        sd[axis] = slice(width, 2 * width)
        x = synth_step(out[tuple(sa)], out[tuple(sd)], bank, axis)
        st = [slice(None)] * w.ndim
        st[axis] = slice(0, 2 * width)
        out[tuple(st)] = x
        width *= 2
    return out


def aniso_forward(img: np.ndarray, bank: FilterBank, levels: int,
                  primal: bool = False) -> np.ndarray:
    """Fully separable 2-D analysis: full 1-D transform per axis."""
    out = forward_1d(img, bank, levels, axis=1, primal=primal)
    return forward_1d(out, bank, levels, axis=0, primal=primal)


def aniso_inverse(coeffs: np.ndarray, bank: FilterBank, levels: int) -> np.ndarray:
    """Inverse of :func:`aniso_forward` (dual-analysis variant)."""
    out = inverse_1d(coeffs, bank, levels, axis=0)
    return inverse_1d(out, bank, levels, axis=1)


def aniso_synth_adjoint(img: np.ndarray, bank: FilterBank, levels: int) -> np.ndarray:
    """Adjoint of :func:`aniso_inverse`: analysis with the primal filters."""
    return aniso_forward(img, bank, levels, primal=True)
