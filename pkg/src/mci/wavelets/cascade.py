"""Dyadic evaluation of scaling and wavelet functions from filter banks.

The two-scale relation determines a scaling function exactly at the
integers (eigenvector of the downsampled filter matrix) and then at every
dyadic rational by recursion, so no iterative approximation is involved.
Used as the validation oracle for the differentiation-linked families and
for function-level biorthogonality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mci.wavelets.filters import FirFilter


@dataclass(frozen=True)
class DyadicSamples:
    """Samples of a function on the lattice start/2^level .. step 1/2^level."""

    values: np.ndarray
    start: int  # position of values[0] in units of 2^-level
    level: int

    @property
    def step(self) -> float:
        return 0.5**self.level

    def grid(self) -> np.ndarray:
        return (self.start + np.arange(len(self.values))) * self.step


def scaling_integer_samples(h: FirFilter) -> DyadicSamples:
    """Exact values of the scaling function at the integers.

    phi is supported on [lo, hi] = support(h); its integer samples solve
      phi(k) = sqrt(2) * sum_m h[m] phi(2k - m),
    the eigenvalue-1 eigenvector of T[k, l] = sqrt(2)*h[2k - l], normalized
    by partition of unity sum_k phi(k) = 1.
    """
    lo, hi = h.support
    ks = np.arange(lo + 1, hi)  # phi vanishes at the support endpoints
    m = len(ks)
    if m == 0:
        return DyadicSamples(np.array([1.0]), lo, 0)
    t = np.zeros((m, m))
    for a, k in enumerate(ks):
        for b, l in enumerate(ks):
            tap = 2 * k - l
            if h.offset <= tap <= h.offset + len(h) - 1:
                t[a, b] = np.sqrt(2.0) * h.coeffs[tap - h.offset]
    # eigenvalue-1 eigenvector via the null space of (T - I)
    u, s, vt = np.linalg.svd(t - np.eye(m))
    v = vt[-1]
    total = v.sum()
    if abs(total) < 1e-12:
        raise ValueError("degenerate scaling function: integer samples sum to zero")
    v = v / total
    vals = np.zeros(m + 2)
    vals[1:-1] = v
    return DyadicSamples(vals, lo, 0)


def refine(samples: DyadicSamples, h: FirFilter) -> DyadicSamples:
    """One dyadic refinement: values at step 2^-(level+1) from 2^-level.

    phi(i / 2^(r+1)) = sqrt(2) * sum_m h[m] phi(i/2^r - m) applied on the
    integer index lattice i (position i/2^(r+1)).
    """
    r = samples.level
    lo = samples.start
    hi = lo + len(samples.values) - 1
    new_lo, new_hi = 2 * lo, 2 * hi
    out = np.zeros(new_hi - new_lo + 1)
    for m_idx, c in enumerate(h.coeffs):
        m = h.offset + m_idx
        shift = new_lo - m * 2**r  # old index aligned with out[0]
        a = max(lo, shift)
        b = min(hi, shift + len(out) - 1)
        if a > b:
            continue
        out[a - shift : b - shift + 1] += np.sqrt(2.0) * c * samples.values[a - lo : b - lo + 1]
    return DyadicSamples(out, new_lo, r + 1)


def sample_scaling(h: FirFilter, level: int) -> DyadicSamples:
    """Scaling function on the dyadic grid of the given refinement level."""
    s = scaling_integer_samples(h)
    for _ in range(level):
        s = refine(s, h)
    return s


def sample_wavelet(h: FirFilter, g: FirFilter, level: int) -> DyadicSamples:
    """Wavelet on the dyadic grid: psi(x) = sqrt(2) * sum_m g[m] phi(2x - m).

    Returned at step 2^-level; requires level >= 1.
    """
    if level < 1:
        raise ValueError("wavelet sampling needs level >= 1")
    phi = sample_scaling(h, level - 1)
    r = level - 1
    glo, ghi = g.support
    plo = phi.start
    phi_hi = plo + len(phi.values) - 1
    new_lo = glo * 2**r + plo
    new_hi = ghi * 2**r + phi_hi
    out = np.zeros(new_hi - new_lo + 1)
    for m_idx, c in enumerate(g.coeffs):
        m = g.offset + m_idx
        shift = m * 2**r + plo - new_lo
        out[shift : shift + len(phi.values)] += np.sqrt(2.0) * c * phi.values
    # psi(x) built from phi(2x - m): index i at step 2^-(r+1) holds
    # sqrt(2)*sum g[m] phi((i - m*2^r) / 2^r) evaluated at argument 2x - m.
    return DyadicSamples(out, new_lo, level)


def biorthogonality_products(h: FirFilter, h_dual: FirFilter) -> dict[int, float]:
    """Exact inner products m_k = <phi, dphi(. - k)> via the transition operator.

    The products satisfy m_k = sum_{a,b} h[a] dh[b] m_{2k + b - a} and
    sum_k m_k = 1; solved as an eigenvalue-1 eigenvector.
    """
    lo1, hi1 = h.support
    lo2, hi2 = h_dual.support
    kmin = lo1 - hi2
    kmax = hi1 - lo2
    ks = np.arange(kmin, kmax + 1)
    idx = {int(k): i for i, k in enumerate(ks)}
    t = np.zeros((len(ks), len(ks)))
    for i, k in enumerate(ks):
        for a_i, ca in enumerate(h.coeffs):
            a = h.offset + a_i
            for b_i, cb in enumerate(h_dual.coeffs):
                b = h_dual.offset + b_i
                kk = 2 * k + b - a
                j = idx.get(int(kk))
                if j is not None:
                    t[i, j] += ca * cb
    u, s, vt = np.linalg.svd(t - np.eye(len(ks)))
    v = vt[-1]
    total = v.sum()
    if abs(total) < 1e-12:
        raise ValueError("degenerate biorthogonality system")
    v = v / total
    return {int(k): float(v[i]) for i, k in enumerate(ks)}
