"""Biorthogonal spline filter banks linked by differentiation.

The base family uses the cubic B-spline as primal scaling function (C^2,
smooth enough to be differentiated twice) with the matching spline dual of
four vanishing moments.  From a family whose primal scaling function phi1
is smooth enough, a second family (phi0, psi0 and duals) exists whose
functions satisfy

    d/dx phi1(x)  = phi0(x) - phi0(x - 1)
    d/dx dphi0(x) = dphi1(x + 1) - dphi1(x)
    psi1(x)       = 4 * integral_-inf^x psi0
    dpsi0(x)      = -4 * integral_-inf^x dpsi1

(d* marking dual functions).  In transfer-function form these relations
are exact rational operations on the FIR filters:

    H0(z)  = 2 * H1(z) / (1 + z^-1)         G0(z)  = G1(z) * (1 - z^-1) / 2
    Hd0(z) = Hd1(z) * (1 + z) / 2           Gd0(z) = -2 * Gd1(z) / (z - 1)

The divisions terminate to FIR filters whenever the primal lowpass has a
zero at z = -1 and the dual highpass a zero at z = +1, which spline
families guarantee.  Perfect reconstruction of the derived bank follows
because both reconstruction identities only involve the products
H*Hd and G*Gd, and those are preserved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

SQRT2 = float(np.sqrt(2.0))


class FamilyError(ValueError):
    """Raised when a family is not closed under the differentiation rules."""


@dataclass(frozen=True)
class FirFilter:
    """FIR filter with taps at integer positions offset .. offset+len-1.

    Transfer function F(z) = sum_m coeffs[m] * z^-(offset + m).
    """

    coeffs: np.ndarray
    offset: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def support(self) -> tuple[int, int]:
        """First and last tap index."""
        return self.offset, self.offset + len(self.coeffs) - 1

    def total(self) -> float:
        return float(np.sum(self.coeffs))

    def convolve(self, other: FirFilter) -> FirFilter:
        return FirFilter(np.convolve(self.coeffs, other.coeffs), self.offset + other.offset)

    def add(self, other: FirFilter) -> FirFilter:
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self) - 1, other.offset + len(other) - 1)
        out = np.zeros(hi - lo + 1)
        out[self.offset - lo : self.offset - lo + len(self)] += self.coeffs
        out[other.offset - lo : other.offset - lo + len(other)] += other.coeffs
        return FirFilter(out, lo)

    def divide(self, other: FirFilter, tol: float = 1e-9) -> FirFilter:
        """Exact deconvolution; raises FamilyError on a nonzero remainder."""
        num, den = self.coeffs, other.coeffs
        qlen = len(num) - len(den) + 1
        if qlen < 1:
            raise FamilyError("division does not terminate to an FIR filter")
        q = np.zeros(qlen)
        rem = num.astype(float).copy()
        for i in range(qlen):
            q[i] = rem[i] / den[0]
            rem[i : i + len(den)] -= q[i] * den
        if np.max(np.abs(rem)) > tol * max(np.max(np.abs(num)), 1.0):
            raise FamilyError("division does not terminate to an FIR filter")
        return FirFilter(q, self.offset - other.offset)

    def alternate_flip(self) -> FirFilter:
        """Return the filter m -> (-1)^m * self[1 - m] (modulation pairing)."""
        lo, hi = self.support
        taps = np.arange(1 - hi, 1 - lo + 1)
        vals = np.array([(-1.0) ** m * self.coeffs[(1 - m) - lo] for m in taps])
        return FirFilter(vals, int(taps[0]))


@dataclass(frozen=True)
class FilterBank:
    """Primal/dual lowpass and highpass filters of one biorthogonal family.

    Synthesis runs on (h, g); analysis correlates with (h_dual, g_dual).
    Filters are normalized so sum(h) = sqrt(2).
    """

    h: FirFilter
    g: FirFilter
    h_dual: FirFilter
    g_dual: FirFilter


@dataclass(frozen=True)
class FamilyChain:
    """Three differentiation-linked families psi^1, psi^0, psi^-1."""

    fb_plus: FilterBank
    fb_zero: FilterBank
    fb_minus: FilterBank


def _binomial_lowpass(order: int) -> FirFilter:
    """sqrt(2) * ((1 + z^-1)/2)^order, taps at 0..order."""
    coeffs = np.array([comb(order, m) for m in range(order + 1)], dtype=float)
    return FirFilter(SQRT2 * coeffs / 2.0**order, 0)


def spline_bank(primal_order: int = 4, dual_moments: int = 8) -> FilterBank:
    """Biorthogonal spline family.

    The primal lowpass is sqrt(2)*((1+z^-1)/2)^primal_order (causal B-spline
    scaling function); the dual lowpass carries ``dual_moments`` vanishing
    moments via the halfband completion P(s) = sum_{k<m} C(m-1+k, k) s^k at
    s = (2 - z - z^-1)/4, m = (primal_order + dual_moments)/2, shifted so
    the lowpass product is a zero-phase halfband filter.

    The default dual order is chosen for a comfortably continuous dual
    scaling function (Hoelder ~0.8), so the cascade-sampled validation of
    the dual differentiation relations converges pointwise.
    """
    if (primal_order + dual_moments) % 2:
        raise ValueError("primal_order + dual_moments must be even")
    h = _binomial_lowpass(primal_order)
    m = (primal_order + dual_moments) // 2
    s = FirFilter(np.array([-0.25, 0.5, -0.25]), -1)  # sin^2(w/2)
    p = FirFilter(np.array([float(comb(2 * (m - 1), m - 1))]), 0)
    for k in range(m - 2, -1, -1):
        p = p.convolve(s).add(FirFilter(np.array([float(comb(m - 1 + k, k))]), 0))
    h_dual = _binomial_lowpass(dual_moments).convolve(p)
    h_dual = FirFilter(h_dual.coeffs, h_dual.offset - (dual_moments - primal_order) // 2)
    g = h_dual.alternate_flip()
    g_dual = h.alternate_flip()
    return FilterBank(h=h, g=g, h_dual=h_dual, g_dual=g_dual)


def cubic_spline_bank() -> FilterBank:
    """The default family: cubic B-spline primal scaling function."""
    return spline_bank(4, 8)


_DIFF = FirFilter(np.array([0.5, -0.5]), 0)  # (1 - z^-1)/2
_AVG = FirFilter(np.array([0.5, 0.5]), 0)  # (1 + z^-1)/2
_AVG_ADV = FirFilter(np.array([0.5, 0.5]), -1)  # (1 + z)/2
_DIFF_ADV = FirFilter(np.array([-0.5, 0.5]), -1)  # (1 - z)/2 = -(z - 1)/2


def derive_differentiated_family(fb: FilterBank) -> FilterBank:
    """Filter bank of the once-differentiated family.

    Requires the primal scaling function of ``fb`` to be at least C^(1+eps),
    which in filter terms surfaces as exact divisibility below; raises
    :class:`FamilyError` when a division leaves a remainder.
    """
    h0 = fb.h.divide(_AVG)
    h0_dual = fb.h_dual.convolve(_AVG_ADV)
    g0 = fb.g.convolve(_DIFF)
    g0_dual = fb.g_dual.divide(_DIFF_ADV)
    return FilterBank(h=h0, g=g0, h_dual=h0_dual, g_dual=g0_dual)


def make_family_chain(fb_plus: FilterBank | None = None) -> FamilyChain:
    """Derive the psi^0 and psi^-1 families from the base psi^1 family."""
    if fb_plus is None:
        fb_plus = cubic_spline_bank()
    fb_zero = derive_differentiated_family(fb_plus)
    fb_minus = derive_differentiated_family(fb_zero)
    return FamilyChain(fb_plus=fb_plus, fb_zero=fb_zero, fb_minus=fb_minus)
