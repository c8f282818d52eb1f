"""Weyl dimensions d(k) and the Fourier multiplier they define.

The degree-k spherical harmonics on S^n span a space of dimension

    d(k) = (2k + n - 1) * C(k + n - 2, k) / (n - 1)        (n >= 2)

with the degenerate sequence 1, 2, 2, ... for the circle. The table is built
from the factored product d(k) = (1 + 2k/(n-1)) * prod_{j<n-1} (1 + k/j) in
exact rational arithmetic and cross-checked against the binomial form.

Read as a multiplier k -> d(k) on the Fourier modes of transform samples
along the scaling circle, these numbers implement the inversion operator:
its value at a cone point is sum_k d(k) c_k, the multiplied Fourier series
evaluated at angle zero.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import tolerances
from .errors import AliasingSuspected, NegativeModeEnergy
from .quadrature import fixed_sum


def weyl_dimension(n, k):
    """Closed-form d(k), independent of the factored table construction."""
    if n == 1:
        return 1 if k == 0 else 2
    num = (2 * k + n - 1) * comb(k + n - 2, k)
    assert num % (n - 1) == 0
    return num // (n - 1)


@dataclass(frozen=True, eq=False)
class DimensionTable:
    """d(0..kmax) for S^n together with the linear factors producing them."""

    n: int
    kmax: int
    dims: tuple
    factors: tuple  # (slope, intercept) Fraction pairs; product over k gives d(k)

    @property
    def multiplier(self):
        return np.asarray(self.dims, dtype=float)

    def factor_strings(self):
        """Human-readable factors, e.g. ['1 + 2k'] for n=2."""
        out = []
        for slope, intercept in self.factors:
            if slope.denominator == 1:
                coef = "k" if slope == 1 else f"{slope.numerator}k"
            elif slope.numerator == 1:
                coef = f"k/{slope.denominator}"
            else:
                coef = f"{slope.numerator}k/{slope.denominator}"
            out.append(f"{intercept} + {coef}")
        return out


def dimension_table(n, kmax):
    """Build the dimension table for S^n up to degree kmax.

    The factored product is evaluated in Fractions so the integrality of
    every d(k) is exact, and each entry is checked against the independent
    binomial closed form.
    """
    if n < 1:
        raise ValueError("sphere dimension must be at least 1")
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    if n == 1:
        # degenerate case: one constant plus a sine/cosine pair per degree
        dims = tuple(weyl_dimension(1, k) for k in range(kmax + 1))
        return DimensionTable(1, kmax, dims, ())
    factors = [(Fraction(2, n - 1), Fraction(1))]
    factors += [(Fraction(1, j), Fraction(1)) for j in range(1, n - 1)]
    dims = []
    for k in range(kmax + 1):
        value = Fraction(1)
        for slope, intercept in factors:
            value *= intercept + slope * k
        assert value.denominator == 1
        assert value == weyl_dimension(n, k)
        dims.append(int(value))
    return DimensionTable(n, kmax, tuple(dims), tuple(factors))


def circle_spectrum(values):
    """Fourier coefficients of samples on the uniform circle grid.

    values may carry leading batch axes; the transform runs along the last
    axis. Index j holds mode j for j <= M/2 and mode j - M above that.
    """
    values = np.asarray(values, dtype=complex)
    return np.fft.fft(values, axis=-1) / values.shape[-1]


def negative_mode_fraction(coeffs):
    """Fraction of |c| mass sitting at strictly negative frequencies."""
    m = coeffs.shape[-1]
    neg = np.abs(coeffs[..., m // 2 + 1 :]).sum(axis=-1)
    total = np.abs(coeffs).sum(axis=-1)
    return neg / np.where(total == 0.0, 1.0, total)


def offband_peak_ratio(coeffs, kmax):
    """Largest coefficient between the retained band and its mirror image.

    Modes kmax+1 .. M/2 must be empty when the samples really are a degree
    <= kmax series; energy there means content beyond the band has aliased
    into the measurement. Returned relative to the overall peak.
    """
    m = coeffs.shape[-1]
    if kmax + 1 > m // 2:
        return np.zeros(coeffs.shape[:-1])
    gap = np.abs(coeffs[..., kmax + 1 : m // 2 + 1]).max(axis=-1)
    peak = np.abs(coeffs).max(axis=-1)
    return gap / np.where(peak == 0.0, 1.0, peak)


def apply_multiplier(samples, table, tol=None, strict=True):
    """Apply the inversion multiplier to circle samples of the transform.

    Computes the Fourier coefficients c_k of theta -> fhat(e^{i theta} zeta)
    and returns sum_{k <= kmax} d(k) c_k. With strict=True the spectrum is
    required to look like a clean nonnegative band: off-band energy raises
    AliasingSuspected and negative-frequency energy raises
    NegativeModeEnergy.
    """
    t = tolerances.DEFAULT if tol is None else tol
    values = np.asarray(samples.values, dtype=complex)
    m = values.shape[-1]
    if values.ndim != 1:
        raise ValueError("apply_multiplier expects a single sample vector")
    if m < 2 * table.kmax + 2:
        raise ValueError(
            f"need at least 2*kmax+2 = {2 * table.kmax + 2} circle samples, got {m}"
        )
    angles = np.asarray(samples.angles)
    if np.max(np.abs(angles - 2.0 * np.pi * np.arange(m) / m)) > 1e-12:
        raise ValueError("samples must sit on the uniform circle grid")
    coeffs = circle_spectrum(values)
    if strict:
        ratio = float(offband_peak_ratio(coeffs, table.kmax))
        if ratio > t.aliasing:
            raise AliasingSuspected(
                f"off-band peak ratio {ratio:.3e} exceeds {t.aliasing:.1e}"
            )
        fraction = float(negative_mode_fraction(coeffs))
        if fraction > t.negative_mode:
            raise NegativeModeEnergy(
                f"negative-mode fraction {fraction:.3e} exceeds {t.negative_mode:.1e}"
            )
    return fixed_sum(table.multiplier * coeffs[: table.kmax + 1])
