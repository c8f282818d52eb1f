"""Zonal functions: fiber averages of kernel powers and their classical form.

Averaging (zeta . y)^k over the fiber of horospheres through x produces the
zonal function phi_k(y; x). It depends on y only through t = x . y and is
normalized to 1 at t = 1. Classically this is the Laplace integral: the
average equals the normalized Gegenbauer polynomial of index (n-1)/2 for
n >= 2 and the Chebyshev polynomial cos(k arccos t) on the circle. Both
routes are implemented so each can check the other.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ImaginaryResidual
from .geometry import fiber_frame
from .quadrature import fiber_rule


def zonal_recurrence(n, k, t):
    """Normalized zonal polynomial of degree k on S^n at t = cos(distance).

    Evaluated by the Gegenbauer three-term recurrence (Chebyshev for n=1),
    dividing by the value at t=1 so the result is 1 at the center. Accepts
    scalar or array t in [-1, 1].
    """
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + 1e-12):
        raise ValueError("t must lie in [-1, 1]")
    scalar = t.ndim == 0
    t = np.atleast_1d(np.clip(t, -1.0, 1.0))
    if k == 0:
        out = np.ones_like(t)
    elif n == 1:
        prev, cur = np.ones_like(t), t.copy()
        for _ in range(k - 1):
            prev, cur = cur, 2.0 * t * cur - prev
        out = cur
    else:
        lam = 0.5 * (n - 1)
        # raw values at t and at 1 through the same recurrence, then divide
        prev, cur = np.ones_like(t), 2.0 * lam * t
        prev1, cur1 = 1.0, 2.0 * lam
        for j in range(2, k + 1):
            prev, cur = cur, (2.0 * (j + lam - 1.0) * t * cur - (j + 2.0 * lam - 2.0) * prev) / j
            prev1, cur1 = cur1, (2.0 * (j + lam - 1.0) * cur1 - (j + 2.0 * lam - 2.0) * prev1) / j
        out = cur / cur1
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class ZonalFunction:
    """Callable zonal polynomial of fixed dimension and degree."""

    n: int
    k: int

    def __call__(self, t):
        return zonal_recurrence(self.n, self.k, t)


def zonal_by_average(n, k, x, y, fiber_resolution, imag_tol=1e-12):
    """phi_k(y; x) computed as the fiber average of (zeta . y)^k.

    The average is real by the eta -> -eta symmetry of the fiber; the
    imaginary part is checked against `imag_tol` before being dropped.
    Resolution must be at least 2k+2 so the average is an exact quadrature.
    """
    if n != x.n or n != y.n:
        raise ValueError("dimension mismatch between n and the points")
    if n > 1 and fiber_resolution < 2 * k + 2:
        raise ValueError("fiber resolution must be at least 2k+2")
    rule = fiber_rule(fiber_frame(x), fiber_resolution)
    value = rule.integrate((rule.nodes @ y.coords) ** k)
    if abs(value.imag) > imag_tol:
        raise ImaginaryResidual(
            f"fiber average came back with Im = {value.imag:.3e}"
        )
    return value.real


def orthogonality_check(n, k, kp, rule):
    """Integral of phi_k(t) phi_kp(t) over the sphere, t = first coordinate.

    The exact value is 0 for k != kp and 1/d(k) on the diagonal; the caller
    compares. The rule must integrate degree k+kp polynomials exactly.
    """
    t = rule.nodes[:, 0]
    return rule.integrate(zonal_recurrence(n, k, t) * zonal_recurrence(n, kp, t))
