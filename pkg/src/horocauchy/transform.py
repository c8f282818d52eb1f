"""The forward Cauchy transform, its Fourier components, and boundary values.

For f on the sphere and zeta on the isotropic cone with sup_x |zeta . x| < 1,

    fhat(zeta) = integral of f(x) / (1 - zeta . x)  d nu(x).

Expanding the kernel geometrically splits fhat into the components
ftilde(zeta; k) = integral of f(x) (zeta . x)^k d nu(x), homogeneous of
degree k under cone scaling, and fhat(zeta) = sum_k ftilde(zeta; k). On the
boundary sphere of the domain the integral is singular; boundary values are
obtained either by synthesizing the component series (exact for band-limited
f) or by Abel regularization, evaluating at interior radii r*zeta and
extrapolating r -> 1.

The kernel is implemented in its single-factor form; for the higher-rank
analogues the transform would carry one factor per restricted root, but the
sphere needs exactly one.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import tolerances
from .errors import (
    AbelDivergence,
    ConfigError,
    NearSingularWarning,
    NotOnBoundary,
    OutsideTransformDomain,
)
from .geometry import ConePoint, in_transform_domain, on_boundary
from .quadrature import fixed_sum, sphere_rule


@dataclass(frozen=True, eq=False)
class BandLimitedFunction:
    """A real function f(x) = Re( sum_m c_m (zeta_m . x)^{k_m} ) on S^n.

    Each power of an isotropic linear form restricted to the sphere is a
    spherical harmonic of that exact degree, so the band limit is simply the
    largest k_m.
    """

    terms: tuple  # of (degree, ConePoint, complex coefficient)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("need at least one term")

    @property
    def n(self):
        return self.terms[0][1].n

    @property
    def band_limit(self):
        return max(k for k, _, _ in self.terms)

    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        out = np.zeros(pts.shape[0])
        for k, zeta, c in self.terms:
            out += (c * (pts @ zeta.values) ** k).real
        return float(out[0]) if single else out

    def rotated(self, rotation):
        """The pullback x -> f(R x); R orthogonal keeps the cone points valid."""
        r = np.asarray(rotation, dtype=float)
        terms = [
            (k, ConePoint(r.T @ z.re, r.T @ z.im), c) for k, z, c in self.terms
        ]
        return BandLimitedFunction(tuple(terms))

    @classmethod
    def constant(cls, n, value=1.0):
        e = np.zeros(n + 1)
        xi, eta = e.copy(), e.copy()
        xi[0], eta[1] = 1.0, 1.0
        return cls(((0, ConePoint(xi, eta), complex(value)),))

    @classmethod
    def coordinate(cls, n, j):
        """The restriction of x_j, as the real part of an isotropic form."""
        xi = np.zeros(n + 1)
        eta = np.zeros(n + 1)
        xi[j] = 1.0
        eta[(j + 1) % (n + 1)] = 1.0
        return cls(((1, ConePoint(xi, eta), 1.0 + 0.0j),))


def forward(f, zeta, rule, tol=None):
    """The transform fhat(zeta) by quadrature over the sphere rule.

    zeta must lie strictly inside the transform domain (margin from the
    tolerance record); close to the boundary a NearSingularWarning reports
    that the fixed rule is losing accuracy.
    """
    t = tolerances.DEFAULT if tol is None else tol
    if not in_transform_domain(zeta, margin=t.forward_margin):
        raise OutsideTransformDomain(
            f"sup |zeta . x| = {zeta.radius:.6f}; the kernel quadrature needs "
            f"margin {t.forward_margin:.1e}"
        )
    if 1.0 - zeta.radius < t.near_singular:
        warnings.warn(
            "kernel evaluated near the singular edge; raise the rule "
            "resolution or use boundary_values",
            NearSingularWarning,
            stacklevel=2,
        )
    values = f(rule.nodes) if callable(f) else np.asarray(f)
    kernel = 1.0 / (1.0 - rule.nodes @ zeta.values)
    return fixed_sum(rule.weights * values * kernel)


def fourier_component(f, zeta, k, rule):
    """The degree-k component ftilde(zeta; k) = integral of f(x)(zeta . x)^k."""
    values = f(rule.nodes) if callable(f) else np.asarray(f)
    return fixed_sum(rule.weights * values * (rule.nodes @ zeta.values) ** k)


def fourier_components(f, zeta, kmax, rule):
    """All components for k = 0..kmax, sharing the kernel powers."""
    values = f(rule.nodes) if callable(f) else np.asarray(f)
    wf = rule.weights * values
    h = rule.nodes @ zeta.values
    out = np.empty(kmax + 1, dtype=complex)
    p = np.ones_like(h)
    out[0] = p @ wf
    for k in range(1, kmax + 1):
        p = p * h
        out[k] = p @ wf
    return out


def series_residual(f, zeta, kmax, rule, tol=None):
    """|fhat(zeta) - sum_{k<=kmax} ftilde(zeta; k)|.

    Vanishes to quadrature precision once kmax reaches the band limit of f;
    below that it equals the size of the first missing component.
    """
    total = forward(f, zeta, rule, tol=tol)
    partial = fixed_sum(fourier_components(f, zeta, kmax, rule))
    return abs(total - partial)


@dataclass(frozen=True, eq=False)
class TransformSamples:
    """Values of fhat along the scaling circle through a cone point."""

    base: ConePoint
    angles: np.ndarray
    values: np.ndarray
    method: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not np.all(np.isfinite(self.values)):
            raise ValueError("transform samples must be finite")


@dataclass(frozen=True)
class AbelSchedule:
    """Interior radii used to extrapolate circle values to radius 1."""

    radii: tuple

    def __post_init__(self):
        r = tuple(float(x) for x in self.radii)
        if len(r) < 2 or any(not 0.0 < x < 1.0 for x in r) or sorted(r) != list(r):
            raise ValueError("radii must be an increasing tuple inside (0, 1)")
        object.__setattr__(self, "radii", r)


# The quick default: three radii halving the distance to the edge, i.e. a
# two-stage Richardson step in h = 1 - r. Exact through band limit 2 and
# adequate to roughly 1e-4 beyond; the residual estimate reports when it is
# out of its depth.
PINNED_SCHEDULE = AbelSchedule((0.90, 0.95, 0.975))


def exactness_schedule(kmax, lo=0.5, hi=0.9):
    """Radii whose polynomial extrapolation is exact through degree kmax.

    Along the ray r -> fhat(r e^{i theta} zeta), a band limit of kmax makes
    the value a polynomial of degree kmax in r, so interpolating at kmax+2
    points and evaluating at r=1 is exact and leaves a meaningful residual
    estimate. Chebyshev spacing on [lo, hi] keeps the extrapolation constant
    modest, and staying well inside the domain keeps the kernel quadrature
    cheap.
    """
    count = kmax + 2
    j = np.arange(count)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    radii = mid + half * np.cos((2 * j + 1) * np.pi / (2 * count))
    return AbelSchedule(tuple(sorted(float(r) for r in radii)))


def extrapolate_to_zero(h, values):
    """Neville evaluation at 0 of the polynomial through (h_i, values_i).

    values may carry trailing axes (first axis runs over h). Returns the
    limit and a residual estimate, the distance between the two deepest
    tableau entries.
    """
    h = np.asarray(h, dtype=float)
    table = [np.asarray(v, dtype=complex) for v in values]
    if len(table) != h.shape[0] or len(table) < 2:
        raise ValueError("need one value per h and at least two of them")
    best_prev = table[0]
    for j in range(1, len(table)):
        table = [
            (h[i] * table[i + 1] - h[i + j] * table[i]) / (h[i] - h[i + j])
            for i in range(len(table) - 1)
        ]
        if j == len(h) - 2:
            best_prev = table[0]
    residual = float(np.max(np.abs(table[0] - best_prev)))
    return table[0], residual


def resolution_for_radius(rho, n=2, floor=16, scale=4.0):
    """Heuristic sphere-rule resolution for kernel quadrature at sup|h| = rho.

    On S^1 the uniform rule aliases the geometric kernel tail, which decays
    like rho^M, so M comes from rho^M <= 1e-12 * (1 - rho). For n >= 2 the
    Gauss factors converge spectrally and the integrand peak of width
    ~(1 - rho) sets the count instead. Callers cap the result and report the
    cap.
    """
    rho = min(max(float(rho), 0.0), 1.0 - 1e-12)
    if n == 1:
        if rho < 0.05:
            return floor
        need = np.log(1e-12 * (1.0 - rho)) / np.log(rho)
        return max(floor, int(np.ceil(need)))
    return floor + int(np.ceil(scale / (1.0 - rho)))


def default_resolution_cap(n):
    """Largest per-radius rule resolution the radial methods pick on their own.

    S^1 nodes are one-dimensional and cheap; the S^3 product rule grows like
    2 * res^3 and a deep-radius request would otherwise not fit in memory.
    """
    return {1: 4096, 2: 512, 3: 64}.get(n, 64)


def circle_values(
    f,
    zeta,
    m,
    method="spectral",
    kmax=None,
    rule=None,
    schedule=None,
    resolution_cap=None,
    tol=None,
    strict=True,
):
    """Samples of fhat(e^{i theta} zeta) on m uniform angles.

    method="spectral" synthesizes the component series (requires kmax; exact
    for band-limited f once kmax covers it). method="abel" evaluates the
    kernel quadrature at interior radii from `schedule` (default the pinned
    three-radius step) and extrapolates; method="full-numerical" does the
    same on the exactness schedule for `kmax`, never consulting the structure
    of f. Works for interior zeta as well as boundary zeta; boundary_values
    adds the boundary membership check.
    """
    t = tolerances.DEFAULT if tol is None else tol
    n = zeta.n
    angles = 2.0 * np.pi * np.arange(m) / m
    meta = {}
    if method == "spectral":
        if kmax is None:
            raise ConfigError("spectral circle values need kmax")
        if m < 2 * kmax + 2:
            raise ConfigError("need at least 2*kmax+2 angles")
        if rule is None:
            rule = sphere_rule(n, max(24, 2 * kmax + 4))
        comps = fourier_components(f, zeta, kmax, rule)
        values = np.exp(1j * np.outer(angles, np.arange(kmax + 1))) @ comps
        meta.update(kmax=kmax, resolution=rule.nodes.shape[0])
    elif method in ("abel", "full-numerical"):
        if schedule is None:
            if method == "abel":
                schedule = PINNED_SCHEDULE
            else:
                if kmax is None:
                    raise ConfigError("the full-numerical schedule needs kmax")
                schedule = exactness_schedule(kmax)
        if not callable(f) and rule is None:
            raise ConfigError("sampled integrand values need an explicit rule")
        if resolution_cap is None:
            resolution_cap = default_resolution_cap(n)
        radii = np.asarray(schedule.radii)
        rho = zeta.radius
        phase = np.exp(1j * angles)
        stack = np.empty((radii.shape[0], m), dtype=complex)
        resolutions = []
        capped = False
        for i, r in enumerate(radii):
            if rule is None:
                want = resolution_for_radius(r * rho, n)
                res = min(want, resolution_cap)
                capped = capped or want > res
                resolutions.append(res)
                step_rule = sphere_rule(n, res)
            else:
                resolutions.append(len(rule))
                step_rule = rule
            samples = f(step_rule.nodes) if callable(f) else np.asarray(f)
            wf = step_rule.weights * samples
            hvals = step_rule.nodes @ zeta.values
            stack[i] = (1.0 / (1.0 - np.outer(r * phase, hvals))) @ wf
        limits, residual = extrapolate_to_zero(1.0 - radii, stack)
        if strict and residual > t.abel_residual:
            raise AbelDivergence(
                f"extrapolation residual {residual:.3e} exceeds "
                f"{t.abel_residual:.1e}; deepen the radius schedule or raise "
                "the quadrature resolution"
            )
        values = limits
        meta.update(
            radii=tuple(float(r) for r in radii),
            resolutions=tuple(resolutions),
            residual=residual,
            capped=capped,
        )
    else:
        raise ConfigError(f"unknown boundary method {method!r}")
    return TransformSamples(zeta, angles, values, method, meta)


def boundary_values(f, zeta, m, method="spectral", **kwargs):
    """Circle samples of the boundary values of fhat at a boundary cone point.

    The integral defining fhat is singular on the boundary; these samples
    realize its regular boundary values. See circle_values for the methods
    and keyword knobs.
    """
    tol = kwargs.get("tol")
    t = tolerances.DEFAULT if tol is None else tol
    if not on_boundary(zeta, tol=t.boundary):
        raise NotOnBoundary(
            f"Delta(xi) = {zeta.radius**2:.8f} is not 1 within {t.boundary:.1e}"
        )
    return circle_values(f, zeta, m, method=method, **kwargs)


def cauchy_riemann_residual(f, zeta, rule, step=1e-4, tol=None):
    """Largest defect of complex differentiability of fhat at zeta.

    fhat restricted to holomorphic curves on the cone (coordinate plane
    rotations and the scaling ray) must have equal centered differences in
    real and imaginary parameter directions. Returns the max over all curves
    of |dF/ds_real - dF/ds_imag| at the given step.
    """
    from .geometry import rotate_in_plane, scale

    def diff(curve):
        along_real = (curve(step) - curve(-step)) / (2.0 * step)
        along_imag = (curve(1j * step) - curve(-1j * step)) / (2j * step)
        return abs(along_real - along_imag)

    d = zeta.re.shape[0]
    worst = 0.0
    for i in range(d):
        for j in range(i + 1, d):
            worst = max(
                worst,
                diff(lambda s, i=i, j=j: forward(
                    f, rotate_in_plane(zeta, i, j, s), rule, tol=tol
                )),
            )
    worst = max(
        worst, diff(lambda s: forward(f, scale(zeta, np.exp(s)), rule, tol=tol))
    )
    return worst
