"""Points of the sphere, the isotropic cone, and boundary fibers.

The sphere X = S^n sits in R^{n+1} with the quadric Delta(x) = sum_j x_j^2.
Horospheres are the intersections of the complexified sphere with hyperplanes
zeta . z = 1, where the parameter zeta = xi + i*eta runs over the isotropic
cone Delta(zeta) = 0. Splitting into real and imaginary parts, the cone
constraints are Delta(xi) = Delta(eta) and xi . eta = 0.

Horospheres with Delta(xi) < 1 miss the real sphere entirely; that open set
is where the Cauchy kernel 1/(1 - zeta . x) is regular, and sup over the
sphere of |zeta . x| equals sqrt(Delta(xi)). On the boundary Delta(xi) = 1
the horosphere touches X in exactly one point, and the horospheres through a
given x form the fiber zeta = x + i*eta with eta a unit vector orthogonal
to x.
"""

import cmath

import numpy as np

from . import tolerances
from .errors import (
    InvalidCone,
    NotInFiber,
    UnsupportedDim,
    ZeroScale,
    ZeroVector,
)


def delta(v):
    """The quadric Delta(v) = v . v (no conjugation; complex for cone points)."""
    v = np.asarray(v)
    return v @ v


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


class SpherePoint:
    """A point of S^n, stored as renormalized ambient coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        c = np.asarray(coords, dtype=float)
        if c.ndim != 1 or c.shape[0] < 2:
            raise UnsupportedDim("sphere points live in R^{n+1} with n >= 1")
        r = np.linalg.norm(c)
        if r == 0.0:
            raise ZeroVector("cannot normalize the zero vector to the sphere")
        object.__setattr__(self, "coords", _frozen(c / r))

    def __setattr__(self, name, value):
        raise AttributeError("SpherePoint is immutable")

    @property
    def n(self):
        return self.coords.shape[0] - 1

    def __repr__(self):
        return f"SpherePoint({np.array2string(self.coords, precision=6)})"


class ConePoint:
    """A nonzero point zeta = xi + i*eta of the isotropic cone.

    Validation happens on construction: the combined defect |Delta(zeta)|
    must not exceed the cone tolerance relative to the Hermitian norm
    |xi|^2 + |eta|^2, which bounds both |Delta(xi) - Delta(eta)| and
    2|xi . eta| at once.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im, tol=None):
        xi = np.asarray(re, dtype=float)
        eta = np.asarray(im, dtype=float)
        if xi.shape != eta.shape or xi.ndim != 1:
            raise InvalidCone("xi and eta must be real vectors of equal length")
        if xi.shape[0] < 2:
            raise UnsupportedDim("cone points live in C^{n+1} with n >= 1")
        scale2 = xi @ xi + eta @ eta
        if scale2 == 0.0:
            raise ZeroVector("the zero vector is excluded from the cone")
        t = tolerances.DEFAULT.cone_constraint if tol is None else tol
        defect = abs(complex(xi @ xi - eta @ eta, 2.0 * (xi @ eta)))
        if defect > t * scale2:
            raise InvalidCone(
                f"|Delta(zeta)| = {defect:.3e} exceeds {t:.1e} * |zeta|^2"
            )
        object.__setattr__(self, "re", _frozen(xi))
        object.__setattr__(self, "im", _frozen(eta))

    def __setattr__(self, name, value):
        raise AttributeError("ConePoint is immutable")

    @property
    def values(self):
        """zeta as a complex vector."""
        return self.re + 1j * self.im

    @property
    def n(self):
        return self.re.shape[0] - 1

    @property
    def radius(self):
        """sqrt(Delta(xi)) = sup over the sphere of |zeta . x|."""
        return float(np.sqrt(self.re @ self.re))

    def __repr__(self):
        return f"ConePoint(re={self.re!r}, im={self.im!r})"


class FiberFrame:
    """An orthonormal basis of x^perp, parameterizing the fiber over x."""

    __slots__ = ("base", "basis")

    def __init__(self, base, basis, tol=None):
        t = tolerances.DEFAULT.frame_orthonormal if tol is None else tol
        basis = np.asarray(basis, dtype=float)
        d = base.coords.shape[0]
        if basis.shape != (d, d - 1):
            raise UnsupportedDim("basis must hold n columns of length n+1")
        cols = np.column_stack([base.coords, basis])
        gram = cols.T @ cols
        if np.max(np.abs(gram - np.eye(d))) > t:
            raise ValueError("frame columns fail the orthonormality check")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "basis", _frozen(basis))

    def __setattr__(self, name, value):
        raise AttributeError("FiberFrame is immutable")


def make_cone_point(xi, eta, tol=None):
    """Validated cone point from real and imaginary parts.

    Parameters
    ----------
    xi, eta : array_like
        Real vectors of equal length n+1 >= 2.
    tol : float, optional
        Relative tolerance on the cone defect; defaults to the package-wide
        value.

    Raises
    ------
    InvalidCone
        If Delta(xi) != Delta(eta) or xi . eta != 0 beyond tolerance.
    ZeroVector
        If both parts vanish.
    """
    return ConePoint(xi, eta, tol=tol)


def pairing(x, zeta):
    """The complex pairing zeta . x; the horosphere of zeta is {z : zeta . z = 1}."""
    return complex(zeta.values @ x.coords)


def in_transform_domain(zeta, margin=None):
    """Whether the horosphere of zeta misses the real sphere by a margin.

    True iff Delta(xi) < 1 - margin, which for the sphere is equivalent to
    sup_x |zeta . x| < 1 up to the margin. The Cauchy kernel is then regular
    on all of X.
    """
    m = tolerances.DEFAULT.domain_margin if margin is None else margin
    return float(zeta.re @ zeta.re) < 1.0 - m


def on_boundary(zeta, tol=None):
    """Whether Delta(xi) = 1 within tolerance (horosphere touches the sphere)."""
    t = tolerances.DEFAULT.boundary if tol is None else tol
    return abs(float(zeta.re @ zeta.re) - 1.0) <= t


def fiber_point(x, eta, tol=None):
    """The boundary cone point x + i*eta of the fiber over x.

    eta must be a unit vector orthogonal to x; then zeta . x = 1, so the
    horosphere passes through x and through no other real point.
    """
    t = tolerances.DEFAULT.cone_constraint if tol is None else tol
    eta = np.asarray(eta, dtype=float)
    if abs(eta @ x.coords) > t:
        raise NotInFiber("eta is not orthogonal to the base point")
    if abs(eta @ eta - 1.0) > t:
        raise NotInFiber("eta is not a unit vector")
    return ConePoint(x.coords, eta)


def fiber_frame(x):
    """Deterministic orthonormal basis of x^perp.

    Uses the Householder reflection sending e_1 to -sign(x_1) x; its
    remaining columns span x^perp. Shifting by sign(x_1) keeps the
    reflection vector away from zero for every x, so no special casing
    near the poles.
    """
    c = x.coords
    d = c.shape[0]
    v = c.copy()
    v[0] += 1.0 if c[0] >= 0.0 else -1.0
    vv = v @ v  # = 2 + 2|x_1|, never small
    basis = np.eye(d)[:, 1:] - np.outer(v, 2.0 * v[1:] / vv)
    return FiberFrame(x, basis)


def scale(zeta, a):
    """The scaling action a . zeta of the complex torus on the cone.

    pairing(x, scale(zeta, a)) = a * pairing(x, zeta); unimodular a preserve
    both the open domain and its boundary.
    """
    a = complex(a)
    if a == 0:
        raise ZeroScale("the cone excludes zero, so scaling by 0 is undefined")
    w = a * zeta.values
    return ConePoint(w.real, w.imag)


def rotate_in_plane(zeta, i, j, angle):
    """Rotate zeta in the coordinate plane (i, j) by a possibly complex angle.

    Complex rotations preserve Delta exactly, so these curves stay on the
    cone; they provide holomorphic one-parameter families through zeta used
    by the derivative checks.
    """
    c, s = cmath.cos(angle), cmath.sin(angle)
    w = np.array(zeta.values, dtype=complex)
    wi, wj = w[i], w[j]
    w[i] = c * wi - s * wj
    w[j] = s * wi + c * wj
    return ConePoint(w.real, w.imag)


def random_sphere_point(n, rng):
    """Uniform random point of S^n."""
    v = rng.standard_normal(n + 1)
    return SpherePoint(v)


def random_cone_point(n, rng, radius=0.5):
    """Random cone point with sup_x |zeta . x| equal to `radius`.

    xi is a random direction, eta a random direction in xi^perp, both scaled
    to length `radius`; radius < 1 lands strictly inside the transform
    domain, radius = 1 on its boundary.
    """
    xi = rng.standard_normal(n + 1)
    xi /= np.linalg.norm(xi)
    eta = rng.standard_normal(n + 1)
    eta -= (eta @ xi) * xi
    eta /= np.linalg.norm(eta)
    return ConePoint(radius * xi, radius * eta)


def random_rotation(dim, rng):
    """Haar-random rotation matrix of determinant +1."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
