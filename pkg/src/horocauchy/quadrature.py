"""Probability-normalized quadrature on spheres, boundary fibers, and the circle.

All rules integrate against normalized invariant measure (weights sum to 1).
Product Gauss rules are used instead of tabulated sphere designs so that any
resolution is available and the exactness degree is an explicit function of
the resolution.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances
from .errors import UnsupportedDim


def fixed_sum(values):
    """Exactly rounded sum of a 1-D real or complex array.

    Uses math.fsum on a fixed traversal order, so results do not depend on
    chunking or thread count. Batched pipelines elsewhere use fixed-shape
    matrix products instead; this is the scalar reference reduction.
    """
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights for a normalized measure.

    nodes has one row per node; rows are real for sphere and circle rules
    and complex for fiber rules (cone points). The circle rule stores bare
    angles in a 1-D nodes array.
    """

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes)
        w = np.asarray(self.weights, dtype=float)
        if np.any(w <= 0):
            raise ValueError("quadrature weights must be positive")
        if abs(math.fsum(w) - 1.0) > tolerances.DEFAULT.weight_sum:
            raise ValueError("quadrature weights must sum to 1")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", w)
        nodes.setflags(write=False)
        w.setflags(write=False)

    def __len__(self):
        return self.weights.shape[0]

    def integrate(self, f):
        """Integrate a callable (evaluated on the nodes) or an array of values."""
        values = f(self.nodes) if callable(f) else np.asarray(f)
        return fixed_sum(values * self.weights)


def _normalized(w):
    return np.asarray(w, dtype=float) / math.fsum(w)


def _gauss_legendre(m):
    return np.polynomial.legendre.leggauss(m)


def _gauss_chebyshev2(m):
    # nodes/weights for the weight sqrt(1-t^2): t_j = cos(j pi / (m+1))
    j = np.arange(1, m + 1)
    t = np.cos(j * np.pi / (m + 1))
    w = np.sin(j * np.pi / (m + 1)) ** 2
    return t, w


def sphere_rule(n, resolution):
    """Product quadrature for the normalized measure on S^n.

    Parameters
    ----------
    n : int
        Sphere dimension, one of 1, 2, 3.
    resolution : int
        Points per polar direction; azimuthal directions get 2*resolution.

    Returns
    -------
    QuadratureRule
        n=1: `resolution` uniform angles (exact for restricted polynomials
        of degree < resolution). n=2: Gauss-Legendre in the polar cosine
        times a uniform azimuth, 2*resolution^2 nodes. n=3: the first polar
        cosine carries the weight sqrt(1-t^2), handled by Gauss nodes for
        that weight so polynomial exactness is preserved; 2*resolution^3
        nodes. For n >= 2 the rule is exact on restricted polynomials of
        degree <= 2*resolution - 1.

    Raises
    ------
    UnsupportedDim
        For dimensions other than 1, 2, 3. Higher n needs nothing new in
        principle (one more Gauss factor per dimension with the weight
        (1-t^2)^((n-2)/2)), but only these three are wired up and tested.
    """
    if resolution < 4:
        raise ValueError("resolution must be at least 4")
    if n == 1:
        a = 2.0 * np.pi * np.arange(resolution) / resolution
        nodes = np.column_stack([np.cos(a), np.sin(a)])
        return QuadratureRule(nodes, np.full(resolution, 1.0 / resolution))
    if n == 2:
        t, wt = _gauss_legendre(resolution)
        m = 2 * resolution
        phi = 2.0 * np.pi * np.arange(m) / m
        st = np.sqrt(1.0 - t**2)
        nodes = np.empty((resolution * m, 3))
        nodes[:, 0] = np.repeat(st, m) * np.tile(np.cos(phi), resolution)
        nodes[:, 1] = np.repeat(st, m) * np.tile(np.sin(phi), resolution)
        nodes[:, 2] = np.repeat(t, m)
        w = np.repeat(wt, m)
        return QuadratureRule(nodes, _normalized(w))
    if n == 3:
        t1, w1 = _gauss_chebyshev2(resolution)
        t2, w2 = _gauss_legendre(resolution)
        m = 2 * resolution
        phi = 2.0 * np.pi * np.arange(m) / m
        T1, T2, P = np.meshgrid(t1, t2, phi, indexing="ij")
        s1 = np.sqrt(1.0 - T1**2)
        s2 = np.sqrt(1.0 - T2**2)
        nodes = np.stack(
            [T1, s1 * T2, s1 * s2 * np.cos(P), s1 * s2 * np.sin(P)], axis=-1
        ).reshape(-1, 4)
        w = (w1[:, None, None] * w2[None, :, None] * np.ones_like(P)).ravel()
        return QuadratureRule(nodes, _normalized(w))
    raise UnsupportedDim(f"sphere rules are implemented for n in {{1, 2, 3}}, got {n}")


def fiber_rule(frame, resolution):
    """Quadrature over the fiber of horospheres through frame.base.

    The fiber is the unit sphere of x^perp, a copy of S^{n-1}; nodes are the
    complex cone points x + i*(basis @ u). For n=1 the fiber is the two
    points +-basis, each with weight 1/2, and `resolution` is ignored.
    """
    x = frame.base.coords
    n = x.shape[0] - 1
    if n == 1:
        u = np.array([[1.0], [-1.0]])
        w = np.array([0.5, 0.5])
    elif n == 2:
        a = 2.0 * np.pi * np.arange(resolution) / resolution
        u = np.column_stack([np.cos(a), np.sin(a)])
        w = np.full(resolution, 1.0 / resolution)
    elif n == 3:
        inner = sphere_rule(2, resolution)
        u, w = inner.nodes, inner.weights
    else:
        raise UnsupportedDim(f"fiber rules are implemented for n in {{1, 2, 3}}, got {n}")
    nodes = x[None, :] + 1j * (u @ frame.basis.T)
    return QuadratureRule(nodes, np.array(w))


def circle_rule(m):
    """Uniform angles theta_j = 2 pi j / m, weight 1/m each.

    Discrete Fourier analysis on these angles is exact for trigonometric
    polynomials of degree below m/2.
    """
    if m < 2:
        raise ValueError("need at least two angles")
    angles = 2.0 * np.pi * np.arange(m) / m
    return QuadratureRule(angles, np.full(m, 1.0 / m))
