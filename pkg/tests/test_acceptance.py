"""Acceptance gate: the nine headline guarantees, one test per criterion.

Each test pins the advertised tolerance; pytest -v prints exactly one
pass/fail line per criterion. Budgets here are contractual, not aspirational:
loosening one is an API break.
"""

import json
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from horocauchy import (
    BandLimitedFunction,
    InversionParams,
    SpherePoint,
    boundary_values,
    cauchy_riemann_residual,
    circle_spectrum,
    dimension_table,
    fiber_point,
    forward,
    invert_at,
    invert_plancherel,
    negative_mode_fraction,
    random_cone_point,
    random_rotation,
    random_sphere_point,
    roundtrip,
    sphere_grid,
    sphere_rule,
    zonal_by_average,
    zonal_projection_residual,
    zonal_recurrence,
)
from horocauchy.harness import make_corpus, random_band_limited

SEED = 7


def corpus_roundtrip(n, kmax, params, grid_size):
    grid = sphere_grid(n, grid_size, seed=SEED)
    worst = 0.0
    for _, f in make_corpus(n, kmax, SEED):
        report = roundtrip(f, grid, params)
        worst = max(worst, report.max_abs_error)
    return worst


def band_limited_roundtrip(n, kmax, params, grid_size, instances=2):
    # the seeded band-limited corpus proper; the fixed closed-form cases
    # have their own anchor criterion
    rng = np.random.default_rng(SEED)
    grid = sphere_grid(n, grid_size, seed=SEED)
    worst = 0.0
    for _ in range(instances):
        f = random_band_limited(n, kmax, rng)
        report = roundtrip(f, grid, params)
        worst = max(worst, report.max_abs_error)
    return worst


def test_criterion_1_roundtrip_exactness():
    """Spectral round trip of seeded band-limited corpora: S^2 kmax 8 below
    1e-8, S^3 kmax 6 below 1e-7, each over a 200-point grid in under 60 s
    single-threaded."""
    start = time.perf_counter()
    params2 = InversionParams(kmax=8, sphere_resolution=64, fiber_resolution=256)
    worst2 = band_limited_roundtrip(2, 8, params2, 200)
    elapsed2 = time.perf_counter() - start
    assert worst2 < 1e-8, f"S^2 max_abs_error {worst2:.3e}"
    assert elapsed2 < 60.0, f"S^2 wall time {elapsed2:.1f}s"

    # no 64x128 product rule exists on S^3; resolution 12 integrates
    # degree 23 exactly on both the sphere and its 2-sphere fibers, well
    # past the degree-12 integrands a kmax 6 corpus can produce
    start = time.perf_counter()
    params3 = InversionParams(kmax=6, sphere_resolution=12, fiber_resolution=12)
    worst3 = band_limited_roundtrip(3, 6, params3, 200)
    elapsed3 = time.perf_counter() - start
    assert worst3 < 1e-7, f"S^3 max_abs_error {worst3:.3e}"
    assert elapsed3 < 60.0, f"S^3 wall time {elapsed3:.1f}s"


def test_criterion_2_inversion_without_spectral_shortcuts():
    """Full-numerical reconstruction (kernel quadrature plus radial
    extrapolation, blind to the band structure of f) on S^2 at kmax 4
    stays below 1e-4."""
    params = InversionParams(kmax=4, method="full-numerical", fiber_resolution=24)
    worst = corpus_roundtrip(2, 4, params, 8)
    assert worst < 1e-4, f"full-numerical max_abs_error {worst:.3e}"


def test_criterion_3_closed_form_anchors():
    """fhat of 1 is 1 (1e-10); fhat of x_3 is zeta_3 / 3 (1e-10) and its
    reconstruction error stays below 1e-9."""
    rng = np.random.default_rng(SEED)
    # the kernel tail aliases like r^(2*resolution); track the radius
    rules = {48: sphere_rule(2, 48), 96: sphere_rule(2, 96)}
    ones = BandLimitedFunction.constant(2)
    x3 = BandLimitedFunction.coordinate(2, 2)
    for _ in range(25):
        r = 0.9 * rng.random() + 1e-3
        zeta = random_cone_point(2, rng, radius=r)
        rule = rules[48 if r <= 0.7 else 96]
        assert abs(forward(ones, zeta, rule) - 1.0) < 1e-10
        assert abs(forward(x3, zeta, rule) - zeta.values[2] / 3.0) < 1e-10
    params = InversionParams(kmax=2, sphere_resolution=32, fiber_resolution=32)
    for row in sphere_grid(2, 20, seed=SEED):
        x = SpherePoint(row)
        assert abs(invert_at(x3, x, params) - x.coords[2]) < 1e-9


def test_criterion_4_zonal_identity():
    """Fiber averages match the Gegenbauer/Legendre recurrence within 1e-10
    for n in {1, 2, 3}, k up to 10, at 50 sample points."""
    rng = np.random.default_rng(SEED)
    ts = np.cos((2 * np.arange(50) + 1) * np.pi / 100.0)
    for n in (1, 2, 3):
        x = random_sphere_point(n, rng)
        v = rng.standard_normal(n + 1)
        v -= (v @ x.coords) * x.coords
        v /= np.linalg.norm(v)
        for k in range(11):
            for t in ts:
                y = SpherePoint(t * x.coords + math.sqrt(1.0 - t * t) * v)
                left = zonal_by_average(n, k, x, y, 32)
                right = zonal_recurrence(n, k, t)
                assert abs(left - right) < 1e-10, (n, k, t)


def test_criterion_5_dimension_formula():
    """The factored Weyl product equals the independent binomial count as
    exact integers for k <= 20, n <= 5; on S^2 it is 1 + 2k and on S^3 it
    is (1 + k)^2."""

    def harmonic_count(ambient, k):
        # dim of degree-k harmonics in `ambient` variables, by the classical
        # difference of polynomial-space dimensions
        if k < 2:
            return 1 if k == 0 else ambient
        return math.comb(ambient + k - 1, k) - math.comb(ambient + k - 3, k - 2)

    for n in (1, 2, 3, 4, 5):
        table = dimension_table(n, 20)
        for k in range(21):
            assert table.dims[k] == harmonic_count(n + 1, k)
            assert isinstance(table.dims[k], int)
    assert dimension_table(2, 20).dims == tuple(1 + 2 * k for k in range(21))
    assert dimension_table(3, 20).dims == tuple((1 + k) ** 2 for k in range(21))


def test_criterion_6_plancherel_vs_operator():
    """The summed (Plancherel) and operator forms of the inversion agree
    within 1e-8 on the corpus; the zonal projection identity holds to 1e-9."""
    params = InversionParams(kmax=4, sphere_resolution=32, fiber_resolution=32)
    points = [SpherePoint(row) for row in sphere_grid(2, 8, seed=SEED)]
    corpus = make_corpus(2, 4, SEED)
    for name, f in corpus:
        for x in points:
            a = invert_at(f, x, params)
            b = invert_plancherel(f, x, 4, params)
            assert abs(a - b) < 1e-8, (name, x.coords)
    for name, f in corpus:
        for x in points[:2]:
            for k in range(5):
                assert zonal_projection_residual(f, x, k, params) < 1e-9, (name, k)


def test_criterion_7_boundary_spectrum_and_holomorphy():
    """Boundary-value spectra carry less than 1e-9 of their energy at
    negative frequencies, and the Cauchy-Riemann residual of fhat stays
    below 1e-6 inside the domain."""
    rng = np.random.default_rng(SEED)
    corpus = make_corpus(2, 8, SEED)
    for _ in range(5):
        x = random_sphere_point(2, rng)
        eta = rng.standard_normal(3)
        eta -= (eta @ x.coords) * x.coords
        eta /= np.linalg.norm(eta)
        zeta = fiber_point(x, eta)
        for name, f in corpus:
            samples = boundary_values(f, zeta, 20, method="spectral", kmax=8)
            fraction = float(negative_mode_fraction(circle_spectrum(samples.values)))
            assert fraction < 1e-9, (name, fraction)
    rule = sphere_rule(2, 48)
    f = corpus[-1][1]
    for _ in range(10):
        zeta = random_cone_point(2, rng, radius=0.5)
        assert cauchy_riemann_residual(f, zeta, rule) < 1e-6


def test_criterion_8_rotation_equivariance():
    """Transform plus inversion commutes with random rotations to 1e-9."""
    rng = np.random.default_rng(SEED)
    f = random_band_limited(2, 4, rng)
    params = InversionParams(kmax=4, sphere_resolution=32, fiber_resolution=32)
    points = [SpherePoint(row) for row in sphere_grid(2, 5, seed=SEED)]
    for _ in range(3):
        q = random_rotation(3, rng)
        g = f.rotated(q)
        for x in points:
            moved = SpherePoint(q @ x.coords)
            assert abs(invert_at(g, x, params) - invert_at(f, moved, params)) < 1e-9


def test_criterion_9_byte_identical_reports(tmp_path):
    """Two runs of one configuration write byte-identical JSON reports."""
    env = dict(os.environ, OMP_NUM_THREADS="1", OPENBLAS_NUM_THREADS="1",
               MKL_NUM_THREADS="1")
    payloads = []
    for tag in ("first", "second"):
        out = tmp_path / tag / "report.json"
        proc = subprocess.run(
            [sys.executable, "-m", "horocauchy", "roundtrip",
             "--n", "2", "--kmax", "3", "--resolution", "24",
             "--fiber-res", "12", "--grid-size", "4",
             "--no-figures", "--out", str(out)],
            capture_output=True, text=True, env=env,
        )
        assert proc.returncode == 0, proc.stderr
        payloads.append(out.read_bytes())
    assert payloads[0] == payloads[1]
