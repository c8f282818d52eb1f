"""Inversion through the dimension multiplier and the fiber integral."""

import numpy as np
import pytest

from horocauchy import (
    BandLimitedFunction,
    ConePoint,
    ConfigError,
    ImaginaryResidual,
    InversionParams,
    SpherePoint,
    invert_at,
    invert_plancherel,
    random_rotation,
    roundtrip,
    sphere_grid,
    zonal_projection_residual,
)
from horocauchy.harness import random_band_limited
from horocauchy.tolerances import with_overrides

SPECTRAL = InversionParams(kmax=4, sphere_resolution=32, fiber_resolution=32)


def grid_points(n, count, seed=7):
    return [SpherePoint(row) for row in sphere_grid(n, count, seed)]


# ------------------------------------------------------------ exact anchors
def test_constant_recovers_itself():
    f = BandLimitedFunction.constant(2)
    params = InversionParams(kmax=2, sphere_resolution=24, fiber_resolution=16)
    for x in grid_points(2, 6):
        assert abs(invert_at(f, x, params) - 1.0) < 1e-10


def test_coordinate_recovers_itself():
    f = BandLimitedFunction.coordinate(2, 2)
    params = InversionParams(kmax=2, sphere_resolution=24, fiber_resolution=16)
    for x in grid_points(2, 6):
        assert abs(invert_at(f, x, params) - x.coords[2]) < 1e-9


def test_circle_harmonic_recovers_itself():
    # on S^1 the pairing with (e_1 + i e_2) is exactly e^{i theta}, so this
    # term is cos(3 theta) and the multiplier weights it by d(3) = 2
    f = BandLimitedFunction(
        ((3, ConePoint([1.0, 0.0], [0.0, 1.0]), 1.0 + 0.0j),)
    )
    params = InversionParams(kmax=3, sphere_resolution=64, fiber_resolution=2)
    for x in grid_points(1, 8):
        theta = np.arctan2(x.coords[1], x.coords[0])
        assert abs(invert_at(f, x, params) - np.cos(3 * theta)) < 1e-10


def test_band_limited_roundtrip_spectral(rng):
    f = random_band_limited(2, 4, rng)
    report = roundtrip(f, sphere_grid(2, 12, seed=3), SPECTRAL)
    assert report.max_abs_error < 1e-9
    assert report.max_imag < 1e-9
    assert report.l2_error <= report.max_abs_error


# ------------------------------------------------------------ summed form
def test_plancherel_route_matches_the_operator_route(rng):
    f = random_band_limited(2, 4, rng)
    for x in grid_points(2, 5):
        a = invert_at(f, x, SPECTRAL)
        b = invert_plancherel(f, x, 4, SPECTRAL)
        assert abs(a - b) < 1e-8
        assert abs(b - f(x.coords)) < 1e-9


def test_zonal_projection_identity(rng):
    f = random_band_limited(2, 4, rng)
    for x in grid_points(2, 3):
        for k in range(5):
            assert zonal_projection_residual(f, x, k, SPECTRAL) < 1e-9


def test_truncation_below_the_band_is_visible(rng):
    # dropping the top degree leaves exactly the missing projection behind
    f = random_band_limited(2, 4, rng, terms_per_degree=1)
    low = SPECTRAL.with_(kmax=3)
    report = roundtrip(f, sphere_grid(2, 12, seed=3), low)
    assert report.max_abs_error > 1e-3


# ------------------------------------------------------------ radial methods
def test_abel_roundtrip_within_its_depth(rng):
    # the pinned schedule is a two-stage Richardson step: exact for band 1.
    # Reconstruction stacks kernel quadrature over every fiber node, so the
    # error floor sits near 1e-6 rather than the single-point 1e-9.
    f = random_band_limited(2, 1, rng)
    params = InversionParams(kmax=1, method="abel", fiber_resolution=8)
    report = roundtrip(f, sphere_grid(2, 2, seed=5), params)
    assert report.max_abs_error < 5e-5
    assert report.diagnostics["abel_residual"] < 1e-3


def test_full_numerical_roundtrip(rng):
    f = random_band_limited(2, 2, rng)
    params = InversionParams(kmax=2, method="full-numerical", fiber_resolution=12)
    report = roundtrip(f, sphere_grid(2, 2, seed=5), params)
    assert report.max_abs_error < 1e-5
    assert report.diagnostics["abel_residual"] < 1e-4
    assert report.diagnostics["negative_mode"] < 1e-4


# ------------------------------------------------------------ symmetry
def test_reconstruction_is_rotation_equivariant(rng):
    f = random_band_limited(2, 3, rng)
    params = InversionParams(kmax=3, sphere_resolution=32, fiber_resolution=24)
    q = random_rotation(3, rng)
    for x in grid_points(2, 4):
        moved = SpherePoint(q @ x.coords)
        assert abs(invert_at(f.rotated(q), x, params) - invert_at(f, moved, params)) < 1e-9


# ------------------------------------------------------------ guards, config
def test_imaginary_residual_guard(rng):
    f = random_band_limited(2, 2, rng)
    strict = InversionParams(
        kmax=2,
        sphere_resolution=24,
        fiber_resolution=16,
        tol=with_overrides(imaginary=1e-30),
    )
    with pytest.raises(ImaginaryResidual):
        invert_at(f, grid_points(2, 1)[0], strict)


def test_params_validation():
    with pytest.raises(ConfigError):
        InversionParams(kmax=2, method="sideways")
    with pytest.raises(ConfigError):
        InversionParams(kmax=-1)
    params = InversionParams(kmax=3)
    assert params.circle_count == 10
    assert params.with_(circle_resolution=16).circle_count == 16
    with pytest.raises(ConfigError):
        # too few circle angles to separate the band
        roundtrip(
            BandLimitedFunction.constant(2),
            sphere_grid(2, 1),
            InversionParams(kmax=3, circle_resolution=4),
        )


def test_report_parameter_echo(rng):
    f = random_band_limited(2, 2, rng)
    params = InversionParams(kmax=2, sphere_resolution=24, fiber_resolution=12)
    report = roundtrip(f, sphere_grid(2, 3, seed=1), params)
    assert report.method == "spectral"
    assert report.parameters == {
        "kmax": 2,
        "method": "spectral",
        "sphere_resolution": 24,
        "fiber_resolution": 12,
        "circle_resolution": 8,
    }
    assert set(report.diagnostics) == {"negative_mode", "offband", "abel_residual"}
    recomputed = np.abs(report.reconstructed - report.truth).max()
    assert report.max_abs_error == recomputed


# ------------------------------------------------------------ grids
def test_sphere_grid_determinism_and_shape():
    for n in (1, 2, 3):
        a = sphere_grid(n, 40, seed=11)
        b = sphere_grid(n, 40, seed=11)
        assert np.array_equal(a, b)
        assert a.shape == (40, n + 1)
        np.testing.assert_allclose(np.linalg.norm(a, axis=1), 1.0, atol=1e-12)
        c = sphere_grid(n, 40, seed=12)
        assert not np.array_equal(a, c)
    with pytest.raises(ConfigError):
        sphere_grid(4, 10)


def test_sphere_grid_equidistribution():
    # linear functionals must nearly vanish on a balanced grid
    for n in (1, 2, 3):
        pts = sphere_grid(n, 400, seed=2)
        assert np.abs(pts.mean(axis=0)).max() < 0.02
