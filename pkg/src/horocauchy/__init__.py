"""Numerics for the horospherical Cauchy transform on spheres S^n, n <= 3.

The package computes the forward transform against the Cauchy kernel
1/(1 - zeta . x), its Fourier components under the cone scaling action,
boundary values on the edge of the holomorphy domain, and the inversion
back to f through the dimension multiplier and the boundary fiber integral.
A command-line harness validates every identity over a seeded corpus and
writes machine-readable reports.
"""

from .errors import (
    AbelDivergence,
    AliasingSuspected,
    ConfigError,
    HorocauchyError,
    ImaginaryResidual,
    InvalidCone,
    NearSingularWarning,
    NegativeModeEnergy,
    NotInFiber,
    NotOnBoundary,
    OutsideTransformDomain,
    UnsupportedDim,
    ZeroScale,
    ZeroVector,
)
from .geometry import (
    ConePoint,
    FiberFrame,
    SpherePoint,
    delta,
    fiber_frame,
    fiber_point,
    in_transform_domain,
    make_cone_point,
    on_boundary,
    pairing,
    random_cone_point,
    random_rotation,
    random_sphere_point,
    rotate_in_plane,
    scale,
)
from .inversion import (
    InversionParams,
    ReconstructionReport,
    invert_at,
    invert_plancherel,
    roundtrip,
    sphere_grid,
    zonal_projection_residual,
)
from .quadrature import QuadratureRule, circle_rule, fiber_rule, fixed_sum, sphere_rule
from .spectral import (
    DimensionTable,
    apply_multiplier,
    circle_spectrum,
    dimension_table,
    negative_mode_fraction,
    offband_peak_ratio,
    weyl_dimension,
)
from .transform import (
    PINNED_SCHEDULE,
    AbelSchedule,
    BandLimitedFunction,
    TransformSamples,
    boundary_values,
    cauchy_riemann_residual,
    circle_values,
    exactness_schedule,
    extrapolate_to_zero,
    forward,
    fourier_component,
    fourier_components,
    resolution_for_radius,
    series_residual,
)
from .zonal import ZonalFunction, orthogonality_check, zonal_by_average, zonal_recurrence

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
