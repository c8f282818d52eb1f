"""Central tolerance record.

Every module takes its numerical thresholds from one immutable record so a
single override propagates consistently through validation, transforms and
reports.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the package.

    All values are dimensionless. Constraint checks scale these by the
    magnitude of the data where that makes sense (see the call sites).
    """

    sphere_norm: float = 1e-12          # |x|^2 - 1 after renormalization
    cone_constraint: float = 1e-10      # cone identities relative to |zeta|^2
    frame_orthonormal: float = 1e-12    # Gram matrix defect of fiber frames
    domain_margin: float = 1e-9         # strict interior margin for Delta(xi) < 1
    forward_margin: float = 1e-6        # minimal margin for kernel quadrature
    near_singular: float = 1e-3         # warn when 1 - sup|h| drops below this
    boundary: float = 1e-8              # |Delta(xi) - 1| for boundary membership
    weight_sum: float = 1e-13           # quadrature weights must sum to 1
    abel_residual: float = 1e-4         # extrapolation residual before giving up
    negative_mode: float = 1e-6         # relative negative-frequency energy
    aliasing: float = 1e-6              # relative energy between band and mirror
    imaginary: float = 1e-6             # |Im| of a reconstructed real value


DEFAULT = Tolerances()


def with_overrides(base=DEFAULT, **kwargs):
    """Copy of `base` with the named thresholds replaced."""
    return replace(base, **kwargs)
