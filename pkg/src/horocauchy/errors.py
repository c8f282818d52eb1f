"""Exception and warning types shared across the package."""


class HorocauchyError(Exception):
    """Base class for all errors raised by this package."""


class ZeroVector(HorocauchyError):
    """A cone point was requested for the zero vector."""


class InvalidCone(HorocauchyError):
    """The pair (xi, eta) does not satisfy the isotropic cone constraints."""


class NotInFiber(HorocauchyError):
    """eta is not a unit vector orthogonal to the base point."""


class ZeroScale(HorocauchyError):
    """The scaling action is undefined for the factor 0."""


class UnsupportedDim(HorocauchyError):
    """The sphere dimension is outside the implemented range."""


class OutsideTransformDomain(HorocauchyError):
    """The cone point is too close to (or beyond) the singular set of the kernel."""


class NotOnBoundary(HorocauchyError):
    """Boundary values were requested at a cone point that is not on the boundary."""


class AbelDivergence(HorocauchyError):
    """Radial extrapolation of boundary values did not settle within tolerance."""


class AliasingSuspected(HorocauchyError):
    """Circle samples carry energy between the retained band and its mirror."""


class NegativeModeEnergy(HorocauchyError):
    """Circle samples carry more negative-frequency energy than holomorphy allows."""


class ImaginaryResidual(HorocauchyError):
    """A quantity that must be real came back with a large imaginary part."""


class ConfigError(HorocauchyError):
    """A run configuration is malformed or inconsistent."""


class NearSingularWarning(UserWarning):
    """The kernel is evaluated close to its singular set; accuracy degrades."""
