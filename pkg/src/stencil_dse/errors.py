"""Exception types shared across the toolkit."""


class StencilDSEError(Exception):
    """Base class for every error raised by this package."""


class SpecError(StencilDSEError, ValueError):
    pass


class RadiusOutOfRange(SpecError):
    pass


class HotspotHighOrder(SpecError):
    pass


class MissingCoefficient(SpecError):
    pass


class GridError(StencilDSEError, ValueError):
    pass


class CoordOutOfBounds(GridError, IndexError):
    pass


class DimsMismatch(GridError):
    pass


class ConfigError(StencilDSEError, ValueError):
    """A design point that the accelerator cannot be built with."""


class InvalidConfig(ConfigError):
    pass


class BlockTooSmallForHalo(ConfigError):
    pass


class ResourceExceeded(ConfigError):
    pass


class InfeasibleProjection(StencilDSEError):
    pass


class EmptyResult(StencilDSEError):
    """The tuner found no feasible design point."""
