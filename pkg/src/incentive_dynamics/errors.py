"""Exception types raised across the package."""


class IncentiveDynamicsError(Exception):
    """Base class for all errors raised by this package."""


class NegativeWeight(IncentiveDynamicsError, ValueError):
    pass


class ZeroMass(IncentiveDynamicsError, ValueError):
    pass


class BadEpsilon(IncentiveDynamicsError, ValueError):
    pass


class DimensionMismatch(IncentiveDynamicsError, ValueError):
    pass


class BoundaryCenter(IncentiveDynamicsError, ValueError):
    """Neighborhood center is not interior enough to sample around."""


class InfeasibleRadius(IncentiveDynamicsError, ValueError):
    """No admissible point could be drawn in the requested neighborhood."""


class BoundaryState(IncentiveDynamicsError, ValueError):
    """An operation that needs a strictly interior state got a boundary one."""


class LeftSimplex(IncentiveDynamicsError, RuntimeError):
    pass


class NonFinite(IncentiveDynamicsError, FloatingPointError):
    pass


class NoConvergence(IncentiveDynamicsError, RuntimeError):
    pass


class LeftInterior(IncentiveDynamicsError, RuntimeError):
    pass


class TooShort(IncentiveDynamicsError, ValueError):
    pass


class ConfigError(IncentiveDynamicsError, ValueError):
    pass
