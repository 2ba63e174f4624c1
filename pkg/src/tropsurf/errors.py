"""Exception hierarchy shared across the package.

Domain errors (bad input data, violated preconditions) all derive from
TropsurfError so the CLI can map them to exit code 1.
"""


class TropsurfError(Exception):
    """Base class for all domain errors raised by this package."""


class MatroidError(TropsurfError):
    """Invalid matroid data or an operation outside its domain."""


class FanError(TropsurfError):
    """Invalid fan data, or a fan query that cannot be resolved."""


class CycleError(TropsurfError):
    """Invalid 1-cycle data (unbalanced, wrong ambient, not in a fan)."""


class SurfaceError(TropsurfError):
    """Invalid surface expression or violated gluing precondition."""


class ComplexError(TropsurfError):
    """Invalid cell complex, cosheaf data, or (1,1)-cycle input."""
