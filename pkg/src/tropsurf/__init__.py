"""Fan tropical planes, intersection theory of 1-cycles, the invariant
calculus of compact tropical surfaces, and cellular cosheaf homology."""

from .errors import (
    ComplexError,
    CycleError,
    FanError,
    MatroidError,
    SurfaceError,
    TropsurfError,
)

__all__ = [
    "TropsurfError",
    "MatroidError",
    "FanError",
    "CycleError",
    "SurfaceError",
    "ComplexError",
]

__version__ = "0.1.0"
