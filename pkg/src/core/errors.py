from __future__ import annotations

from typing import Optional, Tuple


class PlanarNetError(Exception):
    """Base class for every error raised by the library."""


class DimensionError(PlanarNetError, ValueError):
    pass


class IndexSetError(PlanarNetError, ValueError):
    pass


class FormatError(PlanarNetError, ValueError):
    def __init__(self, message: str, field: Optional[str] = None) -> None:
        super().__init__(message)
        self.field = field


class ParamError(PlanarNetError, ValueError):
    def __init__(self, message: str, index: Optional[Tuple[int, ...]] = None, family: Optional[str] = None) -> None:
        super().__init__(message)
        self.index = index
        self.family = family


class NetworkError(PlanarNetError, ValueError):
    pass


class NotTotallyPositiveError(PlanarNetError, ValueError):
    def __init__(self, message: str, witness) -> None:
        super().__init__(message)
        self.witness = witness


class EliminationError(PlanarNetError, ArithmeticError):
    def __init__(self, message: str, order: int) -> None:
        super().__init__(message)
        self.order = order


class RecoveryError(PlanarNetError, ArithmeticError):
    def __init__(self, message: str, index: Tuple[int, int]) -> None:
        super().__init__(message)
        self.index = index


class StructureError(PlanarNetError, ValueError):
    """A factor is not unit triangular or diagonal as required."""
