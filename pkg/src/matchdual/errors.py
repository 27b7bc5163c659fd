"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 2), numerical or
algorithmic failures from :class:`SolverError` (CLI exit code 3).
"""

from __future__ import annotations


class MatchDualError(Exception):
    exit_code = 1

    @property
    def kind(self) -> str:
        return type(self).__name__


class InputError(MatchDualError, ValueError):
    exit_code = 2


class SolverError(MatchDualError, RuntimeError):
    exit_code = 3


# metric-core
class AsymmetricInput(InputError):
    pass


class NegativeEntry(InputError):
    pass


class NonzeroDiagonal(InputError):
    pass


class NonFiniteEntry(InputError):
    pass


class TriangleViolation(InputError):
    def __init__(self, i: int, j: int, k: int, magnitude: float):
        self.triple = (i, j, k)
        self.magnitude = magnitude
        super().__init__(
            f"d[{i}][{k}] exceeds d[{i}][{j}] + d[{j}][{k}] by {magnitude!r}")


class DimensionMismatch(InputError):
    pass


class InvalidNorm(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


# matching-solver
class OddCardinality(InputError):
    pass


class TooLarge(InputError):
    pass


class InvalidPartition(InputError):
    pass


class InvalidMatching(InputError):
    pass


# dual-metric
class LPNumericalFailure(SolverError):
    def __init__(self, message: str, residual: float = float("nan")):
        self.residual = residual
        super().__init__(f"{message} (worst residual {residual!r})")


class IterationLimit(SolverError):
    pass


class StallDetected(SolverError):
    """Descent stopped before reaching a tree-like point.

    The partial result is kept on ``result`` so callers can log it.
    """

    def __init__(self, message: str, result=None):
        self.result = result
        super().__init__(message)


# tree-realize
class NotTreeLike(InputError):
    def __init__(self, quadruple, violation: float):
        self.quadruple = quadruple
        self.violation = violation
        super().__init__(
            f"four-point condition fails on {quadruple} by {violation!r}")


class NumericalDegeneracy(SolverError):
    pass


# calibration
class InvalidGraph(InputError):
    pass


class Disconnected(InputError):
    pass


class OddTerminals(InputError):
    pass


class RootNotInTree(InputError):
    pass


class NonGenericLevel(InputError):
    pass


class InfeasibleExtension(SolverError):
    def __init__(self, message: str, balls=None):
        self.balls = balls
        super().__init__(message)


# matching-dimension
class InvalidExponent(InputError):
    pass


class OddK(InputError):
    pass


class TooLargeForExhaustive(InputError):
    pass


class InsufficientData(InputError):
    pass


class SlopeOutOfRange(SolverError):
    pass
