"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class EffectiveLeviError(ValueError):
    """Base class for all errors raised by this package."""


class DimensionError(EffectiveLeviError):
    """Shapes of the operands do not match."""


class DependentBasisError(EffectiveLeviError):
    """A list of vectors expected to be linearly independent is not."""


class RankDeficientError(EffectiveLeviError):
    """A coefficient matrix expected to have full row rank does not.

    Remove the redundant rows (e.g. with :func:`effective_levi.matrix.independent_rows`)
    and call again.
    """


class InfeasibleError(EffectiveLeviError):
    """A linear system has no rational solution.

    ``certificate`` is a rational row vector ``z`` with ``z A = 0`` and ``z b != 0``.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ResourceLimitError(EffectiveLeviError):
    """An enumeration exceeded its node budget. No partial answer is returned."""

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes


class NotNilpotentError(EffectiveLeviError):
    """A matrix or algebra expected to be nilpotent is not."""


class NotInAlgebraError(EffectiveLeviError):
    """An element (or its logarithm) does not lie in the expected subspace."""


class PreconditionError(EffectiveLeviError):
    """The inputs violate a documented precondition."""


class InvariantViolation(EffectiveLeviError):
    """An internal postcondition failed. This indicates a bug, not bad input."""
