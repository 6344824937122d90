"""Exception hierarchy for the noumenal package."""


class NoumenalError(Exception):
    """Base class for all errors raised by this package."""


class SizeBoundExceeded(NoumenalError):
    """A lattice or run exceeds the configured size limits."""


class LatticeMismatch(NoumenalError):
    """Systems from different lattices were combined."""


class DisjointnessViolation(NoumenalError):
    """An operation requiring disjoint systems received overlapping ones."""


class IndexOutOfRange(NoumenalError):
    """A basis index is outside a system's dimension."""


class DimensionMismatch(NoumenalError):
    """A matrix shape does not match the dimension of its system."""


class NotSubsystem(NoumenalError):
    """The named system is not contained in the one being reduced."""


class NotGlobalOperator(NoumenalError):
    """An operator on the global system was required."""


class SystemMismatch(NoumenalError):
    """Two objects live on different systems."""


class BasisMismatch(NoumenalError):
    """Two objects are expressed in different bases."""


class CompatibilityViolation(NoumenalError):
    """A grid of operators fails the evolution-matrix consistency laws."""


class NotOrthonormal(NoumenalError):
    """A purported orthonormal basis fails the unitarity test."""


class AnchorMismatch(NoumenalError):
    """Two extended states carry different global anchor states."""


class ScenarioPreconditionFailed(NoumenalError):
    """A demonstration was invoked on an unsuitable lattice."""


class ValidationError(NoumenalError):
    """An input value violates a documented invariant."""


class ParseError(NoumenalError):
    """A file or payload could not be interpreted."""
