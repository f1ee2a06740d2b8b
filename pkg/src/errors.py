"""Exception hierarchy shared by every package"""
from typing import Any, Optional


class MultiMeshError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class StructuralError(MultiMeshError):
    """Malformed input: unknown vertex, degenerate facet, inconsistent arrays."""


class StaleHandleError(MultiMeshError):
    """A simplex, dart or facet handle that is no longer alive."""


class BoundaryError(MultiMeshError):
    """Navigation or operation across a mesh boundary."""


class OperationRejected(MultiMeshError):
    """A local operation was refused; the multimesh is left untouched."""


class LinkConditionError(OperationRejected):
    """The (multimesh) link condition failed."""


class InvariantViolation(OperationRejected):
    """A registered invariant failed; the operation was rolled back."""


class StaleRollbackError(MultiMeshError):
    """Rollback applied to a mesh whose generation has moved on."""


class ConstructionError(MultiMeshError):
    """A containment map or derived mesh could not be built."""


class AnchorError(MultiMeshError):
    """Dangling anchor or no alternate facet available for re-seating."""


class TreeError(MultiMeshError):
    """Invalid node relationship inside a multimesh."""


class ParseError(MultiMeshError):
    """Malformed file contents."""

    def __init__(self, message: str, line: Optional[int] = None, witness: Optional[Any] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, witness)
        self.line = line


class ArchiveVersionError(ParseError):
    """Archive written by an incompatible format version."""
