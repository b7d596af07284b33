"""Error hierarchy shared by the tree, index, query and oracle layers."""


class FlcaError(Exception):
    """Base class for every error raised by this package."""


# Tree construction


class TreeValidationError(FlcaError, ValueError):
    """A parent list does not describe a single rooted tree."""


class NoRootError(TreeValidationError):
    """No vertices at all, so there is no root."""


class MultipleRootsError(TreeValidationError):
    """More than one vertex has no parent."""


class CycleDetectedError(TreeValidationError):
    """Some vertex does not reach the root by following parents."""


class ParentOutOfRangeError(TreeValidationError):
    """A parent id lies outside [0, n)."""


# Queries


class QueryError(FlcaError, ValueError):
    """A query violates its preconditions."""


class EmptyMarkSetError(QueryError):
    """The marked set is empty."""


class InvalidVertexError(QueryError):
    """A vertex id is outside the tree it is used with."""


class InvalidBudgetError(QueryError):
    """The fault budget f is below 1 or inconsistent with carried state."""


class EmptySetError(QueryError):
    """LCA of an empty vertex set was requested."""


class InvalidFaultError(FlcaError, ValueError):
    """A fault set names a non-edge or an unknown vertex."""


class ScratchDirtyError(FlcaError, RuntimeError):
    """Query scratch is not in its cleaned state, or sized for another tree."""


# Oracle


class InstanceTooLargeError(FlcaError):
    """Brute-force enumeration would exceed its configured guard."""


# Text formats


class TreeFileError(FlcaError):
    """Base class for tree/query file problems."""


class TreeFileParseError(TreeFileError):
    """Malformed line in a tree or query file."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{prefix}{message}")


class UnknownLabelError(TreeFileError):
    """A query names a label the tree file never declared."""

    def __init__(self, label: str, line_no: int | None = None):
        self.label = label
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{prefix}unknown label {label!r}")
