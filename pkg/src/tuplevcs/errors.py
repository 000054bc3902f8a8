"""Shared exception types."""


class TupleVcsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidEdit(TupleVcsError):
    """An edit does not fit the document it was applied to."""


class UnhandledPair(TupleVcsError):
    """The transform rule table has no rule for this pair of edits.

    This is a loud failure, never a fallback: it means the rule table is
    incomplete (or the inputs violated the unique-insert-id invariant).
    """


class DependencyError(TupleVcsError):
    """A difference cannot be migrated before an earlier one it depends on."""

    def __init__(self, dependency_index: int):
        super().__init__(
            f"depends on earlier difference #{dependency_index}; "
            "migrate that one first"
        )
        self.dependency_index = dependency_index


class IndexOutOfRange(TupleVcsError):
    """A difference index outside the chosen side's sequence."""


class FormatError(TupleVcsError):
    """A malformed or corrupted image file."""


class VersionError(TupleVcsError):
    """An image file with an unknown format version."""


class PrefixMismatch(TupleVcsError):
    """Two histories whose claimed common prefix differs."""


class ParseError(TupleVcsError):
    """Malformed edit syntax; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position
