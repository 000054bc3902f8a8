"""Structural version control for typed tuple documents.

Documents are fixed tuples of typed slots; edits insert slots, convert
declared types, or move values. Two replicas of a document are kept as a
shared agreement plus per-side difference sequences, maintained by a pair
of edit transformations (project forward, retract backward). Differences
migrate between sides one at a time, with conflicts and dependencies
surfaced instead of silently resolved.
"""

from .document import (
    AtomType,
    ConformedDocument,
    Conv,
    Document,
    EMPTY,
    ERROR,
    Edit,
    EditId,
    ErrorMarker,
    ID,
    Id,
    Ins,
    Move,
    NULL,
    Value,
    apply_edit,
    conform,
    convert_value,
    documents_equivalent,
    format_number,
    replay,
    validate_edit,
)
from .editsyntax import parse_edit, print_edit
from .errors import (
    DependencyError,
    FormatError,
    IndexOutOfRange,
    InvalidEdit,
    ParseError,
    PrefixMismatch,
    TupleVcsError,
    UnhandledPair,
    VersionError,
)
from .migration import (
    MigrationReport,
    merge_all,
    migrate,
    migrate_with_dependencies,
)
from .store import ImageFile, dump_image, load_image, new_image, parse_image, save_image
from .transform import Defined, TransformOutcome, Undefined, project, retract
from .variance import (
    Blocked,
    Translated,
    VariantPair,
    prune_ids,
    rebuild,
    record_edit,
    translate,
)

__all__ = [
    "AtomType",
    "Blocked",
    "ConformedDocument",
    "Conv",
    "Defined",
    "DependencyError",
    "Document",
    "EMPTY",
    "ERROR",
    "Edit",
    "EditId",
    "ErrorMarker",
    "FormatError",
    "ID",
    "Id",
    "ImageFile",
    "IndexOutOfRange",
    "Ins",
    "InvalidEdit",
    "MigrationReport",
    "Move",
    "NULL",
    "ParseError",
    "PrefixMismatch",
    "Translated",
    "TransformOutcome",
    "TupleVcsError",
    "Undefined",
    "UnhandledPair",
    "Value",
    "VariantPair",
    "VersionError",
    "apply_edit",
    "conform",
    "convert_value",
    "documents_equivalent",
    "dump_image",
    "format_number",
    "load_image",
    "merge_all",
    "migrate",
    "migrate_with_dependencies",
    "new_image",
    "parse_edit",
    "parse_image",
    "print_edit",
    "project",
    "prune_ids",
    "rebuild",
    "record_edit",
    "replay",
    "retract",
    "save_image",
    "translate",
    "validate_edit",
]

__version__ = "1.0.0"
