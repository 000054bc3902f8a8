"""Typed tuple documents and the structure-edit operations over them.

A document is an ordered tuple of slots, each holding a stored value and a
declared atomic type. The stored value is independent of the declared type:
converting a slot changes only the type and leaves the value in place, so
conversions compose without losing data. Reads for display go through
``conform``, which converts each stored value to its declared type, falls
back to a per-type default for null, and yields a distinguished error
marker when no conversion exists.

Indexes are 1-based throughout, including serialized forms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Union

from .errors import InvalidEdit


class AtomType(enum.Enum):
    NUM = "num"
    STR = "str"
    BOOL = "bool"
    DEL = "del"


NUM = AtomType.NUM
STR = AtomType.STR
BOOL = AtomType.BOOL
DEL = AtomType.DEL


@dataclass(frozen=True)
class Value:
    """A runtime-tagged value; the tag may disagree with the slot's type."""

    tag: str  # "num" | "str" | "bool" | "null"
    raw: Union[Decimal, str, bool, None]

    @staticmethod
    def number(x) -> "Value":
        return Value("num", Decimal(x))

    @staticmethod
    def text(s: str) -> "Value":
        return Value("str", s)

    @staticmethod
    def truth(b: bool) -> "Value":
        return Value("bool", bool(b))

    def __repr__(self) -> str:
        if self.tag == "null":
            return "Null"
        return f"{self.tag.capitalize()}({self.raw!r})"


NULL = Value("null", None)


class ErrorMarker:
    """Display-level marker for an unconvertible value.

    Never stored in a document; only produced by ``conform``/``convert_value``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ERROR"


ERROR = ErrorMarker()

Slot = tuple[Value, AtomType]


@dataclass(frozen=True)
class Document:
    """An immutable typed tuple; slot 1 is the first slot."""

    slots: tuple[Slot, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.slots)

    def slot(self, index: int) -> Slot:
        return self.slots[index - 1]

    def types(self) -> tuple[AtomType, ...]:
        return tuple(t for _, t in self.slots)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v!r}:{t.value}" for v, t in self.slots)
        return f"({inner})"


EMPTY = Document()


@dataclass(frozen=True)
class EditId:
    """Unique tag for an insert: replica name plus per-replica counter."""

    replica: str
    counter: int

    def __str__(self) -> str:
        return f"{self.replica}:{self.counter}"


@dataclass(frozen=True)
class Id:
    """The edit that does nothing."""


@dataclass(frozen=True)
class Ins:
    """Insert a slot of type ``type`` at ``index``, shifting indexes >= index right."""

    index: int
    type: AtomType
    uid: EditId


@dataclass(frozen=True)
class Conv:
    """Set the declared type at ``index``, keeping the stored value."""

    index: int
    type: AtomType


@dataclass(frozen=True)
class Move:
    """Copy the slot at ``source`` to ``target`` and tombstone the source."""

    target: int
    source: int

    def __post_init__(self):
        if self.target == self.source:
            raise InvalidEdit(f"move target and source must differ (got {self.target})")


Edit = Union[Id, Ins, Conv, Move]

ID = Id()


def validate_edit(e: Edit, arity: int) -> bool:
    """True iff ``e`` makes sense on a document with ``arity`` slots."""
    if isinstance(e, Id):
        return True
    if isinstance(e, Ins):
        return 1 <= e.index <= arity + 1
    if isinstance(e, Conv):
        return 1 <= e.index <= arity
    if isinstance(e, Move):
        return (
            1 <= e.target <= arity
            and 1 <= e.source <= arity
            and e.target != e.source
        )
    return False


def apply_edit(e: Edit, d: Document) -> Document:
    """Apply one edit, returning a new document; ``d`` is never mutated."""
    if not validate_edit(e, d.arity):
        raise InvalidEdit(f"{e!r} is not valid on a document of arity {d.arity}")
    if isinstance(e, Id):
        return d
    if isinstance(e, Ins):
        i = e.index - 1
        return Document(d.slots[:i] + ((NULL, e.type),) + d.slots[i:])
    if isinstance(e, Conv):
        i = e.index - 1
        v, _ = d.slots[i]
        return Document(d.slots[:i] + ((v, e.type),) + d.slots[i + 1 :])
    # Move: target gets the source slot wholesale, source becomes a tombstone.
    slots = list(d.slots)
    slots[e.target - 1] = d.slots[e.source - 1]
    slots[e.source - 1] = (NULL, DEL)
    return Document(tuple(slots))


def replay(d: Document, edits) -> Document:
    for e in edits:
        d = apply_edit(e, d)
    return d


def default_value(t: AtomType) -> Value:
    if t is NUM:
        return Value.number(0)
    if t is STR:
        return Value.text("")
    if t is BOOL:
        return Value.truth(False)
    return NULL  # del


def format_number(d: Decimal) -> str:
    """Shortest plain-decimal rendering (no exponent), round-trippable."""
    return format(d.normalize(), "f")


def convert_value(v: Value, t: AtomType):
    """Convert ``v`` for display under type ``t``; ERROR when unconvertible.

    Conversions are strict and deterministic: num<->str via exact decimal
    text, bool<->str via "true"/"false", num<->bool never. Null takes the
    type's default. A del slot displays Null whatever is stored.
    """
    if t is DEL:
        return NULL
    if v.tag == "null":
        return default_value(t)
    if v.tag == t.value:
        return v
    if t is STR:
        if v.tag == "num":
            return Value.text(format_number(v.raw))
        if v.tag == "bool":
            return Value.text("true" if v.raw else "false")
    if t is NUM and v.tag == "str":
        s = v.raw
        if s and s == s.strip():
            try:
                parsed = Decimal(s)
            except InvalidOperation:
                return ERROR
            if parsed.is_finite():
                return Value.number(parsed)
        return ERROR
    if t is BOOL and v.tag == "str":
        if v.raw == "true":
            return Value.truth(True)
        if v.raw == "false":
            return Value.truth(False)
        return ERROR
    return ERROR


DisplaySlot = tuple[Union[Value, ErrorMarker], AtomType]


@dataclass(frozen=True)
class ConformedDocument:
    """The type-correct view of a document; what programs and displays see."""

    slots: tuple[DisplaySlot, ...]


def conform(d: Document) -> ConformedDocument:
    return ConformedDocument(
        tuple((convert_value(v, t), t) for v, t in d.slots)
    )


def documents_equivalent(a: Document, b: Document) -> bool:
    """Equality up to tombstone contents.

    Declared types must match slot for slot, and stored values must match
    except under ``del``, where the stored value is unobservable (conform
    masks it to Null). This is the document equality all the commutation
    and convergence checks use: the conflicting-Move rule tombstones the
    overridden source with a value-preserving Conv, so the two composite
    paths may legitimately differ in what a tombstone still carries.
    """
    if a.arity != b.arity:
        return False
    for (va, ta), (vb, tb) in zip(a.slots, b.slots):
        if ta is not tb:
            return False
        if ta is not DEL and va != vb:
            return False
    return True
