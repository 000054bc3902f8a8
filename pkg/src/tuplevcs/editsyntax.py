"""Textual edit syntax: ``ins <i> <type>``, ``conv <i> <type>``,
``move <i> <j>``, ``id``.

The textual form carries no insert id: the store assigns a fresh one when
an insert is recorded, and printing drops it again. Within those limits
parse and print are mutual inverses.
"""

from __future__ import annotations

from typing import Optional

from .document import AtomType, Conv, Edit, EditId, ID, Id, Ins, Move
from .errors import ParseError

_TYPES = {t.value: t for t in AtomType}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    for part in text.split(" "):
        if part:
            tokens.append((part, pos))
        pos += len(part) + 1
    return tokens


def _parse_index(token: str, pos: int, what: str) -> int:
    if not token.isdigit() or int(token) < 1:
        raise ParseError(f"expected a positive {what}, got {token!r}", pos)
    return int(token)


def _parse_type(token: str, pos: int) -> AtomType:
    if token not in _TYPES:
        raise ParseError(
            f"expected a type (num/str/bool/del), got {token!r}", pos
        )
    return _TYPES[token]


def parse_edit(text: str, fresh_id: Optional[EditId] = None) -> Edit:
    """Parse one edit command; inserts need ``fresh_id`` for their identity."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty edit", 0)
    word, pos = tokens[0]

    def expect(n: int):
        if len(tokens) != n:
            at = len(text) if len(tokens) < n else tokens[n][1]
            raise ParseError(f"'{word}' takes {n - 1} argument(s)", at)

    if word == "id":
        expect(1)
        return ID
    if word == "ins":
        expect(3)
        if fresh_id is None:
            raise ParseError("insert needs an id from the store", pos)
        return Ins(
            _parse_index(*tokens[1], what="index"),
            _parse_type(*tokens[2]),
            fresh_id,
        )
    if word == "conv":
        expect(3)
        return Conv(
            _parse_index(*tokens[1], what="index"), _parse_type(*tokens[2])
        )
    if word == "move":
        expect(3)
        target = _parse_index(*tokens[1], what="index")
        source = _parse_index(*tokens[2], what="index")
        if target == source:
            raise ParseError("move target and source must differ", tokens[2][1])
        return Move(target, source)
    raise ParseError(f"unknown edit {word!r}", pos)


def print_edit(e: Edit) -> str:
    if isinstance(e, Id):
        return "id"
    if isinstance(e, Ins):
        return f"ins {e.index} {e.type.value}"
    if isinstance(e, Conv):
        return f"conv {e.index} {e.type.value}"
    return f"move {e.target} {e.source}"


def caret_message(text: str, err: ParseError) -> str:
    """Two-line parse error display with a caret under the bad token."""
    return f"{text}\n{' ' * err.position}^ {err}"
