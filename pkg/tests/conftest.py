"""Shared builders for tests."""

from decimal import Decimal

from tuplevcs import AtomType, Document, EditId, Value

TYPES = {t.value: t for t in AtomType}


def doc(*slots) -> Document:
    """doc(("num", 5), ("str", "hi"), "bool") builds a document; a bare
    type string gets a distinct default number so values are observable."""
    built = []
    for k, spec in enumerate(slots):
        if isinstance(spec, str):
            built.append((Value.number(k + 1), TYPES[spec]))
            continue
        type_name, raw = spec
        if isinstance(raw, bool):
            value = Value.truth(raw)
        elif isinstance(raw, (int, float, Decimal)):
            value = Value.number(raw)
        elif raw is None:
            value = Value("null", None)
        else:
            value = Value.text(raw)
        built.append((value, TYPES[type_name]))
    return Document(tuple(built))


def eid(replica: str = "p", counter: int = 1) -> EditId:
    return EditId(replica, counter)
