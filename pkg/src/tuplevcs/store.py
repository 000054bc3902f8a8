"""Image files: a replica tag, an id counter, and the full edit history.

Document state is never stored; it is always derived by replaying the
history from the empty document, so state and history cannot drift apart.
Serialization is canonical JSON (sorted keys, fixed indentation) so that
identical command sequences produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .document import (
    AtomType,
    Conv,
    Document,
    EMPTY,
    Edit,
    EditId,
    ID,
    Id,
    Ins,
    Move,
    replay,
    validate_edit,
)
from .errors import FormatError, InvalidEdit, VersionError

FORMAT_VERSION = 1

_TYPES = {t.value: t for t in AtomType}


def edit_to_json(e: Edit) -> dict:
    if isinstance(e, Id):
        return {"op": "id"}
    if isinstance(e, Ins):
        return {"op": "ins", "index": e.index, "type": e.type.value, "id": str(e.uid)}
    if isinstance(e, Conv):
        return {"op": "conv", "index": e.index, "type": e.type.value}
    return {"op": "move", "target": e.target, "source": e.source}


def edit_from_json(obj) -> Edit:
    try:
        op = obj["op"]
        if op == "id":
            return ID
        if op == "ins":
            replica, _, counter = obj["id"].rpartition(":")
            return Ins(obj["index"], _TYPES[obj["type"]], EditId(replica, int(counter)))
        if op == "conv":
            return Conv(obj["index"], _TYPES[obj["type"]])
        if op == "move":
            return Move(obj["target"], obj["source"])
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise FormatError(f"malformed edit {obj!r}: {exc}") from exc
    raise FormatError(f"unknown edit op {op!r}")


@dataclass(frozen=True)
class ImageFile:
    replica: str
    counter: int  # next EditId counter for this replica
    history: tuple[Edit, ...] = ()
    format_version: int = FORMAT_VERSION

    def document(self) -> Document:
        return replay(EMPTY, self.history)

    def fresh_id(self) -> tuple[EditId, "ImageFile"]:
        return EditId(self.replica, self.counter), replace(
            self, counter=self.counter + 1
        )

    def append(self, e: Edit) -> "ImageFile":
        """Append one edit, validated against the replayed document."""
        if not validate_edit(e, self.document().arity):
            raise InvalidEdit(
                f"{e!r} is not valid at arity {self.document().arity}"
            )
        return replace(self, history=self.history + (e,))


def _check_replay(history: tuple[Edit, ...]) -> None:
    arity = 0
    for step, e in enumerate(history, 1):
        if not validate_edit(e, arity):
            raise FormatError(
                f"history step {step} ({e!r}) is invalid at arity {arity}"
            )
        if isinstance(e, Ins):
            arity += 1


def dump_image(image: ImageFile) -> str:
    obj = {
        "formatVersion": image.format_version,
        "replica": image.replica,
        "counter": image.counter,
        "history": [edit_to_json(e) for e in image.history],
    }
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def parse_image(text: str) -> ImageFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"not valid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(obj, dict):
        raise FormatError("image file must be a JSON object")
    version = obj.get("formatVersion")
    if version != FORMAT_VERSION:
        raise VersionError(f"unsupported format version {version!r}")
    try:
        replica = obj["replica"]
        counter = obj["counter"]
        raw_history = obj["history"]
    except KeyError as exc:
        raise FormatError(f"missing field {exc.args[0]!r}") from exc
    if not isinstance(replica, str) or not isinstance(counter, int):
        raise FormatError("replica must be a string and counter an integer")
    if not isinstance(raw_history, list):
        raise FormatError("history must be a list")
    history = tuple(edit_from_json(e) for e in raw_history)
    _check_replay(history)
    return ImageFile(replica=replica, counter=counter, history=history)


def save_image(path, image: ImageFile) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_image(image))


def load_image(path) -> ImageFile:
    with open(path, "r", encoding="utf-8") as f:
        return parse_image(f.read())


def new_image(replica: str) -> ImageFile:
    return ImageFile(replica=replica, counter=1)
