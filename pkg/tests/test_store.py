"""Image files: canonical JSON persistence and id allocation."""

import json

import pytest

from tuplevcs import AtomType, Conv, ID, Ins, Move
from tuplevcs.document import EditId
from tuplevcs.errors import FormatError, InvalidEdit, VersionError
from tuplevcs.store import (
    ImageFile,
    dump_image,
    load_image,
    new_image,
    parse_image,
    save_image,
)

from conftest import eid


def sample_image():
    img = new_image("alice")
    uid, img = img.fresh_id()
    img = img.append(Ins(1, AtomType.NUM, uid))
    img = img.append(Conv(1, AtomType.STR))
    uid, img = img.fresh_id()
    img = img.append(Ins(2, AtomType.BOOL, uid))
    img = img.append(Move(1, 2))
    img = img.append(ID)
    return img


class TestImageFile:
    def test_fresh_ids_are_sequential(self):
        img = new_image("alice")
        uid1, img = img.fresh_id()
        uid2, img = img.fresh_id()
        assert (uid1, uid2) == (EditId("alice", 1), EditId("alice", 2))
        assert img.counter == 3

    def test_document_is_replayed(self):
        img = sample_image()
        assert img.document().types() == (AtomType.BOOL, AtomType.DEL)

    def test_append_validates(self):
        img = new_image("alice")
        with pytest.raises(InvalidEdit):
            img.append(Conv(1, AtomType.NUM))


class TestRoundTrip:
    def test_dump_parse_round_trip(self):
        img = sample_image()
        assert parse_image(dump_image(img)) == img

    def test_save_load_round_trip(self, tmp_path):
        path = tmp_path / "alice.json"
        save_image(path, sample_image())
        assert load_image(path) == sample_image()

    def test_dump_is_canonical(self):
        text = dump_image(sample_image())
        assert text == dump_image(parse_image(text))
        assert text.endswith("\n")
        obj = json.loads(text)
        assert list(obj) == sorted(obj)

    def test_insert_ids_survive(self):
        img = parse_image(dump_image(sample_image()))
        inserts = [e for e in img.history if isinstance(e, Ins)]
        assert [e.uid for e in inserts] == [eid("alice", 1), eid("alice", 2)]


class TestParseErrors:
    def test_not_json(self):
        with pytest.raises(FormatError):
            parse_image("{nope")

    def test_not_an_object(self):
        with pytest.raises(FormatError):
            parse_image("[1, 2]")

    def test_wrong_version(self):
        obj = json.loads(dump_image(new_image("a")))
        obj["formatVersion"] = 99
        with pytest.raises(VersionError):
            parse_image(json.dumps(obj))

    @pytest.mark.parametrize("field", ["replica", "counter", "history"])
    def test_missing_fields(self, field):
        obj = json.loads(dump_image(new_image("a")))
        del obj[field]
        with pytest.raises(FormatError):
            parse_image(json.dumps(obj))

    def test_bad_field_types(self):
        obj = json.loads(dump_image(new_image("a")))
        obj["counter"] = "1"
        with pytest.raises(FormatError):
            parse_image(json.dumps(obj))

    def test_malformed_edit(self):
        obj = json.loads(dump_image(new_image("a")))
        obj["history"] = [{"op": "conv", "index": 1}]
        with pytest.raises(FormatError):
            parse_image(json.dumps(obj))

    def test_unknown_op(self):
        obj = json.loads(dump_image(new_image("a")))
        obj["history"] = [{"op": "swap"}]
        with pytest.raises(FormatError):
            parse_image(json.dumps(obj))

    def test_history_must_replay(self):
        obj = json.loads(dump_image(new_image("a")))
        obj["history"] = [{"op": "conv", "index": 1, "type": "num"}]
        with pytest.raises(FormatError):
            parse_image(json.dumps(obj))
