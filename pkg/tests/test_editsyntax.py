"""Textual edit syntax: parse, print, caret errors."""

import pytest

from tuplevcs import AtomType, Conv, ID, Ins, Move
from tuplevcs.editsyntax import caret_message, parse_edit, print_edit
from tuplevcs.errors import ParseError

from conftest import eid


class TestParse:
    def test_id(self):
        assert parse_edit("id") == ID

    def test_conv(self):
        assert parse_edit("conv 3 str") == Conv(3, AtomType.STR)

    def test_move(self):
        assert parse_edit("move 2 5") == Move(2, 5)

    def test_ins_takes_the_supplied_id(self):
        assert parse_edit("ins 1 bool", eid("r", 4)) == Ins(
            1, AtomType.BOOL, eid("r", 4)
        )

    def test_extra_spaces_tolerated(self):
        assert parse_edit("  conv   1  num ") == Conv(1, AtomType.NUM)

    @pytest.mark.parametrize(
        "text,at",
        [
            ("", 0),
            ("frobnicate 1 2", 0),
            ("conv 0 num", 5),
            ("conv x num", 5),
            ("conv 1 float", 7),
            ("conv 1", 6),
            ("conv 1 num extra", 11),
            ("move 2 2", 7),
            ("ins 1 num", 0),  # no fresh id supplied
        ],
    )
    def test_errors_carry_positions(self, text, at):
        with pytest.raises(ParseError) as exc:
            parse_edit(text)
        assert exc.value.position == at


class TestPrint:
    @pytest.mark.parametrize(
        "e,text",
        [
            (ID, "id"),
            (Conv(2, AtomType.DEL), "conv 2 del"),
            (Move(1, 3), "move 1 3"),
            (Ins(4, AtomType.NUM, eid()), "ins 4 num"),
        ],
    )
    def test_print(self, e, text):
        assert print_edit(e) == text

    def test_round_trip(self):
        for text in ["id", "conv 7 bool", "move 9 1"]:
            assert print_edit(parse_edit(text)) == text
        assert print_edit(parse_edit("ins 2 str", eid())) == "ins 2 str"


class TestCaretMessage:
    def test_caret_under_bad_token(self):
        text = "conv 1 float"
        with pytest.raises(ParseError) as exc:
            parse_edit(text)
        msg = caret_message(text, exc.value)
        first, second = msg.split("\n")
        assert first == text
        assert second.startswith(" " * 7 + "^")
        assert "float" in second
