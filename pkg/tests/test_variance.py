"""Agreement maintenance: translate, record_edit, rebuild."""

import pytest

from tuplevcs import (
    AtomType,
    Blocked,
    ID,
    Ins,
    Conv,
    Move,
    Translated,
    VariantPair,
    documents_equivalent,
    record_edit,
    rebuild,
    replay,
    translate,
)
from tuplevcs.errors import InvalidEdit

from conftest import doc, eid

NUM, STR, BOOL, DEL = AtomType.NUM, AtomType.STR, AtomType.BOOL, AtomType.DEL


def golden_pair():
    # agreement (num); A inserted a bool in front, B converted to str.
    return VariantPair(
        agreement=doc("num"),
        diffs_a=(Ins(1, BOOL, eid()),),
        diffs_b=(Conv(1, STR),),
    )


class TestTranslate:
    def test_absorbable_edit_translates_to_id(self):
        pair = golden_pair()
        out = translate(Conv(2, STR), pair.diffs_a, pair.diffs_b)
        assert isinstance(out, Translated)
        assert out.delta == ID
        assert out.to_agreement == Conv(1, STR)
        assert out.clean
        assert out.adjusted_own == (Ins(1, BOOL, eid()),)
        assert out.adjusted_other == (ID,)

    def test_new_difference_translates_through(self):
        pair = golden_pair()
        out = translate(Conv(2, BOOL), pair.diffs_a, pair.diffs_b)
        assert isinstance(out, Translated)
        assert out.delta == Conv(1, BOOL)
        assert not out.clean  # it overrides B's Conv(1, STR)
        assert out.grounded_at == (1,)

    def test_dependent_edit_is_blocked(self):
        pair = golden_pair()
        out = translate(Conv(1, STR), pair.diffs_a, pair.diffs_b)
        assert out == Blocked(dependency_index=1)

    def test_losing_a_conflict_marks_overridden(self):
        pair = VariantPair(doc("bool"), (), (Conv(1, STR),))
        out = translate(Conv(1, STR), (), pair.diffs_b)
        assert isinstance(out, Translated)
        assert out.delta == ID and out.grounded_at == () and not out.overridden

        out = translate(Conv(1, NUM), (Conv(1, STR),), ())
        assert isinstance(out, Translated)
        assert out.own_grounded_at == (1,)


class TestRecordEdit:
    def test_absorb(self):
        # Recording B's conversion on A's side collapses the difference.
        pair = record_edit(golden_pair(), "A", Conv(2, STR))
        assert pair.agreement.types() == (STR,)
        assert pair.diffs_a == (Ins(1, BOOL, eid()),)
        assert pair.diffs_b == ()

    def test_append(self):
        pair = record_edit(golden_pair(), "A", Conv(2, BOOL))
        assert pair.agreement == golden_pair().agreement
        assert pair.diffs_a == (Ins(1, BOOL, eid()), Conv(2, BOOL))
        assert pair.diffs_b == (Conv(1, STR),)

    def test_blocked_edit_is_appended(self):
        before = golden_pair()
        pair = record_edit(before, "A", Conv(1, NUM))
        assert pair.diffs_a == before.diffs_a + (Conv(1, NUM),)
        assert pair.agreement == before.agreement

    def test_id_is_not_recordable(self):
        with pytest.raises(InvalidEdit):
            record_edit(golden_pair(), "A", ID)

    def test_invalid_edit_rejected(self):
        with pytest.raises(InvalidEdit):
            record_edit(golden_pair(), "B", Conv(5, NUM))

    def test_documents_track_replays(self):
        pair = golden_pair()
        for side, e in [("A", Conv(2, BOOL)), ("B", Ins(2, NUM, eid("B", 1))), ("A", Conv(2, STR))]:
            pair = record_edit(pair, side, e)
            assert documents_equivalent(
                pair.document(side), replay(pair.agreement, pair.diffs(side))
            )

    def test_symmetric_absorb_from_b(self):
        # Mirror image: record A's insert on B's side.
        pair = record_edit(golden_pair(), "B", Ins(1, BOOL, eid()))
        assert pair.agreement.types() == (BOOL, NUM)
        assert pair.diffs_a == ()
        assert pair.diffs_b == (Conv(2, STR),)

    def test_conflict_loser_is_kept_as_difference(self):
        # B converts the same slot to a different type: the edit loses to
        # A's difference but stays recorded (absorbing it would make the
        # result depend on arrival order).
        pair = VariantPair(doc("bool"), (Conv(1, NUM),), ())
        pair = record_edit(pair, "B", Conv(1, STR))
        assert pair.diffs_b == (Conv(1, STR),)
        assert pair.agreement == doc("bool")


class TestRebuild:
    def test_rebuild_golden_pair(self):
        ancestor = doc("num")
        pair = rebuild(ancestor, (Ins(1, BOOL, eid()),), (Conv(1, STR),))
        assert pair == golden_pair()

    def test_shared_prefix_is_absorbed(self):
        ancestor = doc("num", "str")
        shared = (Conv(1, BOOL),)
        pair = rebuild(ancestor, shared + (Conv(2, NUM),), shared)
        assert pair.agreement.types() == (BOOL, STR)
        assert pair.diffs_a == (Conv(2, NUM),)
        assert pair.diffs_b == ()

    def test_identical_move_free_histories_leave_no_differences(self):
        h = (Ins(1, NUM, eid()), Conv(1, STR), Ins(2, BOOL, eid("p", 2)))
        pair = rebuild(doc(), h, h)
        assert pair.diffs_a == () and pair.diffs_b == ()
        assert documents_equivalent(pair.agreement, replay(doc(), h))

    def test_identical_histories_with_moves_may_keep_differences(self):
        # A move has no cancellation identity, so the same move on both
        # sides survives as a pair of differences; the documents still agree.
        h = (Move(2, 1),)
        pair = rebuild(doc("num", "str"), h, h)
        assert documents_equivalent(pair.document("A"), pair.document("B"))
        assert pair.diffs_a != () or pair.diffs_b != ()

    def test_ids_in_history_are_skipped(self):
        pair = rebuild(doc("num"), (ID, Conv(1, STR), ID), (ID,))
        assert pair.diffs_b == ()
        assert pair.diffs_a == (Conv(1, STR),)

    def test_rebuild_matches_incremental_recording(self):
        ancestor = doc("num", "str")
        ha = (Conv(1, BOOL), Ins(1, NUM, eid("A", 1)))
        hb = (Conv(2, NUM), Conv(1, BOOL))
        pair = VariantPair(ancestor, (), hb)
        for e in ha:
            pair = record_edit(pair, "A", e)
        assert rebuild(ancestor, ha, hb) == pair
