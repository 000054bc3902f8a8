"""Projection and retraction of edits across a single diff edit.

``project(pre, diff)`` answers: given an edit ``pre`` made before ``diff``,
what edit ``post`` does the same thing after it, and what ``adjust`` is the
new difference? ``retract(post, diff)`` is the reverse direction and can be
undefined when ``post`` depends on ``diff`` (e.g. it touches a slot the
diff created).

Both satisfy, whenever defined and for every document on which the pair is
valid: apply(post, apply(diff, d)) == apply(adjust, apply(pre, d)), up to
tombstone contents (see ``documents_equivalent``).

Rule precedence: Id fixpoint, then exact structural equality (insert
equality includes the unique id), then the location-specific rules.
Projection is total over valid pairs; an unmatched pair raises
UnhandledPair loudly rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .document import Conv, DEL, Edit, ID, Id, Ins, Move
from .errors import UnhandledPair


@dataclass(frozen=True)
class Defined:
    """A successful transform: the carried edit plus the adjusted diff.

    ``grounded`` is True when the carried edit collapsed to Id even though
    the input edit was not Id (a duplicate cancelled or a conflict was
    overridden); migration's conflict accounting keys off it.
    """

    result: Edit
    adjusted: Edit
    grounded: bool = False


@dataclass(frozen=True)
class Undefined:
    """The edit depends on the diff and cannot be carried through it."""

    reason: str


TransformOutcome = Union[Defined, Undefined]


def _shift_up(index: int, at: int) -> int:
    """Index after an insert at ``at``."""
    return index + 1 if index >= at else index


def project(pre: Edit, diff: Edit) -> Defined:
    if isinstance(pre, Id):
        return Defined(ID, diff)
    if isinstance(diff, Id):
        return Defined(pre, ID)
    # Exact equality cancels for Ins (same event, by id) and Conv (both
    # sides made the same lossless change). Two structurally equal Moves
    # are distinct events with no identity to match on, and cancelling
    # them breaks interleaving invariance; they take the conflicting-move
    # rule instead.
    if pre == diff and not isinstance(pre, Move):
        return Defined(ID, ID, grounded=True)

    if isinstance(diff, Ins):
        i = diff.index
        if isinstance(pre, Conv):
            return Defined(Conv(_shift_up(pre.index, i), pre.type), diff)
        if isinstance(pre, Move):
            return Defined(
                Move(_shift_up(pre.target, i), _shift_up(pre.source, i)), diff
            )
        if isinstance(pre, Ins):
            if pre.uid == diff.uid:
                # Same insertion event seen on both sides; indexes may have
                # drifted with context, but the id says they cancel.
                return Defined(ID, ID, grounded=True)
            if i <= pre.index:
                return Defined(Ins(pre.index + 1, pre.type, pre.uid), diff)
            return Defined(pre, Ins(diff.index + 1, diff.type, diff.uid))

    if isinstance(diff, Conv):
        i = diff.index
        if isinstance(pre, Conv):
            if pre.index == i:  # conflicting conversions: pre wins, diff grounds
                return Defined(pre, ID)
            return Defined(pre, diff)
        if isinstance(pre, Move):
            if pre.target == i:  # move overwrites the converted slot: diff grounds
                return Defined(pre, ID)
            if pre.source == i:  # conversion follows the moved value
                return Defined(pre, Conv(pre.target, diff.type))
            return Defined(pre, diff)
        if isinstance(pre, Ins):
            if pre.index <= i:
                return Defined(pre, Conv(i + 1, diff.type))
            return Defined(pre, diff)

    if isinstance(diff, Move):
        i, j = diff.target, diff.source
        if isinstance(pre, Conv):
            k = pre.index
            if k == i:
                # Can't project a Conv to the move's target: it would
                # retract to the source. The Conv grounds out.
                return Defined(ID, diff, grounded=True)
            if k == j:  # conversion follows the moved value
                return Defined(Conv(i, pre.type), diff)
            return Defined(pre, diff)
        if isinstance(pre, Ins):
            k = pre.index
            return Defined(pre, Move(_shift_up(i, k), _shift_up(j, k)))
        if isinstance(pre, Move):
            pt, ps = pre.target, pre.source
            if pt == i:  # conflicting moves
                if ps == j:
                    # The diff's own move done again: the value it moved
                    # to i is consumed, so the diff-side target tombstones.
                    return Defined(pre, Conv(i, DEL))
                return Defined(pre, Conv(j, DEL))
            if pt == j and ps == i:
                # Opposing moves annihilate: both slots end tombstoned
                # either way, so each side just replays the other's move.
                return Defined(Move(i, j), Move(pt, ps))
            if pt == j:  # pre targets the vacated source: retarget to i
                return Defined(Move(i, ps), diff)
            if ps == j:  # pre picks up the moved value at its new home
                return Defined(Move(pt, i), diff)
            if ps == i:
                # pre wanted the value the diff overwrote; nothing of it
                # survives on the diff side, so both sides end with the
                # moved value at pre's target and tombstones elsewhere.
                return Defined(pre, Move(pt, j))
            return Defined(pre, diff)

    raise UnhandledPair(f"no projection rule for {pre!r} over {diff!r}")


def retract(post: Edit, diff: Edit) -> TransformOutcome:
    if isinstance(post, Id):
        return Defined(ID, diff)
    if isinstance(diff, Id):
        return Defined(post, ID)
    # Exact equality cancels for Ins (same event, by id) and Conv (a
    # repeat conversion is a no-op: same type, value kept). A structurally
    # equal Move is a distinct later edit with real effect (it moves the
    # tombstone left by the first), so it takes the conflicting-move rule.
    if post == diff and not isinstance(post, Move):
        return Defined(ID, diff, grounded=True)

    if isinstance(diff, Ins):
        i = diff.index
        if isinstance(post, Ins):
            if post.uid == diff.uid:
                # Same insertion event on both legs; cancel by id even if
                # the indexes have drifted with context.
                return Defined(ID, diff, grounded=True)
            if post.index == i:
                # Not even another insert at that index: the retraction
                # would not be reversible by a projection.
                return Undefined(f"insert at {i} collides with the insert of {i}")
            if post.index > i:
                return Defined(Ins(post.index - 1, post.type, post.uid), diff)
            return Defined(post, Ins(i + 1, diff.type, diff.uid))
        if isinstance(post, Conv):
            if post.index == i:
                return Undefined(f"conversion of slot {i} depends on its insert")
            if post.index > i:
                return Defined(Conv(post.index - 1, post.type), diff)
            return Defined(post, diff)
        if isinstance(post, Move):
            if post.target == i or post.source == i:
                return Undefined(f"move touching slot {i} depends on its insert")
            t = post.target - 1 if post.target > i else post.target
            s = post.source - 1 if post.source > i else post.source
            return Defined(Move(t, s), diff)

    if isinstance(diff, Conv):
        i = diff.index
        if isinstance(post, Conv):
            if post.index == i:  # conflicting conversions: post wins, diff grounds
                return Defined(post, ID)
            return Defined(post, diff)
        if isinstance(post, Move):
            if post.target == i:  # move overwrites the converted slot
                return Defined(post, ID)
            if post.source == i:  # conversion followed the value; pull it back
                return Defined(post, Conv(post.target, diff.type))
            return Defined(post, diff)
        if isinstance(post, Ins):
            if post.index <= i:
                return Defined(post, Conv(i + 1, diff.type))
            return Defined(post, diff)

    if isinstance(diff, Move):
        i, j = diff.target, diff.source
        if isinstance(post, Ins):
            k = post.index
            return Defined(post, Move(_shift_up(i, k), _shift_up(j, k)))
        if isinstance(post, Conv):
            k = post.index
            if k == i:  # conversion at the target pulls back to the source
                return Defined(Conv(j, post.type), diff)
            if k == j:
                if post.type is DEL:
                    # Deleting the tombstone the move left is a no-op.
                    return Defined(ID, diff, grounded=True)
                return Undefined(
                    f"conversion of slot {j} depends on the move that vacated it"
                )
            return Defined(post, diff)
        if isinstance(post, Move):
            pt, ps = post.target, post.source
            if pt == i:  # conflicting moves
                if ps == j:
                    # The diff's own move done again: the value it moved
                    # to i is consumed, so the pre-side target tombstones.
                    return Defined(post, Conv(i, DEL))
                return Defined(post, Conv(j, DEL))
            if pt == j or ps == j:
                return Undefined(
                    f"move touching slot {j} depends on the move that vacated it"
                )
            if ps == i:  # the moved value is picked up; pull back to the source
                return Defined(Move(pt, j), diff)
            return Defined(post, diff)

    raise UnhandledPair(f"no retraction rule for {post!r} through {diff!r}")
