"""Agreement and difference maintenance between two variant documents.

A ``VariantPair`` holds the derived optimal ancestor (the agreement) and
the two edit sequences that rebuild each variant from it. ``record_edit``
keeps the pair up to date as either side is edited: the new edit is
translated to the other side by retracting it backwards through its own
differences and projecting it forwards through the other side's. When the
translation comes out as Id the edit made no new difference and is
absorbed into the agreement; otherwise it is appended to its side's
differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Union

from .document import Document, Edit, ID, Id, apply_edit, replay, validate_edit
from .errors import InvalidEdit
from .transform import Defined, Undefined, project, retract

Side = Literal["A", "B"]


@dataclass(frozen=True)
class VariantPair:
    """Agreement plus the two difference sequences (never containing Id)."""

    agreement: Document
    diffs_a: tuple[Edit, ...] = ()
    diffs_b: tuple[Edit, ...] = ()

    def diffs(self, side: Side) -> tuple[Edit, ...]:
        return self.diffs_a if side == "A" else self.diffs_b

    def document(self, side: Side) -> Document:
        return replay(self.agreement, self.diffs(side))


@dataclass(frozen=True)
class Translated:
    """Result of carrying an edit across the pair.

    ``delta`` is the equivalent edit on the other side; the adjusted
    sequences keep Id placeholders so positions still line up (pruning is
    the caller's business). ``to_agreement`` is the edit as retracted all
    the way back to the agreement; ``grounded_at`` lists 1-based positions
    of other-side differences that were overridden to Id on the way, and
    ``own_grounded_at`` the own-side differences overridden during
    retraction. ``overridden`` is True when the carried edit itself was
    grounded by an other-side difference (it lost a conflict). A
    translation is clean when none of the three is set; only clean
    translations may be absorbed.
    """

    delta: Edit
    adjusted_own: tuple[Edit, ...]
    adjusted_other: tuple[Edit, ...]
    to_agreement: Edit
    grounded_at: tuple[int, ...] = ()
    own_grounded_at: tuple[int, ...] = ()
    overridden: bool = False

    @property
    def clean(self) -> bool:
        return not (self.grounded_at or self.own_grounded_at or self.overridden)


@dataclass(frozen=True)
class Blocked:
    """The edit depends on difference #dependency_index of its own side."""

    dependency_index: int


TranslateOutcome = Union[Translated, Blocked]


def translate(
    e: Edit, diffs_own: Iterable[Edit], diffs_other: Iterable[Edit]
) -> TranslateOutcome:
    """Retract ``e`` through its own diffs (reversed), project through the other's."""
    own = list(diffs_own)
    other = list(diffs_other)

    eps = e
    adjusted_own = list(own)
    own_grounded = []
    for i in range(len(own), 0, -1):
        out = retract(eps, own[i - 1])
        if isinstance(out, Undefined):
            return Blocked(dependency_index=i)
        if out.adjusted == ID and out.result != ID:
            own_grounded.append(i)  # overrode an earlier own difference
        elif out.result == ID and out.grounded:
            own_grounded.append(i)  # cancelled against an own duplicate
        eps, adjusted_own[i - 1] = out.result, out.adjusted

    to_agreement = eps
    delta = eps
    adjusted_other = list(other)
    grounded = []
    overridden = False
    for i in range(1, len(other) + 1):
        out = project(delta, other[i - 1])
        if out.adjusted == ID and out.result != ID:
            grounded.append(i)  # overridden, as opposed to duplicate-cancelled
        elif out.result == ID and out.grounded and out.adjusted != ID:
            overridden = True  # the carried edit lost to this difference
        delta, adjusted_other[i - 1] = out.result, out.adjusted

    return Translated(
        delta=delta,
        adjusted_own=tuple(adjusted_own),
        adjusted_other=tuple(adjusted_other),
        to_agreement=to_agreement,
        grounded_at=tuple(grounded),
        own_grounded_at=tuple(reversed(own_grounded)),
        overridden=overridden,
    )


def prune_ids(edits: Iterable[Edit]) -> tuple[Edit, ...]:
    return tuple(e for e in edits if not isinstance(e, Id))


def record_edit(pair: VariantPair, side: Side, e: Edit) -> VariantPair:
    """Apply a fresh edit on one side and fold it into the pair's bookkeeping."""
    if isinstance(e, Id):
        raise InvalidEdit("Id edits are not recordable")
    doc = pair.document(side)
    if not validate_edit(e, doc.arity):
        raise InvalidEdit(f"{e!r} is not valid on side {side} (arity {doc.arity})")

    own = pair.diffs(side)
    other = pair.diffs("B" if side == "A" else "A")
    out = translate(e, own, other)

    if isinstance(out, Translated) and out.delta == ID and out.clean:
        # Absorbed: the other side already has this change; advance the
        # agreement and keep the adjusted differences, dropping Ids. Only
        # clean translations absorb: a delta that grounded because it
        # lost a conflict, or that overrode other differences on the way,
        # is still a difference and is appended below (which pairing of
        # conflicting edits cancels would otherwise depend on arrival
        # order, breaking interleaving invariance).
        agreement = apply_edit(out.to_agreement, pair.agreement)
        new_own = prune_ids(out.adjusted_own)
        new_other = prune_ids(out.adjusted_other)
        if side == "A":
            return VariantPair(agreement, new_own, new_other)
        return VariantPair(agreement, new_other, new_own)

    # Makes a new difference (or is blocked on one): append it as-is.
    if side == "A":
        return VariantPair(pair.agreement, own + (e,), pair.diffs_b)
    return VariantPair(pair.agreement, pair.diffs_a, own + (e,))


def rebuild(
    ancestor: Document,
    history_a: Iterable[Edit],
    history_b: Iterable[Edit],
) -> VariantPair:
    """Derive the pair from scratch: B's history becomes its differences,
    then each A edit is recorded in turn."""
    diffs_b = prune_ids(history_b)
    doc = ancestor
    for e in diffs_b:
        doc = apply_edit(e, doc)  # validates B's replay
    pair = VariantPair(ancestor, (), diffs_b)
    for e in history_a:
        if isinstance(e, Id):
            continue
        pair = record_edit(pair, "A", e)
    return pair
