"""Cherry-picking differences across a variant pair.

``migrate`` carries one difference over to the other side: it is removed
from its sequence, retracted through the differences before it, applied to
the agreement, and projected through the other side's differences; the
differences after it are kept verbatim. An other-side difference that gets
overridden to Id on the way is a conflict: the migrated edit won, and the
overridden one is reported. A difference that cannot be retracted through
an earlier one depends on it, and that dependency must be migrated first
(``migrate_with_dependencies`` automates this). ``merge_all`` migrates a
whole side in a chosen order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .document import Edit, ID, apply_edit
from .errors import DependencyError, IndexOutOfRange
from .transform import Undefined, project, retract
from .variance import Side, VariantPair, prune_ids


@dataclass(frozen=True)
class MigrationReport:
    """Outcome of one or more migrations.

    ``applied_to_other_side`` lists the translated edits, in order; applied
    to the other side's previous document they produce its new one.
    ``conflicts`` lists every difference entry grounded to Id, tagged with
    the side it came from. ``migrated_indexes`` is the order of indexes
    actually migrated (at the time of each step).
    """

    pair: VariantPair
    applied_to_other_side: tuple[Edit, ...] = ()
    conflicts: tuple[tuple[Side, Edit], ...] = ()
    migrated_indexes: tuple[int, ...] = ()


def _other(side: Side) -> Side:
    return "B" if side == "A" else "A"


def migrate(pair: VariantPair, side: Side, index: int) -> MigrationReport:
    own = pair.diffs(side)
    other = pair.diffs(_other(side))
    if not 1 <= index <= len(own):
        raise IndexOutOfRange(
            f"side {side} has {len(own)} differences, no #{index}"
        )

    conflicts: list[tuple[Side, Edit]] = []

    # Retract the picked difference back to the agreement.
    eps = own[index - 1]
    prefix = list(own[: index - 1])
    for j in range(index - 1, 0, -1):
        out = retract(eps, own[j - 1])
        if isinstance(out, Undefined):
            raise DependencyError(j)
        if out.adjusted == ID and out.result != ID:
            conflicts.append((side, own[j - 1]))  # overrode an own earlier diff
        eps, prefix[j - 1] = out.result, out.adjusted

    # Project it forward through the other side's differences. A step can
    # ground either party: the other entry (the migrated edit wins) or the
    # migrated edit itself (the other entry wins); both are conflicts. A
    # duplicate cancellation grounds both at once and is not a conflict.
    delta = eps
    adjusted_other = list(other)
    for k in range(1, len(other) + 1):
        out = project(delta, other[k - 1])
        if out.adjusted == ID and out.result != ID:
            conflicts.append((_other(side), other[k - 1]))
        elif out.result == ID and out.grounded and out.adjusted != ID:
            conflicts.append((side, own[index - 1]))
        delta, adjusted_other[k - 1] = out.result, out.adjusted

    agreement = apply_edit(eps, pair.agreement)
    new_own = prune_ids(prefix) + own[index:]  # tail kept verbatim
    new_other = prune_ids(adjusted_other)
    if side == "A":
        new_pair = VariantPair(agreement, new_own, new_other)
    else:
        new_pair = VariantPair(agreement, new_other, new_own)

    applied = (delta,) if delta != ID else ()
    return MigrationReport(
        pair=new_pair,
        applied_to_other_side=applied,
        conflicts=tuple(conflicts),
        migrated_indexes=(index,),
    )


def migrate_with_dependencies(
    pair: VariantPair, side: Side, index: int
) -> MigrationReport:
    """Like ``migrate`` but first migrates any transitive dependencies."""
    own = pair.diffs(side)
    if not 1 <= index <= len(own):
        raise IndexOutOfRange(
            f"side {side} has {len(own)} differences, no #{index}"
        )

    applied: list[Edit] = []
    conflicts: list[tuple[Side, Edit]] = []
    order: list[int] = []
    while True:
        try:
            report = migrate(pair, side, index)
        except DependencyError as dep:
            sub = migrate_with_dependencies(pair, side, dep.dependency_index)
            applied.extend(sub.applied_to_other_side)
            conflicts.extend(sub.conflicts)
            order.extend(sub.migrated_indexes)
            # Entries after the migrated dependency are kept verbatim, so
            # the requested edit moves to: new prefix length + offset past
            # the dependency. The dependency itself may have pulled in
            # earlier entries too, so recompute from sequence lengths.
            removed = len(pair.diffs(side)) - len(sub.pair.diffs(side))
            index -= removed
            pair = sub.pair
            continue
        applied.extend(report.applied_to_other_side)
        conflicts.extend(report.conflicts)
        order.extend(report.migrated_indexes)
        return MigrationReport(
            pair=report.pair,
            applied_to_other_side=tuple(applied),
            conflicts=tuple(conflicts),
            migrated_indexes=tuple(order),
        )


def merge_all(
    pair: VariantPair,
    side: Side,
    policy: str = "historical",
    seed: int = 0,
) -> MigrationReport:
    """Migrate every difference of ``side``, in ``policy`` order.

    Policies: "historical" (front to back), "reverse" (back to front),
    "random" (seeded shuffle). Dependencies are auto-resolved, so any
    order terminates with the side's differences empty.
    """
    rng = random.Random(seed)
    applied: list[Edit] = []
    conflicts: list[tuple[Side, Edit]] = []
    order: list[int] = []
    while pair.diffs(side):
        n = len(pair.diffs(side))
        if policy == "historical":
            pick = 1
        elif policy == "reverse":
            pick = n
        elif policy == "random":
            pick = rng.randint(1, n)
        else:
            raise ValueError(f"unknown merge policy {policy!r}")
        report = migrate_with_dependencies(pair, side, pick)
        applied.extend(report.applied_to_other_side)
        conflicts.extend(report.conflicts)
        order.extend(report.migrated_indexes)
        pair = report.pair
    return MigrationReport(
        pair=pair,
        applied_to_other_side=tuple(applied),
        conflicts=tuple(conflicts),
        migrated_indexes=tuple(order),
    )
