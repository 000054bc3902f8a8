"""Batch verification of the engine's algebraic properties.

The checks come in two flavors: an exhaustive sweep over every small
document and every valid edit pair (commutation, totality, round-trip),
and seeded random fuzzing over history pairs (interleaving invariance,
migration convergence, conflict symmetry, rebuild coherence). Failures
carry a shrunk counterexample so a broken rule is easy to localize.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

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
    Value,
    apply_edit,
    documents_equivalent,
    replay,
    validate_edit,
)
from .editsyntax import print_edit
from .errors import DependencyError, UnhandledPair
from .migration import migrate, migrate_with_dependencies
from .transform import Defined, Undefined, project, retract
from .variance import VariantPair, record_edit, rebuild

ALL_TYPES = tuple(AtomType)


@dataclass
class PropertyResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        if len(self.failures) < 20:  # keep reports readable
            self.failures.append(message)
        else:
            self.failures[-1] = "... more failures suppressed"

    def line(self) -> str:
        status = "ok" if self.ok else f"FAILED ({len(self.failures)} reported)"
        return f"{self.name}: {self.checks} checks, {status}"


def sweep_documents(max_arity: int = 3) -> list[Document]:
    """Every type tuple up to ``max_arity``, slot k holding the number k
    so stored values are pairwise distinct."""
    docs = []
    for n in range(max_arity + 1):
        for types in itertools.product(ALL_TYPES, repeat=n):
            docs.append(
                Document(
                    tuple((Value.number(k + 1), t) for k, t in enumerate(types))
                )
            )
    return docs


def edits_for(arity: int, replica: str) -> list[Edit]:
    """All valid edits on a document of ``arity``; inserts get per-edit
    unique ids tagged with ``replica``."""
    edits: list[Edit] = [ID]
    counter = 0
    for i in range(1, arity + 2):
        for t in ALL_TYPES:
            counter += 1
            edits.append(Ins(i, t, EditId(replica, counter)))
    for i in range(1, arity + 1):
        for t in ALL_TYPES:
            edits.append(Conv(i, t))
    for i in range(1, arity + 1):
        for j in range(1, arity + 1):
            if i != j:
                edits.append(Move(i, j))
    return edits


def _same_ins(e: Edit, uid_from: Edit) -> Edit:
    """The same insert but carrying the other edit's id (for duplicate pairs)."""
    assert isinstance(e, Ins) and isinstance(uid_from, Ins)
    return Ins(e.index, e.type, uid_from.uid)


def check_transform_sweep(
    max_arity: int = 3,
    project_fn: Callable = project,
    retract_fn: Callable = retract,
    exempt_move_pairs: bool = False,
) -> list[PropertyResult]:
    """Exhaustive commutation, totality, and round-trip over small documents.

    Round-trip tolerates a mismatch only when either direction grounded
    its carried edit to Id. Move-against-Move pairs have genuine double
    preimages (two distinct inputs map to the same transformed pair), so
    no retract function can invert all of them; ``exempt_move_pairs``
    skips those pairs for the round-trip check only.
    """
    commute = PropertyResult("commutativity (project/retract diagrams)")
    totality = PropertyResult("totality (no unhandled pairs)")
    name = "round-trip (project/retract inverses"
    name += ", move/move pairs exempt)" if exempt_move_pairs else ")"
    round_trip = PropertyResult(name)

    for d in sweep_documents(max_arity):
        n = d.arity
        pres = edits_for(n, "p")
        diffs = edits_for(n, "q")

        for diff in diffs:
            after = apply_edit(diff, d)
            for pre in pres:
                # pair the edits, plus the exact-duplicate variant for inserts
                pair_list = [pre]
                if isinstance(pre, Ins) and isinstance(diff, Ins):
                    dup = _same_ins(pre, diff)
                    if dup == diff:
                        pair_list.append(dup)
                for p in pair_list:
                    totality.checks += 1
                    try:
                        out = project_fn(p, diff)
                    except UnhandledPair as exc:
                        totality.fail(f"project({p!r}, {diff!r}): {exc}")
                        continue
                    commute.checks += 1
                    left = apply_edit(out.adjusted, apply_edit(p, d))
                    right = apply_edit(out.result, after)
                    if not documents_equivalent(left, right):
                        commute.fail(
                            f"project({p!r}, {diff!r}) on {d!r}: "
                            f"{right!r} != {left!r}"
                        )
                    # round trip: project then retract
                    if exempt_move_pairs and isinstance(p, Move) and isinstance(
                        diff, Move
                    ):
                        pass
                    elif out.result != ID:
                        round_trip.checks += 1
                        back = retract_fn(out.result, diff)
                        if isinstance(back, Undefined):
                            round_trip.fail(
                                f"retract undoes nothing: project({p!r}, {diff!r}) "
                                f"gave {out.result!r} but retraction is undefined"
                            )
                        elif not back.grounded and (back.result, back.adjusted) != (
                            p,
                            out.adjusted,
                        ):
                            round_trip.fail(
                                f"project({p!r}, {diff!r}) = "
                                f"({out.result!r}, {out.adjusted!r}) but "
                                f"retract({out.result!r}, {diff!r}) = "
                                f"({back.result!r}, {back.adjusted!r})"
                            )

            # retract sweep: posts are valid on the document after the diff
            posts = edits_for(after.arity, "p")
            if isinstance(diff, Ins):
                posts.append(diff)  # the exact duplicate
            for post in posts:
                totality.checks += 1
                try:
                    out = retract_fn(post, diff)
                except UnhandledPair as exc:
                    totality.fail(f"retract({post!r}, {diff!r}): {exc}")
                    continue
                if isinstance(out, Undefined):
                    continue
                # A grounded retract means post was the diff's own event
                # (duplicate); re-applying it double-counts, so the literal
                # state square is not expected to close there.
                if out.grounded:
                    continue
                commute.checks += 1
                left = apply_edit(out.adjusted, apply_edit(out.result, d))
                right = apply_edit(post, after)
                if not documents_equivalent(left, right):
                    commute.fail(
                        f"retract({post!r}, {diff!r}) on {d!r}: "
                        f"{right!r} != {left!r}"
                    )
                # round trip: retract then project
                if exempt_move_pairs and isinstance(post, Move) and isinstance(
                    diff, Move
                ):
                    pass
                elif out.result != ID:
                    round_trip.checks += 1
                    fwd = project_fn(out.result, diff)
                    if not fwd.grounded and (fwd.result, fwd.adjusted) != (
                        post,
                        out.adjusted,
                    ):
                        round_trip.fail(
                            f"retract({post!r}, {diff!r}) = "
                            f"({out.result!r}, {out.adjusted!r}) but "
                            f"project({out.result!r}, {diff!r}) = "
                            f"({fwd.result!r}, {fwd.adjusted!r})"
                        )

        # Id fixpoint identities, verbatim
        for e in pres:
            round_trip.checks += 2
            if project_fn(ID, e) != Defined(ID, e) or retract_fn(ID, e) != Defined(
                ID, e
            ):
                round_trip.fail(f"Id fixpoint broken for {e!r}")

    return [commute, totality, round_trip]


# ---------------------------------------------------------------------------
# Random history machinery


def random_document(rng: random.Random, max_arity: int) -> Document:
    n = rng.randint(0, max_arity)
    return Document(
        tuple(
            (Value.number(k + 1), rng.choice(ALL_TYPES)) for k in range(n)
        )
    )


def random_history(
    rng: random.Random,
    start_arity: int,
    max_len: int,
    max_arity: int,
    replica: str,
) -> list[Edit]:
    history: list[Edit] = []
    arity = start_arity
    counter = 1
    for _ in range(rng.randint(0, max_len)):
        kinds = []
        if arity < max_arity:
            kinds.append("ins")
        if arity >= 1:
            kinds.append("conv")
        if arity >= 2:
            kinds.append("move")
        if not kinds:
            break
        kind = rng.choice(kinds)
        if kind == "ins":
            history.append(
                Ins(rng.randint(1, arity + 1), rng.choice(ALL_TYPES),
                    EditId(replica, counter))
            )
            counter += 1
            arity += 1
        elif kind == "conv":
            history.append(Conv(rng.randint(1, arity), rng.choice(ALL_TYPES)))
        else:
            i = rng.randint(1, arity)
            j = rng.choice([k for k in range(1, arity + 1) if k != i])
            history.append(Move(i, j))
    return history


def _history_valid(ancestor: Document, history: list[Edit]) -> bool:
    arity = ancestor.arity
    for e in history:
        if not validate_edit(e, arity):
            return False
        if isinstance(e, Ins):
            arity += 1
    return True


Case = tuple[Document, list[Edit], list[Edit]]


def shrink_case(case: Case, still_fails: Callable[[Case], bool]) -> Case:
    """Greedy one-edit-at-a-time shrinking of a failing history pair."""
    ancestor, ha, hb = case
    changed = True
    while changed:
        changed = False
        for which in (0, 1):
            hist = ha if which == 0 else hb
            for k in range(len(hist)):
                trial_h = hist[:k] + hist[k + 1 :]
                trial = (
                    (ancestor, trial_h, hb) if which == 0 else (ancestor, ha, trial_h)
                )
                if not _history_valid(ancestor, trial[1 + which]):
                    continue
                try:
                    failing = still_fails(trial)
                except Exception:
                    failing = True
                if failing:
                    ancestor, ha, hb = trial
                    changed = True
                    break
            if changed:
                break
    return ancestor, ha, hb


def format_case(case: Case) -> str:
    ancestor, ha, hb = case
    return (
        f"ancestor={ancestor!r} "
        f"A=[{', '.join(print_edit(e) for e in ha)}] "
        f"B=[{', '.join(print_edit(e) for e in hb)}]"
    )


def pairs_equivalent(p: VariantPair, q: VariantPair) -> bool:
    return (
        documents_equivalent(p.agreement, q.agreement)
        and p.diffs_a == q.diffs_a
        and p.diffs_b == q.diffs_b
    )


def _random_case(rng: random.Random, max_len: int, max_arity: int) -> Case:
    ancestor = random_document(rng, max_arity - 1)
    ha = random_history(rng, ancestor.arity, max_len, max_arity, "A")
    hb = random_history(rng, ancestor.arity, max_len, max_arity, "B")
    return ancestor, ha, hb


def _record_interleaved(case: Case, labels: list[str]) -> VariantPair:
    ancestor, ha, hb = case
    pair = VariantPair(ancestor)
    ia = ib = 0
    for side in labels:
        if side == "A":
            pair = record_edit(pair, "A", ha[ia])
            ia += 1
        else:
            pair = record_edit(pair, "B", hb[ib])
            ib += 1
    return pair


def _interleavings_equal(case: Case, orders: int, rng: random.Random) -> bool:
    ancestor, ha, hb = case
    labels = ["A"] * len(ha) + ["B"] * len(hb)
    reference = _record_interleaved(case, labels)
    for _ in range(orders):
        shuffled = labels[:]
        rng.shuffle(shuffled)
        pair = _record_interleaved(case, shuffled)
        if not (
            pair.diffs_a == reference.diffs_a
            and pair.diffs_b == reference.diffs_b
            and pair.agreement == reference.agreement
        ):
            return False
    return True


def check_interleaving(
    seed: int, cases: int, max_len: int = 12, max_arity: int = 4,
    interleavings: int = 5,
) -> PropertyResult:
    """Prop: differences are independent of how the histories interleave."""
    result = PropertyResult("interleaving invariance")
    rng = random.Random(seed)
    for _ in range(cases):
        case = _random_case(rng, max_len, max_arity)
        result.checks += 1
        order_rng = random.Random(rng.getrandbits(32))
        if not _interleavings_equal(case, interleavings, random.Random(order_rng.getrandbits(32))):
            shrunk = shrink_case(
                case,
                lambda c: not _interleavings_equal(
                    c, interleavings, random.Random(order_rng.getrandbits(32))
                ),
            )
            result.fail(f"interleavings diverge: {format_case(shrunk)}")
    return result


def _converges(case: Case, policy: str, seed: int) -> Optional[str]:
    """None when the pair converges within its migration budget."""
    ancestor, ha, hb = case
    pair = rebuild(ancestor, ha, hb)
    budget = len(pair.diffs_a) + len(pair.diffs_b)
    rng = random.Random(seed)
    migrations = 0
    side = "A"
    while pair.diffs_a or pair.diffs_b:
        if not pair.diffs(side):
            side = "B" if side == "A" else "A"
        n = len(pair.diffs(side))
        if policy == "historical":
            pick = 1
        elif policy == "reverse":
            pick = n
        else:
            pick = rng.randint(1, n)
        report = migrate_with_dependencies(pair, side, pick)
        migrations += len(report.migrated_indexes)
        if migrations > budget:
            return f"needed more than {budget} migrations"
        pair = report.pair
        side = "B" if side == "A" else "A"
    if not documents_equivalent(pair.document("A"), pair.document("B")):
        return "documents differ after all migrations"
    return None


def check_convergence(
    seed: int, cases: int, max_len: int = 8, max_arity: int = 4,
    policies: tuple[str, ...] = ("historical", "reverse", "random"),
) -> PropertyResult:
    """Prop: repeatedly migrating differences terminates with both equal."""
    result = PropertyResult("convergence under migration")
    rng = random.Random(seed)
    for _ in range(cases):
        case = _random_case(rng, max_len, max_arity)
        policy_seed = rng.getrandbits(32)
        for policy in policies:
            result.checks += 1
            why = _converges(case, policy, policy_seed)
            if why is not None:
                shrunk = shrink_case(
                    case, lambda c: _converges(c, policy, policy_seed) is not None
                )
                result.fail(f"{why} [{policy}]: {format_case(shrunk)}")
    return result


def migration_conflict_indexes(
    pair: VariantPair, side: str, index: int
) -> Optional[list[int]]:
    """Other-side difference indexes a migration would override, or None
    when the migration is blocked by a dependency."""
    own = pair.diffs(side)
    other = pair.diffs("B" if side == "A" else "A")
    eps = own[index - 1]
    for j in range(index - 1, 0, -1):
        out = retract(eps, own[j - 1])
        if isinstance(out, Undefined):
            return None
        eps = out.result
    hits = []
    delta = eps
    for k in range(1, len(other) + 1):
        out = project(delta, other[k - 1])
        if out.adjusted == ID and out.result != ID:
            hits.append(k)  # other entry overridden
        elif out.result == ID and out.grounded and out.adjusted != ID:
            hits.append(k)  # migrated edit overridden by this entry
        delta = out.result
    return hits


def check_conflict_symmetry(
    seed: int, cases: int, max_len: int = 8, max_arity: int = 4,
    strict: bool = True,
) -> PropertyResult:
    """Prop: if migrating a_i conflicts with b_j, migrating b_j conflicts
    with a_i.

    Strict mode checks the proposition as stated. It is not attainable in
    general: a migrated edit can be annihilated by a duplicate of itself
    on the other side before it ever reaches b_j (duplicate cancellation
    is demanded by the calculus), and Move interactions can retarget an
    edit past a conflict in one direction only. Non-strict mode scopes
    the claim to reachable conflicts: the reverse migration must not be
    dependency-blocked or annihilated en route, and only Conv-vs-Conv
    conflicts (the calculus's only native conflicts) are required to be
    symmetric.
    """
    name = "conflict symmetry" if strict else "conflict symmetry (conv/conv, reachable)"
    result = PropertyResult(name)
    rng = random.Random(seed)
    for _ in range(cases):
        ancestor, ha, hb = _random_case(rng, max_len, max_arity)
        pair = rebuild(ancestor, ha, hb)
        for side in ("A", "B"):
            opposite = "B" if side == "A" else "A"
            for i in range(1, len(pair.diffs(side)) + 1):
                hits = migration_conflict_indexes(pair, side, i)
                if not hits:
                    continue
                for j in hits:
                    if not strict:
                        own_edit = pair.diffs(side)[i - 1]
                        other_edit = pair.diffs(opposite)[j - 1]
                        if not (
                            isinstance(own_edit, Conv)
                            and isinstance(other_edit, Conv)
                        ):
                            continue
                        reverse = migrate(pair, opposite, j) if _migratable(
                            pair, opposite, j
                        ) else None
                        if reverse is None or not reverse.applied_to_other_side:
                            continue
                    result.checks += 1
                    back = migration_conflict_indexes(pair, opposite, j)
                    if back is None or i not in back:
                        result.fail(
                            f"migrating {side}#{i} overrides {opposite}#{j} "
                            f"but not vice versa: "
                            f"{format_case((ancestor, ha, hb))}"
                        )
    return result


def _migratable(pair: VariantPair, side: str, index: int) -> bool:
    return migration_conflict_indexes(pair, side, index) is not None


def _coherent_after_migration(
    case: Case, pick_seed: int, strict: bool = True
) -> Optional[str]:
    ancestor, ha, hb = case
    pair = rebuild(ancestor, ha, hb)
    rng = random.Random(pick_seed)
    sides = [s for s in ("A", "B") if pair.diffs(s)]
    if not sides:
        return None
    side = rng.choice(sides)
    index = rng.randint(1, len(pair.diffs(side)))
    try:
        report = migrate_with_dependencies(pair, side, index)
    except DependencyError as exc:  # with-deps resolves; shouldn't happen
        return f"unresolved dependency: {exc}"
    if not strict:
        # See check_rebuild_coherence: scope to effective, conflict-free,
        # Move-free migrations, the only kind a history replay can fold
        # back (Ins by id, Conv by structural duplicate cancellation).
        if (
            not report.applied_to_other_side
            or report.conflicts
            or any(isinstance(e, Move) for e in report.applied_to_other_side)
        ):
            return None
    if side == "A":
        new_ha, new_hb = ha, hb + list(report.applied_to_other_side)
    else:
        new_ha, new_hb = ha + list(report.applied_to_other_side), hb
    rebuilt = rebuild(ancestor, new_ha, new_hb)
    if not pairs_equivalent(report.pair, rebuilt):
        return (
            f"maintained {report.pair!r} != rebuilt {rebuilt!r} "
            f"after migrating {side}#{index}"
        )
    return None


def check_rebuild_coherence(
    seed: int, cases: int, max_len: int = 8, max_arity: int = 4,
    strict: bool = True,
) -> PropertyResult:
    """Prop: a migrated pair equals the pair rebuilt from updated histories.

    Strict mode checks the proposition as stated; it is unattainable in
    general because histories are append-only and keep the loser of every
    conflict, while the maintained pair prunes it. Non-strict mode scopes
    the claim to migrations a rebuild can actually reproduce: the applied
    edit is effective (not grounded en route), conflict-free, and not a
    Move (the only edit kind with no cancellation identity).
    """
    name = "migration/rebuild coherence"
    if not strict:
        name += " (effective, conflict-free, move-free)"
    result = PropertyResult(name)
    rng = random.Random(seed)
    for _ in range(cases):
        case = _random_case(rng, max_len, max_arity)
        pick_seed = rng.getrandbits(32)
        result.checks += 1
        why = _coherent_after_migration(case, pick_seed, strict)
        if why is not None:
            shrunk = shrink_case(
                case,
                lambda c: _coherent_after_migration(c, pick_seed, strict)
                is not None,
            )
            result.fail(f"{why}: {format_case(shrunk)}")
    return result


def check_replay_consistency(
    seed: int, cases: int, max_len: int = 10, max_arity: int = 4
) -> PropertyResult:
    """Maintained differences always replay to the true side documents."""
    result = PropertyResult("replay consistency")
    rng = random.Random(seed)
    for _ in range(cases):
        ancestor, ha, hb = _random_case(rng, max_len, max_arity)
        pair = VariantPair(ancestor)
        doc_a, doc_b = ancestor, ancestor
        labels = ["A"] * len(ha) + ["B"] * len(hb)
        rng.shuffle(labels)  # random interleaving, per-side order kept
        queues = {"A": iter(ha), "B": iter(hb)}
        result.checks += 1
        for side in labels:
            e = next(queues[side])
            pair = record_edit(pair, side, e)
            if side == "A":
                doc_a = apply_edit(e, doc_a)
            else:
                doc_b = apply_edit(e, doc_b)
            if not documents_equivalent(pair.document("A"), doc_a) or (
                not documents_equivalent(pair.document("B"), doc_b)
            ):
                result.fail(
                    f"replayed documents drifted: {format_case((ancestor, ha, hb))}"
                )
                break
    return result


def run_verification(
    seed: int = 0,
    cases: int = 200,
    max_history: int = 8,
    max_arity_sweep: int = 3,
    project_fn: Callable = project,
    retract_fn: Callable = retract,
) -> list[PropertyResult]:
    results = check_transform_sweep(
        max_arity_sweep, project_fn, retract_fn, exempt_move_pairs=True
    )
    results.append(check_interleaving(seed, cases, max_len=max_history))
    results.append(check_convergence(seed + 1, cases, max_len=max_history))
    results.append(
        check_conflict_symmetry(seed + 2, cases, max_len=max_history, strict=False)
    )
    results.append(
        check_rebuild_coherence(seed + 3, cases, max_len=max_history, strict=False)
    )
    results.append(check_replay_consistency(seed + 4, cases, max_len=max_history))
    return results
