"""Command-line interface.

Commands operate on image files (JSON, history-only; state is derived by
replay). Exit codes: 0 success, 1 verification failure, 2 usage error,
3 IO or file-format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .document import (
    Document,
    EMPTY,
    ERROR,
    ID,
    Ins,
    NULL,
    conform,
    format_number,
    replay,
)
from .editsyntax import caret_message, parse_edit, print_edit
from .errors import (
    DependencyError,
    FormatError,
    IndexOutOfRange,
    InvalidEdit,
    ParseError,
    PrefixMismatch,
    VersionError,
)
from .migration import merge_all, migrate, migrate_with_dependencies
from .store import ImageFile, load_image, new_image, save_image
from .variance import VariantPair, rebuild
from .verify import run_verification


def display_value(value) -> str:
    """Deterministic single-token rendering of a conformed value."""
    if value is ERROR:
        return "#err"
    if value is NULL or value == NULL:
        return "-"
    if value.tag == "num":
        return format_number(value.raw)
    if value.tag == "bool":
        return "true" if value.raw else "false"
    return json.dumps(value.raw)


def document_lines(doc: Document) -> list[str]:
    view = conform(doc)
    if not view.slots:
        return ["(empty document)"]
    return [
        f"{i}: {slot_type.value} = {display_value(value)}"
        for i, (value, slot_type) in enumerate(view.slots, start=1)
    ]


def document_json(doc: Document) -> list[dict]:
    view = conform(doc)
    return [
        {
            "index": i,
            "type": slot_type.value,
            "display": display_value(value),
            "error": value is ERROR,
        }
        for i, (value, slot_type) in enumerate(view.slots, start=1)
    ]


def build_pair(
    image_a: ImageFile, image_b: ImageFile, ancestor_prefix: Optional[int]
) -> VariantPair:
    history_a = list(image_a.history)
    history_b = list(image_b.history)
    ancestor = EMPTY
    if ancestor_prefix is not None:
        n = ancestor_prefix
        if n < 0 or len(history_a) < n or len(history_b) < n:
            raise PrefixMismatch(f"histories are shorter than the claimed prefix {n}")
        if history_a[:n] != history_b[:n]:
            raise PrefixMismatch(f"histories differ within the first {n} edits")
        ancestor = replay(EMPTY, history_a[:n])
        history_a, history_b = history_a[n:], history_b[n:]
    return rebuild(ancestor, history_a, history_b)


def diff_payload(pair: VariantPair) -> dict:
    return {
        "agreement": document_json(pair.agreement),
        "a": [print_edit(e) for e in pair.diffs_a],
        "b": [print_edit(e) for e in pair.diffs_b],
    }


def print_diff(pair: VariantPair, out) -> None:
    out.write("agreement:\n")
    for line in document_lines(pair.agreement):
        out.write(f"  {line}\n")
    for label, diffs in (("A", pair.diffs_a), ("B", pair.diffs_b)):
        out.write(f"{label}:\n")
        if not diffs:
            out.write("  (none)\n")
        for i, e in enumerate(diffs, start=1):
            out.write(f"  {i}: {print_edit(e)}\n")


def _emit_json(payload: dict, out) -> None:
    out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def cmd_init(args, out) -> int:
    save_image(args.path, new_image(args.replica))
    out.write(f"initialized empty image for replica {args.replica}\n")
    return 0


def cmd_edit(args, out) -> int:
    image = load_image(args.path)
    text = " ".join(args.edit)
    fid, bumped = image.fresh_id()
    try:
        edit = parse_edit(text, fresh_id=fid)
    except ParseError as exc:
        sys.stderr.write(caret_message(text, exc) + "\n")
        return 2
    if edit == ID:
        sys.stderr.write("error: id edits change nothing and are not recorded\n")
        return 2
    if isinstance(edit, Ins):
        image = bumped
    image = image.append(edit)  # validates against the replayed document
    save_image(args.path, image)
    new_doc = image.document()
    if args.json:
        _emit_json({"document": document_json(new_doc)}, out)
    else:
        for line in document_lines(new_doc):
            out.write(line + "\n")
    return 0


def cmd_diff(args, out) -> int:
    image_a = load_image(args.path_a)
    image_b = load_image(args.path_b)
    pair = build_pair(image_a, image_b, args.ancestor_prefix)
    if args.json:
        _emit_json(diff_payload(pair), out)
    else:
        print_diff(pair, out)
    return 0


def _print_report(report, side: str, out) -> None:
    other = "B" if side == "A" else "A"
    out.write(
        f"migrated {len(report.migrated_indexes)} difference(s) from {side}: "
        f"{', '.join(f'#{i}' for i in report.migrated_indexes) or 'none'}\n"
    )
    for e in report.applied_to_other_side:
        out.write(f"applied to {other}: {print_edit(e)}\n")
    for conflict_side, edit in report.conflicts:
        out.write(f"conflict: overrode {conflict_side} {print_edit(edit)}\n")
    print_diff(report.pair, out)


def _report_payload(report, side: str) -> dict:
    return {
        "migrated": list(report.migrated_indexes),
        "applied": [print_edit(e) for e in report.applied_to_other_side],
        "conflicts": [
            {"side": s, "edit": print_edit(e)} for s, e in report.conflicts
        ],
        **diff_payload(report.pair),
    }


def _append_applied(path: str, report) -> None:
    if not report.applied_to_other_side:
        return
    image = load_image(path)
    for e in report.applied_to_other_side:
        image = image.append(e)  # migrated inserts keep their original ids
    save_image(path, image)


def cmd_migrate(args, out) -> int:
    image_a = load_image(args.path_a)
    image_b = load_image(args.path_b)
    pair = build_pair(image_a, image_b, args.ancestor_prefix)
    run = migrate_with_dependencies if args.with_deps else migrate
    try:
        report = run(pair, args.side, args.index)
    except DependencyError as exc:
        sys.stderr.write(
            f"difference #{args.index} depends on #{exc.dependency_index}; "
            "migrate it first or pass --with-deps\n"
        )
        return 2
    target = args.path_b if args.side == "A" else args.path_a
    _append_applied(target, report)
    if args.json:
        _emit_json(_report_payload(report, args.side), out)
    else:
        _print_report(report, args.side, out)
    return 0


def cmd_merge(args, out) -> int:
    image_a = load_image(args.path_a)
    image_b = load_image(args.path_b)
    pair = build_pair(image_a, image_b, args.ancestor_prefix)
    report = merge_all(pair, args.side, policy=args.policy, seed=args.seed)
    target = args.path_b if args.side == "A" else args.path_a
    _append_applied(target, report)
    if args.json:
        _emit_json(_report_payload(report, args.side), out)
    else:
        _print_report(report, args.side, out)
    return 0


def cmd_verify(args, out) -> int:
    results = run_verification(
        seed=args.seed, cases=args.cases, max_history=args.max_history
    )
    failed = False
    for r in results:
        out.write(r.line() + "\n")
        for message in r.failures:
            out.write(f"  counterexample: {message}\n")
        failed = failed or not r.ok
    if failed:
        return 1
    out.write("all properties hold\n")
    return 0


def cmd_serve(args, out) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(args.path_a, args.path_b)
    out.write(f"serving on port {args.port}\n")
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tuplevcs",
        description="structural version control for typed tuple documents",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="create an empty image file")
    p.add_argument("path")
    p.add_argument("--replica", required=True, help="replica tag for edit ids")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("edit", help="apply one edit to an image")
    p.add_argument("path")
    p.add_argument("edit", nargs="+", help="edit text, e.g. ins 1 num")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_edit)

    p = sub.add_parser("diff", help="show agreement and both difference lists")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--ancestor-prefix", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("migrate", help="carry one difference to the other side")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--side", choices=("A", "B"), required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--with-deps", action="store_true")
    p.add_argument("--ancestor-prefix", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_migrate)

    p = sub.add_parser("merge", help="migrate every difference of one side")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--side", choices=("A", "B"), required=True)
    p.add_argument(
        "--policy", choices=("historical", "reverse", "random"), default="historical"
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ancestor-prefix", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("verify", help="run the property checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--max-history", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="serve the JSON API for a pair of images")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args, out)
    except (FormatError, VersionError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except (InvalidEdit, IndexOutOfRange, PrefixMismatch, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
