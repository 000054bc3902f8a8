"""JSON-over-HTTP service for a pair of image files.

The service owns both images: every mutation is re-applied to the files
and the response is the refreshed state, so clients can stay stateless.
Mutations are serialized by a process-wide lock per application; reads
rebuild from the files and are safe to run concurrently.
"""

from __future__ import annotations

import threading
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .cli import document_json
from .document import EMPTY, ID, Ins
from .editsyntax import parse_edit, print_edit
from .errors import (
    DependencyError,
    IndexOutOfRange,
    InvalidEdit,
    ParseError,
)
from .migration import merge_all, migrate, migrate_with_dependencies
from .store import edit_to_json, load_image, save_image
from .transform import Undefined, retract
from .variance import VariantPair, rebuild
from .verify import migration_conflict_indexes


class EditRequest(BaseModel):
    side: Literal["A", "B"]
    editText: str


class MigrateRequest(BaseModel):
    side: Literal["A", "B"]
    index: int
    withDeps: bool = False


class MergeRequest(BaseModel):
    side: Literal["A", "B"]
    policy: Literal["historical", "reverse", "random"] = "historical"
    seed: int = 0


def _depends_on(diffs, index: int) -> Optional[int]:
    """Index of the earlier own-side difference blocking retraction, if any."""
    eps = diffs[index - 1]
    for j in range(index - 1, 0, -1):
        out = retract(eps, diffs[j - 1])
        if isinstance(out, Undefined):
            return j
        eps = out.result
    return None


def _difference_entries(pair: VariantPair, side: Literal["A", "B"]) -> list[dict]:
    entries = []
    for i, e in enumerate(pair.diffs(side), start=1):
        depends_on = _depends_on(pair.diffs(side), i)
        conflicts = None
        if depends_on is None:
            hits = migration_conflict_indexes(pair, side, i)
            conflicts = hits[0] if hits else None
        entries.append(
            {
                "index": i,
                "text": print_edit(e),
                "edit": edit_to_json(e),
                "dependsOn": depends_on,
                "conflictsWith": conflicts,
            }
        )
    return entries


def create_app(path_a: str, path_b: str) -> FastAPI:
    app = FastAPI(title="tuplevcs")
    lock = threading.Lock()
    paths = {"A": path_a, "B": path_b}

    def current_pair() -> VariantPair:
        image_a = load_image(path_a)
        image_b = load_image(path_b)
        return rebuild(EMPTY, list(image_a.history), list(image_b.history))

    def state_payload() -> dict:
        pair = current_pair()
        return {
            "agreement": document_json(pair.agreement),
            "a": {
                "document": document_json(pair.document("A")),
                "differences": _difference_entries(pair, "A"),
            },
            "b": {
                "document": document_json(pair.document("B")),
                "differences": _difference_entries(pair, "B"),
            },
        }

    @app.get("/state")
    def get_state() -> dict:
        return state_payload()

    @app.post("/edit")
    def post_edit(req: EditRequest) -> dict:
        with lock:
            image = load_image(paths[req.side])
            fid, bumped = image.fresh_id()
            try:
                edit = parse_edit(req.editText, fresh_id=fid)
            except ParseError as exc:
                raise HTTPException(400, detail=str(exc))
            if edit == ID:
                raise HTTPException(400, detail="id edits are not recordable")
            if isinstance(edit, Ins):
                image = bumped
            try:
                image = image.append(edit)
            except InvalidEdit as exc:
                raise HTTPException(400, detail=str(exc))
            save_image(paths[req.side], image)
            return state_payload()

    @app.post("/migrate")
    def post_migrate(req: MigrateRequest) -> dict:
        with lock:
            pair = current_pair()
            run = migrate_with_dependencies if req.withDeps else migrate
            try:
                report = run(pair, req.side, req.index)
            except IndexOutOfRange as exc:
                raise HTTPException(400, detail=str(exc))
            except DependencyError as exc:
                raise HTTPException(
                    409,
                    detail={
                        "message": f"difference #{req.index} depends on "
                        f"#{exc.dependency_index}",
                        "dependsOn": exc.dependency_index,
                    },
                )
            _apply_to_target(req.side, report)
            return state_payload()

    @app.post("/merge")
    def post_merge(req: MergeRequest) -> dict:
        with lock:
            pair = current_pair()
            report = merge_all(pair, req.side, policy=req.policy, seed=req.seed)
            _apply_to_target(req.side, report)
            return state_payload()

    def _apply_to_target(side: str, report) -> None:
        target = paths["B" if side == "A" else "A"]
        if not report.applied_to_other_side:
            return
        image = load_image(target)
        for e in report.applied_to_other_side:
            image = image.append(e)  # migrated inserts keep their original ids
        save_image(target, image)

    return app
