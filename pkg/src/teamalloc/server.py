"""Session-oriented HTTP service backing the interactive client.

Instances are uploaded once and immutable; sessions hold the mutable
restoration state.  Every state-mutating call on a session takes that
session's lock, so concurrent requests serialize instead of interleaving.
Error mapping: 404 unknown ids, 409 operation not allowed in the current
mode, 422 validation failures, 408 budget exhausted (the partial result,
when one exists, is embedded in the response body).
"""

from __future__ import annotations

import itertools
import os
import threading
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from . import formats
from .explain import HardCoreConflictError, InputSatisfiableError
from .model import InvalidInstanceError
from .optimize import HardUnsatisfiableError
from .session import NoSolutionError, OverrideError, Session, WrongModeError


class _Store:
    def __init__(self, data_dir: str | None):
        self.data_dir = data_dir
        self.instances: dict[str, Any] = {}
        self.sessions: dict[str, Session] = {}
        self.locks: dict[str, threading.Lock] = {}
        self._instance_ids = itertools.count(1)
        self._session_ids = itertools.count(1)
        self._registry_lock = threading.Lock()
        if data_dir:
            os.makedirs(os.path.join(data_dir, "instances"), exist_ok=True)

    def add_instance(self, instance) -> str:
        with self._registry_lock:
            iid = f"i{next(self._instance_ids)}"
            self.instances[iid] = instance
        if self.data_dir:
            formats.save_instance(
                instance, os.path.join(self.data_dir, "instances", f"{iid}.json")
            )
        return iid

    def add_session(self, session: Session) -> str:
        with self._registry_lock:
            sid = f"s{next(self._session_ids)}"
            self.sessions[sid] = session
            self.locks[sid] = threading.Lock()
        return sid

    def session(self, sid: str) -> tuple[Session, threading.Lock]:
        try:
            return self.sessions[sid], self.locks[sid]
        except KeyError:
            raise HTTPException(404, f"unknown session {sid}")


def _gantt_payload(session: Session) -> dict | None:
    try:
        gantt = session.gantt_view()
    except NoSolutionError:
        return None
    return {
        "rows": [
            {"row": row_id, "entries": [
                {"activity": aid, "start": s, "end": e} for aid, s, e in entries
            ]}
            for row_id, entries in gantt.rows
        ],
        "conflict_highlight": sorted(gantt.conflict_highlight),
    }


def _state(session_id: str, session: Session) -> dict:
    snap = session.snapshot()
    snap["session_id"] = session_id
    snap["gantt"] = _gantt_payload(session)
    snap["config"] = formats.config_to_dict(session.cfg)
    return snap


def _conflict_payload(conflict, explanation) -> dict | None:
    if conflict is None:
        return None
    return {
        "kind": explanation.kind,
        "labels": [l.id for l in conflict.labels],
        "text": explanation.text,
        "involved_activities": explanation.involved_activities,
        "involved_teams": explanation.involved_teams,
        "minimal": conflict.minimal,
    }


def _maybe_408(session_id: str, session: Session, conflict) -> JSONResponse | None:
    # a non-minimal conflict means the budget ran out mid-extraction
    if conflict is not None and not conflict.minimal:
        return JSONResponse(status_code=408, content=_state(session_id, session))
    return None


def create_app(data_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="teamalloc", docs_url=None, redoc_url=None)
    store = _Store(data_dir)

    @app.post("/instances")
    def upload_instance(doc: dict) -> dict:
        try:
            instance = formats.instance_from_dict(doc)
        except (formats.FormatError, InvalidInstanceError) as exc:
            raise HTTPException(422, str(exc))
        iid = store.add_instance(instance)
        return {
            "instance_id": iid,
            "n_activities": len(instance.activities),
            "n_teams": len(instance.teams),
        }

    @app.post("/sessions")
    def create_session(doc: dict) -> dict:
        iid = doc.get("instance_id")
        if iid not in store.instances:
            raise HTTPException(404, f"unknown instance {iid}")
        unknown = set(doc) - {"instance_id", "config", "budget"}
        if unknown:
            raise HTTPException(422, f"unknown fields {sorted(unknown)}")
        try:
            cfg = formats.config_from_dict(doc.get("config") or {})
        except formats.FormatError as exc:
            raise HTTPException(422, str(exc))
        budget = doc.get("budget", 30.0)
        if not isinstance(budget, (int, float)) or budget <= 0:
            raise HTTPException(422, "budget must be a positive number")
        session = Session(store.instances[iid], cfg, float(budget))
        sid = store.add_session(session)
        return _state(sid, session)

    @app.get("/sessions/{sid}")
    def get_session(sid: str) -> dict:
        session, lock = store.session(sid)
        with lock:
            return _state(sid, session)

    @app.post("/sessions/{sid}/solve")
    def solve(sid: str) -> dict:
        session, lock = store.session(sid)
        with lock:
            session.resolve()
            return _state(sid, session)

    @app.post("/sessions/{sid}/overrides")
    def add_override(sid: str, doc: dict) -> dict:
        session, lock = store.session(sid)
        for key in ("activity", "team", "mode"):
            if not isinstance(doc.get(key), str):
                raise HTTPException(422, f"field {key} (string) is required")
        with lock:
            try:
                session.apply_override(doc["activity"], doc["team"], doc["mode"])
            except (OverrideError, ValueError) as exc:
                raise HTTPException(422, str(exc))
            return _state(sid, session)

    @app.post("/sessions/{sid}/resolution/local/begin")
    def local_begin(sid: str):
        session, lock = store.session(sid)
        with lock:
            try:
                mus, explanation = session.begin_local_resolution()
            except WrongModeError as exc:
                raise HTTPException(409, str(exc))
            except InputSatisfiableError as exc:
                raise HTTPException(409, str(exc))
            partial = _maybe_408(sid, session, mus)
            if partial is not None:
                return partial
            return _state(sid, session) | {
                "conflict": _conflict_payload(mus, explanation)
            }

    @app.post("/sessions/{sid}/resolution/local/resolve")
    def local_resolve(sid: str, doc: dict):
        session, lock = store.session(sid)
        if not isinstance(doc.get("label"), str):
            raise HTTPException(422, "field label (string) is required")
        with lock:
            try:
                mus, explanation = session.resolve_local(doc["label"])
            except WrongModeError as exc:
                raise HTTPException(409, str(exc))
            except KeyError as exc:
                raise HTTPException(422, str(exc))
            partial = _maybe_408(sid, session, mus)
            if partial is not None:
                return partial
            return _state(sid, session) | {
                "conflict": _conflict_payload(mus, explanation)
            }

    @app.post("/sessions/{sid}/resolution/global/begin")
    def global_begin(sid: str):
        session, lock = store.session(sid)
        with lock:
            try:
                mcs, explanation = session.begin_global_resolution()
            except WrongModeError as exc:
                raise HTTPException(409, str(exc))
            except (HardCoreConflictError, HardUnsatisfiableError) as exc:
                raise HTTPException(409, str(exc))
            partial = _maybe_408(sid, session, mcs)
            if partial is not None:
                return partial
            return _state(sid, session) | {
                "conflict": _conflict_payload(mcs, explanation)
            }

    @app.post("/sessions/{sid}/resolution/global/accept")
    def global_accept(sid: str, doc: dict):
        session, lock = store.session(sid)
        labels = doc.get("labels")
        if not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
            raise HTTPException(422, "field labels (list of strings) is required")
        with lock:
            try:
                mcs, explanation = session.accept_corrections(labels)
            except WrongModeError as exc:
                raise HTTPException(409, str(exc))
            except KeyError as exc:
                raise HTTPException(422, str(exc))
            partial = _maybe_408(sid, session, mcs)
            if partial is not None:
                return partial
            return _state(sid, session) | {
                "conflict": _conflict_payload(mcs, explanation)
            }

    @app.post("/sessions/{sid}/priorities")
    def tune_priorities(sid: str, doc: dict):
        session, lock = store.session(sid)
        weights = doc.get("weights")
        if not isinstance(weights, dict):
            raise HTTPException(422, "field weights (object) is required")
        with lock:
            try:
                session.tune_priorities(weights)
            except WrongModeError as exc:
                raise HTTPException(409, str(exc))
            except (ValueError, HardUnsatisfiableError) as exc:
                raise HTTPException(422, str(exc))
            state = _state(sid, session)
            if (
                session.last_solution is not None
                and not session.last_solution.proven_optimal
            ):
                return JSONResponse(status_code=408, content=state)
            return state

    @app.get("/sessions/{sid}/gantt")
    def gantt(sid: str) -> dict:
        session, lock = store.session(sid)
        with lock:
            payload = _gantt_payload(session)
            if payload is None:
                raise HTTPException(409, "no solution available to visualize")
            return payload

    @app.get("/sessions/{sid}/history")
    def history(sid: str) -> dict:
        session, lock = store.session(sid)
        with lock:
            return {"history": session.snapshot()["history"]}

    return app
