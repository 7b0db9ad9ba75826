"""Stateful JSON session service for the explorer UI.

Sessions hold a seed stack for undo; every request for a session runs under
that session's lock, so per-session transitions are serialized while
distinct sessions proceed in parallel.
"""
from __future__ import annotations

import hashlib
import json
import secrets
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import PlainTextResponse

from . import green as gr
from . import seeds as sd
from .errors import EmptyUndoStack, IllegalVertex, QuiverLabError, VertexFrozen
from .fixtures import Fixture, fixture_names, get_fixture
from .icequiver import IceQuiver, forget_frozen, frame, mutate_fz


def _vid_out(v):
    if isinstance(v, tuple):
        return list(_vid_out(x) for x in v)
    return v


def _vid_in(v):
    if isinstance(v, list):
        return tuple(_vid_in(x) for x in v)
    return v


@dataclass
class SessionState:
    fixture: Fixture
    framed: bool
    quiver: IceQuiver
    seed: sd.LambdaSeed


@dataclass
class Session:
    id: str
    version: int = 0
    stack: list = field(default_factory=list)  # of SessionState
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def state(self) -> SessionState:
        return self.stack[-1]


def _initial_state(fixture_name: str, framed: bool) -> SessionState:
    fx = get_fixture(fixture_name)
    quiver = fx.quiver
    if framed:
        quiver = frame(forget_frozen(quiver) if quiver.frozen_ids() else quiver)
    seed = sd.seed_from_quiver(quiver)
    return SessionState(fx, framed, quiver, seed)


def state_payload(sess: Session) -> dict:
    st = sess.state
    quiver = st.quiver
    seed = st.seed
    names = [str(v) for v in seed.order]
    root = sess.stack[0].seed
    gvecs = {}
    for vid in seed.order:
        dec = sd.decompose(seed.variable(vid), root)
        gvecs[str(vid)] = list(dec.g)
    colors = gr.colors_of(quiver)
    payload = {
        "fixture": st.fixture.name,
        "framed": st.framed,
        "version": sess.version,
        "quiver": quiver.to_json(),
        "order": [_vid_out(v) for v in seed.order],
        "trail": [_vid_out(v) for v in seed.trail],
        "colors": {str(k): v for k, v in colors.items()},
        "lambda": seed.pair.lam.to_json(),
        "btilde": seed.pair.btilde.to_json(),
        "bhat": seed.bhat.to_json(),
        "d": seed.pair.d,
        "g_vectors": gvecs,
        "cluster": {str(v): seed.variable(v).format(names) for v in seed.order},
        "layout": _layout(st),
        "all_red": st.framed and bool(colors) and all(c == "red" for c in colors.values()),
    }
    if payload["all_red"]:
        try:
            sigma = gr.end_permutation(quiver, _base_of(st))
            payload["sigma"] = {str(k): _vid_out(v) for k, v in sigma.items()}
        except QuiverLabError:
            payload["sigma"] = None
    payload["hash"] = state_hash(st)
    return payload


def _base_of(st: SessionState) -> IceQuiver:
    base = st.fixture.quiver
    return forget_frozen(base) if base.frozen_ids() else base


def _layout(st: SessionState):
    fx = st.fixture
    out = []
    if fx.layout:
        for vid, row, col in fx.layout:
            if st.quiver.has_vertex(vid):
                out.append({"id": _vid_out(vid), "row": row, "col": col})
            if st.framed and st.quiver.has_vertex(("f", vid)):
                out.append({"id": _vid_out(("f", vid)), "row": row, "col": col, "shadow": True})
    covered = {json.dumps(c["id"]) for c in out}
    extras = [v for v in st.quiver.vertex_ids() if json.dumps(_vid_out(v)) not in covered]
    for k, vid in enumerate(extras):
        out.append({"id": _vid_out(vid), "row": 0, "col": k + 1})
    return out


def state_hash(st: SessionState) -> str:
    """Hash of the semantic state: arrow labels are bookkeeping and are
    dropped, so a double mutation hashes back to the starting board."""
    arrows = sorted(
        (str(a.src), str(a.dst), a.frozen) for a in st.quiver.arrows
    )
    blob = json.dumps(
        {
            "vertices": sorted((str(v.id), v.frozen) for v in st.quiver.vertices),
            "arrows": arrows,
            "cluster": [x.to_json() for x in st.seed.cluster],
            "lambda": st.seed.pair.lam.to_json(),
        },
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode()).hexdigest()


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def obtain(self, sid: str | None = None) -> Session:
        sid = sid or secrets.token_hex(8)
        with self._lock:
            sess = self._sessions.get(sid)
            if sess is None:
                sess = Session(sid)
                self._sessions[sid] = sess
            return sess

    def create(self, fixture_name: str, framed: bool, sid: str | None = None) -> Session:
        state = _initial_state(fixture_name, framed)
        sess = self.obtain(sid)
        with sess.lock:
            sess.stack = [state]
            sess.version += 1
        return sess

    def get(self, sid: str) -> Session:
        with self._lock:
            if sid not in self._sessions:
                raise KeyError(sid)
            return self._sessions[sid]


def session_mutate(sess: Session, vertex) -> None:
    st = sess.state
    if not st.quiver.has_vertex(vertex):
        raise IllegalVertex(f"no vertex {vertex!r}")
    if st.quiver.is_frozen(vertex):
        raise IllegalVertex(f"vertex {vertex!r} is frozen")
    try:
        quiver2 = mutate_fz(st.quiver, vertex)
        seed2 = sd.mutate_seed(st.seed, vertex)
    except VertexFrozen as exc:
        raise IllegalVertex(str(exc)) from exc
    sess.stack.append(SessionState(st.fixture, st.framed, quiver2, seed2))
    sess.version += 1


def session_undo(sess: Session) -> None:
    if len(sess.stack) <= 1:
        raise EmptyUndoStack("nothing to undo")
    sess.stack.pop()
    sess.version += 1


def session_reset(sess: Session) -> None:
    sess.stack = [sess.stack[0]]
    sess.version += 1


def invariants_payload(sess: Session, u_ref: str, v_ref: str) -> dict:
    """Invariant readout between two variable references.

    A reference is "pos:ID" (current variable at vertex ID), "initial:ID"
    (root variable) or "prev:ID" (one undo step back).
    """
    st = sess.state
    root = sess.stack[0].seed

    def resolve(ref: str):
        kind, _, raw = ref.partition(":")
        vid = _parse_vid(raw, st)
        if kind == "pos":
            return st.seed.variable(vid)
        if kind == "initial":
            return root.variable(vid)
        if kind == "prev":
            if len(sess.stack) < 2:
                raise IllegalVertex("no previous state")
            return sess.stack[-2].seed.variable(vid)
        raise IllegalVertex(f"bad variable reference {ref!r}")

    u = resolve(u_ref)
    v = resolve(v_ref)
    trop_uv = sd.tropical_invariant(u, v, root)
    trop_vu = sd.tropical_invariant(v, u, root)
    f = sd.f_invariant(u, v, root)
    payload = {
        "u": u_ref,
        "v": v_ref,
        "tropical_uv": trop_uv,
        "tropical_vu": trop_vu,
        "f_invariant": f,
        "d_invariant_twice": f,
        "d_invariant": f // 2 if f % 2 == 0 else f / 2,
        "lambda_entry": None,
    }
    # for two current positions, also report the Poisson matrix entry there
    if u_ref.startswith("pos:") and v_ref.startswith("pos:"):
        iu = st.seed.index_of(_parse_vid(u_ref[4:], st))
        iv_ = st.seed.index_of(_parse_vid(v_ref[4:], st))
        payload["lambda_entry"] = st.seed.pair.lam[iu, iv_]
    return payload


def _parse_vid(raw, st: SessionState):
    if isinstance(raw, list):
        raw = _vid_in(raw)
    if st.quiver.has_vertex(raw):
        return raw
    for vid in st.quiver.vertex_ids():
        if str(vid) == str(raw):
            return vid
    if isinstance(raw, str):
        try:
            return _parse_vid(json.loads(raw), st)
        except (ValueError, TypeError):
            pass
    raise IllegalVertex(f"unknown vertex {raw!r}")


# --- FastAPI app -------------------------------------------------------------


def create_app():
    app = FastAPI(title="quiverlab explorer API")
    store = SessionStore()
    app.state.store = store

    def _get(sid: str) -> Session:
        try:
            return store.get(sid)
        except KeyError:
            raise HTTPException(404, detail={"error": "NoSuchSession", "detail": sid})

    def _fail(exc: QuiverLabError):
        raise HTTPException(400, detail={"error": type(exc).__name__, "detail": str(exc)})

    @app.get("/api/fixtures")
    def fixtures():
        return {"fixtures": fixture_names()}

    @app.post("/api/build")
    async def build(request: Request):
        body = await request.json()
        name = body.get("fixture")
        framed = bool(body.get("framed", False))
        sid = body.get("session", "default")
        try:
            sess = store.create(name, framed, sid)
        except KeyError:
            raise HTTPException(404, detail={"error": "NoSuchFixture", "detail": name})
        with sess.lock:
            return state_payload(sess)

    @app.get("/api/state")
    def state(session: str = Query("default")):
        sess = _get(session)
        with sess.lock:
            return state_payload(sess)

    @app.post("/api/mutate")
    async def mutate(request: Request):
        body = await request.json()
        sess = _get(body.get("session", "default"))
        with sess.lock:
            try:
                vid = _parse_vid(body.get("vertex"), sess.state)
                session_mutate(sess, vid)
            except QuiverLabError as exc:
                _fail(exc)
            payload = state_payload(sess)
            try:
                payload["exchange"] = invariants_payload(
                    sess, f"pos:{vid}", f"prev:{vid}"
                )
            except QuiverLabError:
                payload["exchange"] = None
            return payload

    @app.post("/api/undo")
    async def undo(request: Request):
        body = await request.json() if await request.body() else {}
        sess = _get(body.get("session", "default"))
        with sess.lock:
            try:
                session_undo(sess)
            except QuiverLabError as exc:
                _fail(exc)
            return state_payload(sess)

    @app.post("/api/reset")
    async def reset(request: Request):
        body = await request.json() if await request.body() else {}
        sess = _get(body.get("session", "default"))
        with sess.lock:
            session_reset(sess)
            return state_payload(sess)

    @app.get("/api/invariants")
    def invariants(u: str, v: str, session: str = Query("default")):
        sess = _get(session)
        with sess.lock:
            try:
                return invariants_payload(sess, u, v)
            except QuiverLabError as exc:
                _fail(exc)

    @app.get("/api/quiver.dot", response_class=PlainTextResponse)
    def quiver_dot(session: str = Query("default")):
        sess = _get(session)
        with sess.lock:
            st = sess.state
            colors = gr.colors_of(st.quiver) if st.framed else None
            return st.quiver.to_dot(colors)

    @app.get("/api/export")
    def export(format: str = Query("json"), session: str = Query("default")):
        sess = _get(session)
        with sess.lock:
            st = sess.state
            if format == "json":
                return {"quiver": st.quiver.to_json(), "seed": st.seed.to_json()}
            if format == "matrix":
                return {
                    "order": [_vid_out(v) for v in st.seed.order],
                    "bhat": st.seed.bhat.to_json(),
                    "btilde": st.seed.pair.btilde.to_json(),
                    "lambda": st.seed.pair.lam.to_json(),
                    "d": st.seed.pair.d,
                }
            if format == "dot":
                return PlainTextResponse(st.quiver.to_dot())
            raise HTTPException(400, detail={"error": "BadFormat", "detail": format})

    @app.post("/api/import")
    async def import_quiver(request: Request):
        body = await request.json()
        sid = body.get("session", "default")
        try:
            quiver = IceQuiver.from_json(body["quiver"])
            seed = sd.seed_from_quiver(quiver)
        except (KeyError, QuiverLabError) as exc:
            raise HTTPException(
                400, detail={"error": type(exc).__name__, "detail": str(exc)}
            )
        sess = store.obtain(sid)
        with sess.lock:
            fx = Fixture("imported", quiver, "plain")
            sess.stack = [SessionState(fx, False, quiver, seed)]
            sess.version += 1
            return state_payload(sess)

    return app
