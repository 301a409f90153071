"""Networked game sessions over JSON/HTTP plus a round event stream.

One session binds a graph, a strategy instance and the current guard
configuration.  Attacks arrive via POST and are serialized per session;
every round is appended to an on-disk JSONL log so sessions survive a
restart, and pushed to any subscribed event-stream readers.
"""

from __future__ import annotations

import asyncio
import datetime as _dt
import json
import os
import secrets
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from .errors import (
    Conflict,
    DegenerateParameters,
    EvcError,
    IllegalAttack,
    Indefensible,
    NotApplicable,
    UnknownSession,
)
from .game import (
    AttackEvent,
    GuardConfig,
    apply_round,
    make_attack,
    legal_attacks,
    round_record,
    swap_move,
)
from .grid import GridGraph, GridKind, Topology, build_graph, canonical_edge
from .strategies import DefenseStrategy, OctShiftStrategy, make_strategy


class SabotagedOctShift(OctShiftStrategy):
    """Test-build strategy with an injected defect: refuses round N.

    Exists so the console's failure surfacing can be exercised end to
    end; only registered when EVC_TEST_STRATEGIES is set.
    """

    tag = "oct-shift-sabotage"
    fail_at_round = 5

    def defend(self, c, a):
        played = self.state.get("rounds", 0)
        if played + 1 >= self.fail_at_round:
            raise Indefensible(
                "injected defect: strategy refuses to answer this attack",
                {"attack": a.to_json(), "round": played + 1,
                 "guards": [list(v) for v in sorted(c.guarded)]})
        move = super().defend(c, a)
        self.state["rounds"] = played + 1
        return move


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat()


@dataclass
class Session:
    id: str
    graph: GridGraph
    strategy: DefenseStrategy
    config: GuardConfig
    history: list[dict] = field(default_factory=list)
    version: int = 0
    created: str = field(default_factory=_now)
    updated: str = field(default_factory=_now)
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)
    subscribers: list[asyncio.Queue] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "id": self.id,
            "kind": self.graph.kind.value,
            "h": self.graph.h,
            "w": self.graph.w,
            "topology": self.graph.topology.value,
            "strategy": self.strategy.tag,
            "state": self.strategy.state,
            "guards": [list(v) for v in self.config.sorted_guards()],
            "version": self.version,
            "created": self.created,
            "updated": self.updated,
        }

    def full_view(self) -> dict:
        view = self.summary()
        view["graph"] = self.graph.to_json_dict()
        view["history"] = self.history
        return view


def _session_strategy(tag: str, graph: GridGraph, test_build: bool) -> DefenseStrategy:
    if test_build and tag == SabotagedOctShift.tag:
        return SabotagedOctShift(graph)
    return make_strategy(tag, graph)


class SessionStore:
    def __init__(self, data_dir: Path, test_build: bool = False):
        self.data_dir = data_dir
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.test_build = test_build
        self.sessions: dict[str, Session] = {}

    def _log_path(self, sid: str) -> Path:
        return self.data_dir / f"{sid}.jsonl"

    def create(self, kind: str, h: int, w: int, topology: str, strategy: str) -> Session:
        graph = build_graph(GridKind(kind), h, w, Topology(topology))
        strat = _session_strategy(strategy, graph, self.test_build)
        config = strat.initial_config(graph)
        sid = secrets.token_urlsafe(16)
        session = Session(sid, graph, strat, config)
        self.sessions[sid] = session
        header = {
            "type": "session",
            "id": sid,
            "kind": kind, "h": h, "w": w, "topology": topology,
            "strategy": strategy,
            "initial": [list(v) for v in config.sorted_guards()],
            "state": strat.state,
            "created": session.created,
        }
        with self._log_path(sid).open("w") as fh:
            fh.write(json.dumps(header, sort_keys=True) + "\n")
        return session

    def get(self, sid: str) -> Session:
        session = self.sessions.get(sid)
        if session is not None:
            return session
        session = self._load(sid)
        if session is None:
            raise UnknownSession(sid)
        self.sessions[sid] = session
        return session

    def _load(self, sid: str) -> Session | None:
        path = self._log_path(sid)
        if not path.exists():
            return None
        lines = [json.loads(line) for line in path.read_text().splitlines() if line]
        if not lines or lines[0].get("type") != "session":
            return None
        head = lines[0]
        graph = build_graph(GridKind(head["kind"]), head["h"], head["w"],
                            Topology(head["topology"]))
        strat = _session_strategy(head["strategy"], graph, self.test_build)
        config = strat.initial_config(graph)
        session = Session(sid, graph, strat, config, created=head["created"])
        for entry in lines[1:]:
            if entry.get("type") != "round":
                continue
            guards = frozenset((x, y) for x, y in entry["config_after"])
            session.config = GuardConfig(graph, guards)
            session.history.append({k: entry[k] for k in
                                    ("attack", "move", "config_after")})
            session.version = entry["version"]
            strat.set_state(entry.get("state", {}))
        return session

    def append_round(self, session: Session, record: dict) -> None:
        entry = {"type": "round", **record,
                 "state": session.strategy.state, "version": session.version}
        with self._log_path(session.id).open("a") as fh:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")


def _error_response(exc: EvcError) -> JSONResponse:
    status = {
        UnknownSession: 404,
        IllegalAttack: 400,
        DegenerateParameters: 400,
        NotApplicable: 400,
        Conflict: 409,
        Indefensible: 500,
    }.get(type(exc), 500)
    body = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, Indefensible):
        body["trace"] = exc.trace
    return JSONResponse(body, status_code=status)


def create_app(data_dir: Path | str = "./evc-data") -> FastAPI:
    test_build = bool(os.environ.get("EVC_TEST_STRATEGIES"))
    store = SessionStore(Path(data_dir), test_build=test_build)
    app = FastAPI(title="evcgrid session service")
    app.state.store = store

    @app.exception_handler(EvcError)
    async def _evc_error(_request: Request, exc: EvcError):
        return _error_response(exc)

    @app.post("/sessions", status_code=201)
    async def create_session(payload: dict):
        session = store.create(
            payload["kind"], int(payload.get("h", 2)), int(payload["w"]),
            payload.get("topology", "rect"), payload["strategy"])
        return session.summary()

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        return store.get(sid).full_view()

    @app.get("/sessions/{sid}/attacks")
    async def list_attacks(sid: str):
        session = store.get(sid)
        return {"attacks": [a.to_json() for a in legal_attacks(session.config)],
                "version": session.version}

    @app.post("/sessions/{sid}/attack")
    async def post_attack(sid: str, payload: dict):
        session = store.get(sid)
        async with session.lock:
            expected = payload.get("version")
            if expected is not None and expected != session.version:
                raise Conflict(f"round already played: version {session.version}")
            record = _play_round(session, payload["edge"])
            session.version += 1
            session.updated = _now()
            session.history.append(record)
            store.append_round(session, record)
            await _broadcast(session, "round", {**record, "version": session.version})
            return {**record, "version": session.version}

    @app.get("/sessions/{sid}/events")
    async def events(sid: str, request: Request):
        session = store.get(sid)
        queue: asyncio.Queue = asyncio.Queue()
        session.subscribers.append(queue)

        async def stream():
            try:
                yield _sse("snapshot", session.summary())
                while True:
                    if await request.is_disconnected():
                        break
                    try:
                        kind, data = await asyncio.wait_for(queue.get(), timeout=1.0)
                    except asyncio.TimeoutError:
                        continue
                    yield _sse(kind, data)
            finally:
                session.subscribers.remove(queue)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app


def _play_round(session: Session, edge_json) -> dict:
    graph = session.graph
    edge = canonical_edge(tuple(edge_json[0]), tuple(edge_json[1]))
    if edge not in graph.edge_set:
        raise IllegalAttack(f"{edge} is not an edge of the graph")
    u, v = edge
    guarded = session.config.guarded
    if u in guarded and v in guarded:
        move = swap_move(session.config, edge)
        attack = AttackEvent(edge, u)
        after = GuardConfig(graph, move.image)
    elif u not in guarded and v not in guarded:
        raise IllegalAttack(
            f"neither endpoint of {edge} is guarded: cover invariant breach")
    else:
        attack = make_attack(session.config, edge)
        try:
            move = session.strategy.defend(session.config, attack)
            after = apply_round(session.config, attack, move)
        except Indefensible as exc:
            exc.trace.setdefault("history_tail", session.history[-5:])
            raise
    session.config = after
    return round_record(attack, move, after)


async def _broadcast(session: Session, kind: str, data: dict) -> None:
    for queue in list(session.subscribers):
        queue.put_nowait((kind, data))


def _sse(event: str, data: dict) -> str:
    return f"event: {event}\ndata: {json.dumps(data, sort_keys=True)}\n\n"
