"""HTTP facade for playing the labeling game against the engine.

Sessions live in process memory and expire after an idle timeout; every
mutation of a session happens under its own lock, so concurrent requests
against one game serialize while different games proceed in parallel.  The
engine answers synchronously: a move request returns the engine's reply in
the same response.  The server is the only judge of legality; clients get
the full state back after every call.

Run directly:  python -m esdlabel.service --port 8000
Static assets (the web UI build) are served from --static when given, or
from ./frontend/dist when that directory exists.
"""

from __future__ import annotations

import argparse
import os
import secrets
import threading
import time

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import constructions as cons
from . import game as game_mod
from .game import ALICE, BOB, ONGOING, GameState, Move
from .graph import Graph, InvalidGraphError

DEFAULT_TTL_SECONDS = 3600.0


class CreateSessionRequest(BaseModel):
    graph: dict | None = None
    family: str | None = None
    seed: int | None = None
    l: int | None = None
    humanPlays: str = "Alice"
    engineStrategy: str | None = None
    engineSeed: int | None = None
    bobStarts: bool = False


class MoveRequest(BaseModel):
    v: int
    label: int


class _Session:
    def __init__(self, sid: str, graph: Graph, family: cons.Family | None, pool: int,
                 human_plays: str, engine: game_mod.Strategy, bob_starts: bool):
        self.sid = sid
        self.graph = graph
        self.family = family
        self.pool = pool
        self.human_plays = human_plays
        self.engine = engine
        self.bob_starts = bob_starts
        self.state = GameState.new(graph, pool, bob_starts=bob_starts)
        self.moves: list[Move] = []
        self.lock = threading.Lock()
        self.touched = time.monotonic()

    @property
    def engine_plays(self) -> str:
        return BOB if self.human_plays == ALICE else ALICE

    def engine_move_if_due(self) -> Move | None:
        if self.state.status != ONGOING or self.state.turn != self.engine_plays:
            return None
        mv = self.engine.choose(self.state)
        self.state = game_mod.apply_move(self.state, mv)
        self.moves.append(mv)
        return mv

    def snapshot(self) -> dict:
        st = self.state
        winner = None
        if st.status == game_mod.ALICE_WON:
            winner = ALICE
        elif st.status == game_mod.BOB_WON:
            winner = BOB
        return {
            "id": self.sid,
            "graph": self.graph.to_json(),
            "family": self.family.to_json() if self.family else None,
            "l": self.pool,
            "humanPlays": self.human_plays,
            "engineStrategy": self.engine.kind,
            "bobStarts": self.bob_starts,
            "status": st.status,
            "turn": st.turn if st.status == ONGOING else None,
            "assignment": {str(v): a for v, a in sorted(st.assignment.items())},
            "usedWeights": st.used_weights(),
            "transcript": {
                "moves": [m.to_json() for m in self.moves],
                "winner": winner,
            },
            "legalMoves": [m.to_json() for m in game_mod.legal_moves(st)],
        }


def create_app(session_ttl: float = DEFAULT_TTL_SECONDS, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="esd game service")
    sessions: dict[str, _Session] = {}
    registry_lock = threading.Lock()

    def _sweep() -> None:
        now = time.monotonic()
        with registry_lock:
            dead = [sid for sid, s in sessions.items() if now - s.touched > session_ttl]
            for sid in dead:
                del sessions[sid]

    def _get(sid: str) -> _Session:
        _sweep()
        with registry_lock:
            sess = sessions.get(sid)
        if sess is None:
            raise HTTPException(status_code=404, detail=f"unknown or expired session {sid!r}")
        return sess

    @app.get("/api/health")
    def health() -> dict:
        return {"ok": True}

    @app.post("/api/session")
    def create_session(req: CreateSessionRequest) -> dict:
        _sweep()
        if (req.graph is None) == (req.family is None):
            raise HTTPException(status_code=400, detail="provide exactly one of 'graph' or 'family'")
        family = None
        try:
            if req.family is not None:
                family = cons.parse_family(req.family)
                graph = cons.build_graph(family, seed=req.seed)
            else:
                graph = Graph.from_json(req.graph)
        except (cons.ConstructionError, InvalidGraphError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        pool = req.l if req.l is not None else graph.n
        if pool < 1:
            raise HTTPException(status_code=400, detail="label pool size must be positive")
        if req.humanPlays not in (ALICE, BOB):
            raise HTTPException(status_code=400, detail="humanPlays must be 'Alice' or 'Bob'")

        engine_plays = BOB if req.humanPlays == ALICE else ALICE
        kind = req.engineStrategy
        if kind is None:
            kind = "aliceCandidateSet" if engine_plays == ALICE else "greedyBlocker"
        if kind not in game_mod.STRATEGY_KINDS:
            raise HTTPException(
                status_code=400,
                detail=f"unknown engine strategy {kind!r}; known: {', '.join(game_mod.STRATEGY_KINDS)}",
            )
        engine = game_mod.make_strategy(kind, seed=req.engineSeed)

        sid = secrets.token_urlsafe(9)
        sess = _Session(sid, graph, family, pool, req.humanPlays, engine, req.bobStarts)
        opening = None
        try:
            with sess.lock:
                opening = sess.engine_move_if_due()
        except game_mod.GameGuardError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        with registry_lock:
            sessions[sid] = sess
        out = sess.snapshot()
        out["engineOpening"] = opening.to_json() if opening else None
        return out

    @app.get("/api/session/{sid}")
    def get_session(sid: str) -> dict:
        sess = _get(sid)
        with sess.lock:
            sess.touched = time.monotonic()
            return sess.snapshot()

    @app.post("/api/session/{sid}/move")
    def post_move(sid: str, req: MoveRequest) -> dict:
        sess = _get(sid)
        with sess.lock:
            sess.touched = time.monotonic()
            st = sess.state
            if st.status != ONGOING:
                return {
                    "accepted": False,
                    "reason": {"kind": "game-over", "message": f"game already ended: {st.status}"},
                    "engineReply": None,
                    "status": st.status,
                    "legalMoves": [],
                    "snapshot": sess.snapshot(),
                }
            if st.turn != sess.human_plays:
                return {
                    "accepted": False,
                    "reason": {"kind": "not-your-turn", "message": f"it is {st.turn}'s turn"},
                    "engineReply": None,
                    "status": st.status,
                    "legalMoves": [m.to_json() for m in game_mod.legal_moves(st)],
                    "snapshot": sess.snapshot(),
                }
            mv = Move(req.v, req.label)
            try:
                sess.state = game_mod.apply_move(st, mv)
            except game_mod.IllegalMoveError as exc:
                return {
                    "accepted": False,
                    "reason": exc.to_json(),
                    "engineReply": None,
                    "status": st.status,
                    "legalMoves": [m.to_json() for m in game_mod.legal_moves(st)],
                    "snapshot": sess.snapshot(),
                }
            sess.moves.append(mv)
            try:
                reply = sess.engine_move_if_due()
            except game_mod.GameGuardError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            return {
                "accepted": True,
                "reason": None,
                "engineReply": reply.to_json() if reply else None,
                "status": sess.state.status,
                "legalMoves": [m.to_json() for m in game_mod.legal_moves(sess.state)],
                "snapshot": sess.snapshot(),
            }

    @app.delete("/api/session/{sid}")
    def delete_session(sid: str) -> dict:
        _sweep()
        with registry_lock:
            if sid not in sessions:
                raise HTTPException(status_code=404, detail=f"unknown or expired session {sid!r}")
            del sessions[sid]
        return {"deleted": True}

    if static_dir is None:
        static_dir = os.environ.get("ESD_STATIC_DIR")
    if static_dir is None and os.path.isdir(os.path.join("frontend", "dist")):
        static_dir = os.path.join("frontend", "dist")
    if static_dir and os.path.isdir(static_dir):
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def main(argv: list[str] | None = None) -> None:
    import uvicorn

    parser = argparse.ArgumentParser(description="serve the labeling game API and UI")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--static", default=None, help="directory of built UI assets")
    parser.add_argument("--ttl", type=float, default=DEFAULT_TTL_SECONDS)
    args = parser.parse_args(argv)
    app = create_app(session_ttl=args.ttl, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


if __name__ == "__main__":
    main()
