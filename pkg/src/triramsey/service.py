"""HTTP/JSON service: game sessions, solver hints, what-if previews,
bracket and bounds queries, and (when built) the static browser UI.

Sessions live in memory; per-game writes are serialized behind a lock
while reads work on immutable state snapshots.  Move submissions may
carry ``expectedTurn`` for optimistic concurrency; stale turns get 409.
"""

from __future__ import annotations

import os
import secrets
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import bounds as bounds_mod
from . import tricore
from .engine import (
    PASS,
    CellOccupied,
    GameOver,
    GameState,
    IllegalMove,
    InvalidConfig,
    Variant,
    apply_move,
    board_cells,
    config_from_dict,
    directional_wins,
    new_game,
    render_board,
    state_to_dict,
)
from .solver import BudgetExceeded, Solver

DRAW_VALUE_NAME = "DrawValue"
WIN_NAMES = {1: "FirstPlayerWin", 2: "SecondPlayerWin"}


@dataclass
class GameSession:
    id: str
    state: GameState
    created_at: str
    updated_at: str
    lock: threading.Lock = field(default_factory=threading.Lock)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _error(code: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=code, content={"error": message, "code": code})


def _parse_move(payload: dict):
    kind = payload.get("type")
    if kind == "pass":
        return PASS
    if kind == "mark":
        cell = payload.get("cell")
        if not isinstance(cell, int):
            raise ValueError("mark moves need an integer 'cell'")
        return cell
    raise ValueError("move 'type' must be 'mark' or 'pass'")


def _outcome_of_terminal(state: GameState) -> str:
    if state.status is None:
        raise ValueError("state is not terminal")
    if hasattr(state.status, "player"):
        return WIN_NAMES[state.status.player]
    return DRAW_VALUE_NAME


def create_app(
    solver_budget: int = 500_000,
    cache_path: str | None = None,
    ui_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="triramsey", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    sessions: dict[str, GameSession] = {}
    solver_tables: dict = {}
    store_lock = threading.Lock()

    def _solve(state: GameState):
        table = solver_tables.setdefault(state.config, {})
        solver = Solver(state.config, budget=solver_budget)
        solver.table = table
        return solver.solve(state)

    def _game_payload(session: GameSession) -> dict:
        state = session.state
        config = state.config
        payload = {
            "id": session.id,
            "state": state_to_dict(state),
            "cells": [list(cell) for cell in board_cells(config.m, config.k)],
            "board": render_board(state),
            "createdAt": session.created_at,
            "updatedAt": session.updated_at,
        }
        if config.variant is Variant.DIRECTIONAL:
            payload["directionalWins"] = {
                "1": sorted(directional_wins(state, 1)),
                "2": sorted(directional_wins(state, 2)),
            }
        return payload

    @app.get("/")
    def root():
        return {"service": "triramsey", "ui": "/ui/" if app.state.ui_mounted else None}

    @app.post("/games")
    def create_game(payload: dict):
        try:
            config = config_from_dict(payload)
        except (InvalidConfig, ValueError) as exc:
            return _error(422, str(exc))
        session = GameSession(
            id=secrets.token_hex(8), state=new_game(config),
            created_at=_now(), updated_at=_now(),
        )
        with store_lock:
            sessions[session.id] = session
        return _game_payload(session)

    def _session_or_none(game_id: str) -> GameSession | None:
        return sessions.get(game_id)

    @app.get("/games/{game_id}")
    def get_game(game_id: str):
        session = _session_or_none(game_id)
        if session is None:
            return _error(404, f"unknown game {game_id}")
        return _game_payload(session)

    @app.post("/games/{game_id}/moves")
    def post_move(game_id: str, payload: dict):
        session = _session_or_none(game_id)
        if session is None:
            return _error(404, f"unknown game {game_id}")
        try:
            move = _parse_move(payload)
        except ValueError as exc:
            return _error(422, str(exc))
        expected = payload.get("expectedTurn")
        with session.lock:
            if expected is not None and expected != len(session.state.history):
                return _error(
                    409,
                    f"stale turn: expected {expected}, game is at {len(session.state.history)}",
                )
            try:
                session.state = apply_move(session.state, move)
            except (CellOccupied, GameOver) as exc:
                return _error(409, str(exc))
            except IllegalMove as exc:
                return _error(422, str(exc))
            session.updated_at = _now()
        return _game_payload(session)

    @app.get("/games/{game_id}/hint")
    def get_hint(game_id: str):
        session = _session_or_none(game_id)
        if session is None:
            return _error(404, f"unknown game {game_id}")
        state = session.state
        if state.status is not None:
            return _error(409, "game already ended")
        try:
            value = _solve(state)
        except BudgetExceeded as exc:
            return _error(503, f"solver budget exceeded: {exc}")
        move = {"type": "pass"} if value.move is PASS else {"type": "mark", "cell": value.move}
        return {"move": move, "outcome": value.outcome, "nodesExplored": value.nodes_explored}

    @app.get("/games/{game_id}/whatif")
    def get_whatif(game_id: str, move: str):
        session = _session_or_none(game_id)
        if session is None:
            return _error(404, f"unknown game {game_id}")
        state = session.state
        if move == "pass":
            candidate = PASS
        else:
            try:
                candidate = int(move)
            except ValueError:
                return _error(422, f"move must be 'pass' or a cell index, got {move!r}")
        try:
            child = apply_move(state, candidate)
        except (CellOccupied, GameOver) as exc:
            return _error(409, str(exc))
        except IllegalMove as exc:
            return _error(422, str(exc))
        if child.status is not None:
            return {"move": move, "resultingOutcome": _outcome_of_terminal(child),
                    "nodesExplored": 0}
        try:
            value = _solve(child)
        except BudgetExceeded as exc:
            return _error(503, f"solver budget exceeded: {exc}")
        return {"move": move, "resultingOutcome": value.outcome,
                "nodesExplored": value.nodes_explored}

    @app.get("/bracket")
    def get_bracket(n: int, k: int):
        try:
            value = tricore.bracket(n, k)
        except (ValueError, tricore.KTooLarge) as exc:
            return _error(422, str(exc))
        return {"n": n, "k": k, "value": str(value)}

    @app.get("/bounds")
    def get_bounds(p: int, q: int, k: int):
        try:
            row = bounds_mod.bounds_row(p, q, k)
        except bounds_mod.InvalidParams as exc:
            return _error(422, str(exc))
        return {
            "p": row.p,
            "q": row.q,
            "k": row.k,
            "value": row.value,
            "lower": row.lower,
            "lowerSource": row.lower_source,
            "upperExpr": row.upper_expr,
            "upperInterval": None if row.upper_interval is None
            else row.upper_interval.as_json(),
        }

    ui_path = Path(
        ui_dir
        or os.environ.get("TRIRAMSEY_UI_DIR")
        or Path(__file__).resolve().parents[2] / "frontend"
    )
    app.state.ui_mounted = False
    if (ui_path / "index.html").exists():
        app.mount("/ui", StaticFiles(directory=str(ui_path), html=True), name="ui")
        app.state.ui_mounted = True

    return app
