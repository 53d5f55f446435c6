"""Rules of Mines: boards, cells, moves, wins, draws, and the rotation variant.

A game on an m-level board has one playable cell per k-level sub-triangle.
Player one's goal is a p-level triangle whose every k-cell they own;
player two's is the same with q levels.  The directional variant (k = 1)
evaluates the goal in the three 120-degree board orientations and awards
the game to whoever wins at least two of them.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

from .tricore import (
    TriangularSet,
    enumerate_subtriangles,
    full_triangle,
    level_of_index,
    triangular_number,
)


class InvalidConfig(ValueError):
    """Game parameters violate k <= p,q <= m or the variant's constraints."""


class IllegalMove(ValueError):
    pass


class CellOccupied(IllegalMove):
    pass


class GameOver(IllegalMove):
    pass


class NotDirectional(ValueError):
    pass


class Variant(str, enum.Enum):
    STANDARD = "standard"
    DIRECTIONAL = "directional"


P1 = 1
P2 = 2
PASS = None  # a move is a cell index or PASS


@dataclass(frozen=True)
class GameConfig:
    m: int
    p: int
    q: int
    k: int = 1
    variant: Variant = Variant.STANDARD

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not (1 <= self.k <= self.p <= self.m and self.k <= self.q <= self.m):
            raise InvalidConfig(
                f"need 1 <= k <= p,q <= m, got m={self.m} p={self.p} q={self.q} k={self.k}"
            )
        if self.variant is Variant.DIRECTIONAL and self.k != 1:
            raise InvalidConfig("the directional variant is defined for k=1 only")

    def target(self, player: int) -> int:
        return self.p if player == P1 else self.q

    def cell_count(self) -> int:
        return len(board_cells(self.m, self.k))


def position_row_col(pid: int) -> tuple[int, int]:
    """Board position id (1-based, row-major) to (row, col)."""
    row = level_of_index(pid - 1)
    return row, pid - triangular_number(row - 1)


def position_id(row: int, col: int) -> int:
    return triangular_number(row - 1) + col


def rotate_position(pid: int, m: int) -> int:
    """Image of a position under one 120-degree rotation of an m-level board.

    Barycentric coordinates (a, b, c) = (m - row, col - 1, row - col) cycle
    to (c, a, b); applying the map three times is the identity.
    """
    row, col = position_row_col(pid)
    if row > m:
        raise ValueError(f"position {pid} not on a {m}-level board")
    a, b, c = m - row, col - 1, row - col
    a, b, c = c, a, b
    return position_id(m - a, b + 1)


def rotate_set(positions, m: int, times: int = 1) -> tuple[int, ...]:
    out = tuple(positions)
    for _ in range(times % 3):
        out = tuple(rotate_position(x, m) for x in out)
    return tuple(sorted(out))


@functools.lru_cache(maxsize=None)
def board_cells(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Playable cells of an (m, k) board: all k-level sub-triangles of the
    board, in lexicographic order.  The index into this tuple is the
    cell index used by every wire format."""
    return tuple(t.elements for t in enumerate_subtriangles(full_triangle(m), k))


@functools.lru_cache(maxsize=None)
def _cell_index(m: int, k: int) -> dict[tuple[int, ...], int]:
    return {cell: i for i, cell in enumerate(board_cells(m, k))}


@functools.lru_cache(maxsize=None)
def win_tables(m: int, size: int, k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Standard-orientation winning sets of a given level count.

    One entry per size-level sub-triangle Z of the board: Z's positions and
    the bitmask of cell indices of every k-cell inside Z.
    """
    index = _cell_index(m, k)
    out = []
    for z in enumerate_subtriangles(full_triangle(m), size):
        mask = 0
        for cell in enumerate_subtriangles(z, k):
            mask |= 1 << index[cell.elements]
        out.append((z.elements, mask))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def directional_win_tables(
    m: int, size: int
) -> tuple[tuple[tuple[tuple[int, ...], int], ...], ...]:
    """Winning sets per direction d = 1, 2, 3 for k = 1 boards.

    A position set wins in direction d when its image under d-1 rotations
    is a standard size-level triangular set; direction 1 equals the
    standard table.
    """
    per_direction = []
    for d in (1, 2, 3):
        entries = []
        for z, _ in win_tables(m, size, 1):
            pre = rotate_set(z, m, times=3 - (d - 1))
            mask = 0
            for pid in pre:
                mask |= 1 << (pid - 1)
            entries.append((pre, mask))
        per_direction.append(tuple(entries))
    return tuple(per_direction)


@functools.lru_cache(maxsize=None)
def masks_by_cell(m: int, size: int, k: int) -> tuple[tuple[int, ...], ...]:
    """For each cell, indices into win_tables(m, size, k) of the sets it
    belongs to (only those can complete when the cell is marked)."""
    tables = win_tables(m, size, k)
    ncells = len(board_cells(m, k))
    per_cell: list[list[int]] = [[] for _ in range(ncells)]
    for wi, (_, mask) in enumerate(tables):
        rest = mask
        while rest:
            low = rest & -rest
            per_cell[low.bit_length() - 1].append(wi)
            rest ^= low
    return tuple(tuple(v) for v in per_cell)


@dataclass(frozen=True)
class Won:
    player: int
    witness: tuple[int, ...] | None
    move_index: int
    directions: tuple[tuple[int, tuple[int, ...]], ...] | None = None


@dataclass(frozen=True)
class Drawn:
    reason: str  # "board_full" | "double_pass"


Status = Won | Drawn | None  # None = ongoing


@dataclass(frozen=True)
class GameState:
    config: GameConfig
    owner: tuple[int, ...]  # 0 empty, 1, 2
    history: tuple[tuple[int, int | None], ...]  # (player, cell or PASS)
    to_move: int
    status: Won | Drawn | None

    def owned_mask(self, player: int) -> int:
        mask = 0
        for i, o in enumerate(self.owner):
            if o == player:
                mask |= 1 << i
        return mask

    def pass_streak(self) -> int:
        streak = 0
        for _, move in reversed(self.history):
            if move is not PASS:
                break
            streak += 1
        return min(streak, 2)


def new_game(config: GameConfig) -> GameState:
    return GameState(
        config=config,
        owner=(0,) * config.cell_count(),
        history=(),
        to_move=P1,
        status=None,
    )


def legal_moves(state: GameState) -> list[int | None]:
    """Marks on empty cells (ascending) followed by the pass move."""
    if state.status is not None:
        raise GameOver("game already ended")
    moves: list[int | None] = [i for i, o in enumerate(state.owner) if o == 0]
    moves.append(PASS)
    return moves


def _standard_witness(config: GameConfig, owned: int, player: int):
    for z, mask in win_tables(config.m, config.target(player), config.k):
        if mask & owned == mask:
            return z
    return None


def _directional_wins_for_mask(config: GameConfig, owned: int, player: int):
    wins = []
    for d, entries in enumerate(directional_win_tables(config.m, config.target(player)), start=1):
        for z, mask in entries:
            if mask & owned == mask:
                wins.append((d, z))
                break
    return tuple(wins)


def _status_after_move(state: GameState, owner, history, mover: int, move) -> Won | Drawn | None:
    config = state.config
    if move is not PASS:
        owned = 0
        for i, o in enumerate(owner):
            if o == mover:
                owned |= 1 << i
        if config.variant is Variant.DIRECTIONAL:
            wins = _directional_wins_for_mask(config, owned, mover)
            if len(wins) >= 2:
                return Won(mover, wins[0][1], len(history), directions=wins)
        else:
            witness = _standard_witness(config, owned, mover)
            if witness is not None:
                return Won(mover, witness, len(history))
        if all(owner):
            return Drawn("board_full")
    else:
        if len(history) >= 2 and history[-1][1] is PASS and history[-2][1] is PASS:
            return Drawn("double_pass")
    return None


def apply_move(state: GameState, move: int | None) -> GameState:
    """Apply a mark or pass for the player to move; returns the new state.

    Wins are stamped at the move that first completes the mover's set; the
    game also ends when every cell is marked, or after two consecutive
    passes (evaluated as a draw).
    """
    if state.status is not None:
        raise GameOver("game already ended")
    mover = state.to_move
    if move is PASS:
        owner = state.owner
    else:
        if not 0 <= move < len(state.owner):
            raise IllegalMove(f"cell {move} out of range")
        if state.owner[move] != 0:
            raise CellOccupied(f"cell {move} already marked")
        owner = state.owner[:move] + (mover,) + state.owner[move + 1:]
    history = state.history + ((mover, move),)
    status = _status_after_move(state, owner, history, mover, move)
    return GameState(
        config=state.config,
        owner=owner,
        history=history,
        to_move=P2 if mover == P1 else P1,
        status=status,
    )


def winning_witness(state: GameState, player: int) -> TriangularSet | None:
    """A standard-orientation witness triangle fully owned by the player."""
    z = _standard_witness(state.config, state.owned_mask(player), player)
    if z is None:
        return None
    return TriangularSet(z, state.config.target(player))


def directional_wins(state: GameState, player: int) -> set[int]:
    """Directions (1..3) in which the player owns a rotated winning set."""
    if state.config.variant is not Variant.DIRECTIONAL:
        raise NotDirectional("directional wins are defined for the directional variant")
    wins = _directional_wins_for_mask(state.config, state.owned_mask(player), player)
    return {d for d, _ in wins}


def render_board(state: GameState) -> str:
    """Row-major text rendering; X/Y/. per position for k = 1 boards."""
    config = state.config
    symbols = {0: ".", P1: "X", P2: "Y"}
    if config.k == 1:
        lines = []
        for row in range(1, config.m + 1):
            cells = [
                symbols[state.owner[position_id(row, col) - 1]]
                for col in range(1, row + 1)
            ]
            lines.append(" " * (config.m - row) + " ".join(cells))
        return "\n".join(lines)
    return "".join(symbols[o] for o in state.owner)


# --- JSON wire format ------------------------------------------------------


def config_to_dict(config: GameConfig) -> dict:
    return {
        "m": config.m,
        "p": config.p,
        "q": config.q,
        "k": config.k,
        "variant": config.variant.value,
    }


def config_from_dict(payload: dict) -> GameConfig:
    try:
        return GameConfig(
            m=int(payload["m"]),
            p=int(payload["p"]),
            q=int(payload["q"]),
            k=int(payload.get("k", 1)),
            variant=Variant(payload.get("variant", "standard")),
        )
    except (KeyError, TypeError) as exc:
        raise InvalidConfig(f"malformed config payload: {exc}") from exc


def _status_to_dict(status: Won | Drawn | None) -> dict:
    if status is None:
        return {"state": "ongoing"}
    if isinstance(status, Won):
        payload = {
            "state": "won",
            "player": status.player,
            "witness": list(status.witness) if status.witness else None,
            "moveIndex": status.move_index,
        }
        if status.directions is not None:
            payload["directions"] = {str(d): list(z) for d, z in status.directions}
        return payload
    return {"state": "draw", "reason": status.reason}


def state_to_dict(state: GameState) -> dict:
    return {
        "config": config_to_dict(state.config),
        "owner": list(state.owner),
        "history": [
            {"player": player, "type": "pass"}
            if move is PASS
            else {"player": player, "type": "mark", "cell": move}
            for player, move in state.history
        ],
        "toMove": state.to_move,
        "turn": len(state.history),
        "status": _status_to_dict(state.status),
    }


def state_from_dict(payload: dict) -> GameState:
    """Rebuild a state by replaying its history, then check the payload's
    redundant fields against the replay; inconsistent payloads are rejected."""
    config = config_from_dict(payload["config"])
    state = new_game(config)
    for entry in payload.get("history", ()):
        move = PASS if entry.get("type") == "pass" else int(entry["cell"])
        if int(entry["player"]) != state.to_move:
            raise IllegalMove("history players do not alternate from player one")
        state = apply_move(state, move)
    if "owner" in payload and list(state.owner) != list(payload["owner"]):
        raise IllegalMove("owner field inconsistent with history replay")
    if "toMove" in payload and state.to_move != int(payload["toMove"]):
        raise IllegalMove("toMove field inconsistent with history replay")
    declared = payload.get("status")
    if declared is not None and declared != _status_to_dict(state.status):
        raise IllegalMove("status field inconsistent with history replay")
    return state
