"""Optimal play for small Mines boards: full-depth negamax with a
transposition table, plus a replay check of the explicit corner strategy.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .engine import (
    PASS,
    P1,
    P2,
    GameConfig,
    GameOver,
    GameState,
    Variant,
    board_cells,
    directional_win_tables,
    legal_moves,
    masks_by_cell,
    new_game,
    apply_move,
    rotate_position,
    win_tables,
)

FIRST_PLAYER_WIN = "FirstPlayerWin"
SECOND_PLAYER_WIN = "SecondPlayerWin"
DRAW_VALUE = "DrawValue"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GameValue:
    outcome: str
    move: int | None  # principal move; None is the pass move
    has_move: bool
    nodes_explored: int


def _mirror_position(pid: int, m: int) -> int:
    from .engine import position_id, position_row_col

    row, col = position_row_col(pid)
    return position_id(row, row + 1 - col)


def _lift_to_cells(position_map, cells, index) -> tuple[int, ...] | None:
    """Lift a board-position permutation to a cell permutation; None when
    some cell's image is not itself a cell."""
    out = []
    for cell in cells:
        image = tuple(sorted(position_map[p] for p in cell))
        j = index.get(image)
        if j is None:
            return None
        out.append(j)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _symmetries(config: GameConfig) -> tuple[tuple[int, ...], ...]:
    """Cell permutations under which the win rule is invariant.

    Candidates are the board's six geometric symmetries (rotations and
    mirrors), which permute the three directions, so the 2-of-3 rule is
    preserved whenever the mask families are.  A candidate is kept only if
    it lifts to a permutation of cells and maps each player's family of
    winning masks onto itself (for the directional variant, the union over
    directions; the standard family is orientation-fixed, which rules the
    rotations out there).
    """
    m, k = config.m, config.k
    npos = len(board_cells(m, 1))
    cells = board_cells(m, k)
    index = {cell: i for i, cell in enumerate(cells)}

    position_maps = []
    rot = {p: rotate_position(p, m) for p in range(1, npos + 1)}
    mir = {p: _mirror_position(p, m) for p in range(1, npos + 1)}
    r2 = {p: rot[rot[p]] for p in rot}
    for base in ({p: p for p in rot}, rot, r2):
        position_maps.append(base)
        position_maps.append({p: mir[base[p]] for p in base})

    def mask_family(player: int) -> frozenset[int]:
        if config.variant is Variant.DIRECTIONAL:
            return frozenset(
                mask
                for entries in directional_win_tables(m, config.target(player))
                for _, mask in entries
            )
        return frozenset(mask for _, mask in win_tables(m, config.target(player), k))

    families = (mask_family(P1), mask_family(P2))

    def permute_mask(mask: int, cell_map: tuple[int, ...]) -> int:
        out = 0
        rest = mask
        while rest:
            low = rest & -rest
            out |= 1 << cell_map[low.bit_length() - 1]
            rest ^= low
        return out

    kept = []
    for pm in position_maps:
        cell_map = _lift_to_cells(pm, cells, index)
        if cell_map is None:
            continue
        if all(
            frozenset(permute_mask(msk, cell_map) for msk in fam) == fam
            for fam in families
        ):
            kept.append(cell_map)
    return tuple(dict.fromkeys(kept))


class Solver:
    """Negamax over (ownership-one, ownership-two, to-move, pass-streak).

    Games are finite (double pass terminates), so depth is unbounded; the
    budget caps visited nodes.  States are canonicalized under the board
    symmetries valid for the variant.
    """

    def __init__(self, config: GameConfig, budget: int | None = None):
        self.config = config
        self.budget = budget
        self.nodes = 0
        self.table: dict[tuple, tuple[int, int | None]] = {}
        self.ncells = config.cell_count()
        self._full = (1 << self.ncells) - 1
        self._masks = {
            P1: [mask for _, mask in win_tables(config.m, config.p, config.k)],
            P2: [mask for _, mask in win_tables(config.m, config.q, config.k)],
        }
        self._by_cell = {
            P1: masks_by_cell(config.m, config.p, config.k),
            P2: masks_by_cell(config.m, config.q, config.k),
        }
        if config.variant is Variant.DIRECTIONAL:
            self._dir_masks = {
                P1: directional_win_tables(config.m, config.p),
                P2: directional_win_tables(config.m, config.q),
            }
        self._sym = _symmetries(config)

    # -- win predicates ----------------------------------------------------

    def _wins_after_mark(self, owned: int, cell: int, player: int) -> bool:
        if self.config.variant is Variant.DIRECTIONAL:
            count = 0
            for entries in self._dir_masks[player]:
                for _, mask in entries:
                    if mask & owned == mask:
                        count += 1
                        break
            return count >= 2
        masks = self._masks[player]
        for wi in self._by_cell[player][cell]:
            mask = masks[wi]
            if mask & owned == mask:
                return True
        return False

    # -- canonicalization ---------------------------------------------------

    def _canonical(self, ones: int, twos: int, to_move: int, streak: int):
        if len(self._sym) <= 1:
            return ones, twos, to_move, streak
        best = None
        for cell_map in self._sym:
            a = self._permute(ones, cell_map)
            b = self._permute(twos, cell_map)
            cand = (a, b)
            if best is None or cand < best:
                best = cand
        return best[0], best[1], to_move, streak

    @staticmethod
    def _permute(mask: int, cell_map: tuple[int, ...]) -> int:
        out = 0
        rest = mask
        while rest:
            low = rest & -rest
            out |= 1 << cell_map[low.bit_length() - 1]
            rest ^= low
        return out

    # -- search --------------------------------------------------------------

    def _negamax(self, ones: int, twos: int, player: int, streak: int) -> tuple[int, int | None]:
        """Value in {-1, 0, 1} from the mover's perspective plus the
        principal move (lowest winning cell first, pass last)."""
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(f"node budget {self.budget} exhausted")
        key = self._canonical(ones, twos, player, streak)
        hit = self.table.get(key)
        if hit is not None:
            return hit

        own, other = (ones, twos) if player == P1 else (twos, ones)
        opponent = P2 if player == P1 else P1
        best, best_move = -2, None
        occupied = ones | twos
        empties = self._full & ~occupied
        rest = empties
        while rest:
            low = rest & -rest
            rest ^= low
            cell = low.bit_length() - 1
            own2 = own | low
            if self._wins_after_mark(own2, cell, player):
                value = 1
            elif (occupied | low) == self._full:
                value = 0
            else:
                if player == P1:
                    value = -self._negamax(own2, twos, opponent, 0)[0]
                else:
                    value = -self._negamax(ones, own2, opponent, 0)[0]
            if value > best:
                best, best_move = value, cell
                if best == 1:
                    break
        if best < 1:
            if streak >= 1:
                value = 0  # second consecutive pass ends the game as a draw
            else:
                value = -self._negamax(ones, twos, opponent, streak + 1)[0]
            if value > best:
                best, best_move = value, PASS
        result = (best, best_move)
        self.table[key] = result
        return result

    def solve(self, state: GameState) -> GameValue:
        if state.config != self.config:
            raise ValueError("state does not match this solver's config")
        if state.status is not None:
            raise GameOver("game already ended")
        ones = state.owned_mask(P1)
        twos = state.owned_mask(P2)
        score, move = self._negamax(ones, twos, state.to_move, state.pass_streak())
        if score == 0:
            outcome = DRAW_VALUE
        elif (score == 1) == (state.to_move == P1):
            outcome = FIRST_PLAYER_WIN
        else:
            outcome = SECOND_PLAYER_WIN
        return GameValue(outcome=outcome, move=move, has_move=True, nodes_explored=self.nodes)


def solve(state: GameState, budget: int | None = None) -> GameValue:
    """Game-theoretic value of the position under the engine's rules."""
    return Solver(state.config, budget=budget).solve(state)


def best_move(state: GameState, budget: int | None = None) -> int | None:
    """A move achieving the solved value; lowest cell index first, pass last."""
    if state.status is not None:
        raise GameOver("game already ended")
    return solve(state, budget=budget).move


# --- explicit Mines_3 corner strategy ---------------------------------------

_CORNERS = (1, 4, 6)  # position ids
_TOP = (1, 2, 3)


def _corner_rotation(pair: frozenset[int]) -> int:
    """Rotations r with rot^r(pair) == {4, 6}."""
    for r in range(3):
        img = pair
        for _ in range(r):
            img = frozenset(rotate_position(p, 3) for p in img)
        if img == frozenset((4, 6)):
            return r
    raise AssertionError(f"{pair} is not a corner pair")


def _strategy_moves(state: GameState) -> list[int]:
    """Player one's conforming moves: two free corners, then any free
    position mapping into the top two rows of the normalized frame."""
    owned = [i + 1 for i, o in enumerate(state.owner) if o == P1]
    if len(owned) < 2:
        return [p - 1 for p in _CORNERS if state.owner[p - 1] == 0]
    r = _corner_rotation(frozenset(owned))
    targets = []
    for pid in range(1, 7):
        img = pid
        for _ in range(r):
            img = rotate_position(img, 3)
        if img in _TOP:
            targets.append(pid)
    return [p - 1 for p in targets if state.owner[p - 1] == 0]


def verify_strategy_theorem(variant: Variant | str = Variant.DIRECTIONAL) -> bool:
    """Replay the explicit corner strategy against every opponent reply.

    Player one takes two of the corners {1, 4, 6}, then whichever of the
    top two rows is free in the frame rotated so their corners sit at
    {4, 6}.  Every replay must leave player one winning in at least two of
    the three directions after their third mark (for the directional
    variant this is exactly the game's win condition, and the engine must
    have stamped the win).  Opponent replies include passing.
    """
    variant = Variant(variant)
    config = GameConfig(3, 2, 2, 1, variant)
    dir_tables = directional_win_tables(3, 2)

    def dir_win_count(owned_mask: int) -> int:
        count = 0
        for entries in dir_tables:
            if any(mask & owned_mask == mask for _, mask in entries):
                count += 1
        return count

    stack = [new_game(config)]
    leaves = 0
    while stack:
        state = stack.pop()
        p1_marks = sum(1 for o in state.owner if o == P1)
        if p1_marks == 3:
            leaves += 1
            if dir_win_count(state.owned_mask(P1)) < 2:
                return False
            if variant is Variant.DIRECTIONAL:
                if state.status is None or state.status.player != P1:
                    return False
            continue
        if state.status is not None:
            return False  # the game may not end before the strategy completes
        if state.to_move == P1:
            moves = _strategy_moves(state)
            if not moves:
                return False  # the strategy must always have a move
        else:
            moves = legal_moves(state)
        for move in moves:
            stack.append(apply_move(state, move))
    return leaves > 0
