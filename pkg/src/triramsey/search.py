"""Draw-coloring search, triangular Ramsey values, and double-win sweeps.

Colorings of a board's cells are packed as bit vectors (bit set = cell
owned by player one).  Exhaustive sweeps never walk colorings one at a
time: player one's win predicate is upward-closed, player two's downward-
closed, so both are materialized over the whole coloring space with two
bitset closure passes and all questions (draw exists / double win exists /
census) become word-wise scans.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import kernels
from .engine import GameConfig, win_tables

DRAW_FOUND = "draw_found"
NO_DRAW = "no_draw_exists"
INCONCLUSIVE = "inconclusive"

EXHAUSTIVE_BIT_LIMIT = 30  # 2^30 colorings = 128 MiB per bitmap


class BudgetInvalid(ValueError):
    pass


class SpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SearchOutcome:
    result: str  # DRAW_FOUND | NO_DRAW | INCONCLUSIVE
    coloring: int | None
    nodes_explored: int
    elapsed: float

    @property
    def found(self) -> bool:
        return self.result == DRAW_FOUND


def coloring_to_hex(coloring: int, ncells: int) -> str:
    return format(coloring, "0{}x".format((ncells + 3) // 4))


def coloring_from_hex(text: str) -> int:
    return int(text, 16)


def _player_masks(config: GameConfig, player: int) -> list[int]:
    return [mask for _, mask in win_tables(config.m, config.target(player), config.k)]


def is_draw_coloring(coloring: int, config: GameConfig) -> bool:
    """True when no p-triangle is all player-one and no q-triangle all
    player-two under the total coloring (set bit = player one)."""
    ncells = config.cell_count()
    complement = ~coloring & ((1 << ncells) - 1)
    for mask in _player_masks(config, 1):
        if mask & coloring == mask:
            return False
    for mask in _player_masks(config, 2):
        if mask & complement == mask:
            return False
    return True


@dataclass
class PartitionCensus:
    """Aggregates over all 2^cells total colorings of a board."""

    ncells: int
    total: int
    draws: int
    double_wins: int
    first_draw: int | None
    first_double_win: int | None

    @property
    def unique_winner_everywhere(self) -> bool:
        return self.draws == 0 and self.double_wins == 0


def partition_census(
    config: GameConfig, backend: str | None = None, bit_limit: int = EXHAUSTIVE_BIT_LIMIT
) -> PartitionCensus:
    """Sweep every total coloring at once via bitset closures."""
    ncells = config.cell_count()
    if ncells > bit_limit:
        raise SpaceTooLarge(f"2^{ncells} colorings exceed the 2^{bit_limit} sweep limit")
    p1_wins = kernels.new_bitset(ncells)
    kernels.set_bits(p1_wins, _player_masks(config, 1))
    kernels.closure_up(p1_wins, ncells, backend=backend)

    full = (1 << ncells) - 1
    p2_wins = kernels.new_bitset(ncells)
    kernels.set_bits(p2_wins, [full ^ mask for mask in _player_masks(config, 2)])
    kernels.closure_down(p2_wins, ncells, backend=backend)

    either = p1_wins | p2_wins
    both = p1_wins & p2_wins
    total = 1 << ncells
    draws = total - kernels.popcount(either, ncells)
    doubles = kernels.popcount(both, ncells)
    return PartitionCensus(
        ncells=ncells,
        total=total,
        draws=draws,
        double_wins=doubles,
        first_draw=kernels.first_clear(either, ncells) if draws else None,
        first_double_win=kernels.first_set(both, ncells) if doubles else None,
    )


def verify_no_double_win(
    m: int, p: int, q: int, k: int, backend: str | None = None
) -> bool:
    """True when no total coloring hands both players a witness."""
    census = partition_census(GameConfig(m, p, q, k), backend=backend)
    return census.double_wins == 0


def _find_draw_exhaustive(config, budget, backend) -> SearchOutcome:
    started = time.perf_counter()
    ncells = config.cell_count()
    if budget is not None and (1 << ncells) > budget:
        return SearchOutcome(INCONCLUSIVE, None, 0, time.perf_counter() - started)
    census = partition_census(config, backend=backend)
    elapsed = time.perf_counter() - started
    if census.first_draw is not None:
        return SearchOutcome(DRAW_FOUND, census.first_draw, census.total, elapsed)
    return SearchOutcome(NO_DRAW, None, census.total, elapsed)


def _find_draw_backtracking(config, budget) -> SearchOutcome:
    """DFS over cell assignments, most-constrained cells first.

    Per-mask counters track how many of a winning set's cells carry the
    dangerous color; a branch is pruned the moment some set goes fully
    monochromatic, touching only the masks containing the assigned cell.
    """
    started = time.perf_counter()
    ncells = config.cell_count()
    families = []  # one per player: (sizes, by_cell, counters)
    weight = [0] * ncells
    for player in (1, 2):
        masks = _player_masks(config, player)
        sizes = [mask.bit_count() for mask in masks]
        by_cell: list[list[int]] = [[] for _ in range(ncells)]
        for mi, mask in enumerate(masks):
            rest = mask
            while rest:
                low = rest & -rest
                cell = low.bit_length() - 1
                by_cell[cell].append(mi)
                weight[cell] += 1
                rest ^= low
        families.append((sizes, by_cell, [0] * len(masks)))
    order = sorted(range(ncells), key=lambda c: -weight[c])

    nodes = 0
    exhausted = False

    def dfs(depth: int, ones: int):
        nonlocal nodes, exhausted
        if depth == ncells:
            return ones
        cell = order[depth]
        for player in (1, 2):
            nodes += 1
            if budget is not None and nodes > budget:
                exhausted = True
                return None
            sizes, by_cell, counts = families[player - 1]
            conflict = False
            touched = by_cell[cell]
            applied = 0
            for mi in touched:
                counts[mi] += 1
                applied += 1
                if counts[mi] == sizes[mi]:
                    conflict = True
                    break
            if not conflict:
                got = dfs(depth + 1, ones | (1 << cell) if player == 1 else ones)
                if got is not None:
                    for mi in touched[:applied]:
                        counts[mi] -= 1
                    return got
                if exhausted:
                    conflict = True  # unwind without exploring further
            for mi in touched[:applied]:
                counts[mi] -= 1
            if exhausted:
                return None
        return None

    got = dfs(0, 0)
    elapsed = time.perf_counter() - started
    if exhausted:
        return SearchOutcome(INCONCLUSIVE, None, nodes, elapsed)
    if got is None:
        return SearchOutcome(NO_DRAW, None, nodes, elapsed)
    return SearchOutcome(DRAW_FOUND, got, nodes, elapsed)


def _find_draw_randomized(config, budget, seed) -> SearchOutcome:
    """Independent fair coin per cell, retried up to the trial budget."""
    started = time.perf_counter()
    ncells = config.cell_count()
    rng = random.Random(seed)
    trials = budget if budget is not None else 10_000
    for t in range(1, trials + 1):
        coloring = rng.getrandbits(ncells)
        if is_draw_coloring(coloring, config):
            return SearchOutcome(DRAW_FOUND, coloring, t, time.perf_counter() - started)
    return SearchOutcome(INCONCLUSIVE, None, trials, time.perf_counter() - started)


def find_draw(
    config: GameConfig,
    strategy: str = "exhaustive",
    budget: int | None = None,
    seed: int | None = None,
    backend: str | None = None,
) -> SearchOutcome:
    """Search the total colorings of a board for a draw.

    A found coloring is re-verified before being reported.  Soundness of
    searching final partitions only: passing lets play reach any complete
    partition, and the draw condition constrains nothing else.
    """
    if budget is not None and budget <= 0:
        raise BudgetInvalid(f"budget must be positive, got {budget}")
    if strategy == "exhaustive":
        outcome = _find_draw_exhaustive(config, budget, backend)
    elif strategy == "backtracking":
        outcome = _find_draw_backtracking(config, budget)
    elif strategy == "randomized":
        outcome = _find_draw_randomized(config, budget, seed)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if outcome.found and not is_draw_coloring(outcome.coloring, config):
        raise AssertionError("search produced a coloring that fails re-verification")
    return outcome


def _auto_strategy(config: GameConfig) -> str:
    return "exhaustive" if config.cell_count() <= EXHAUSTIVE_BIT_LIMIT else "randomized"


@dataclass
class R1Result:
    p: int
    q: int
    k: int
    value: int
    exact: bool  # True: value is the triangular Ramsey number;
    #              False: value is a verified lower bound only
    draws: dict[int, int] = field(default_factory=dict)  # m -> witness coloring
    inconclusive_at: int | None = None

    @property
    def status(self) -> str:
        return "exact" if self.exact else "lower_bound"


def compute_r1(
    p: int,
    q: int,
    k: int,
    m_max: int | None = None,
    budget: int | None = None,
    seed: int | None = None,
    backend: str | None = None,
) -> R1Result:
    """Smallest m whose board admits no draw, scanning m upward.

    No-draw is upward closed in m (truncating the last level restricts a
    draw to the smaller board), so the first no-draw m is the value.  When
    a board is too large to decide, the best verified lower bound is
    reported instead.  The value is symmetric in (p, q): swapping colors
    maps draws onto draws, so the arguments are normalized.
    """
    p, q = min(p, q), max(p, q)
    if not 1 <= k <= p:
        raise ValueError("need 1 <= k <= p, q")
    result = R1Result(p=p, q=q, k=k, value=max(p, q), exact=False)
    m = max(p, q)
    while m_max is None or m <= m_max:
        config = GameConfig(m, p, q, k)
        strategy = _auto_strategy(config)
        outcome = find_draw(config, strategy=strategy, budget=budget, seed=seed, backend=backend)
        if outcome.result == NO_DRAW:
            result.value = m
            result.exact = True
            return result
        if outcome.result == DRAW_FOUND:
            result.draws[m] = outcome.coloring
            result.value = m + 1  # a draw at m proves the number exceeds m
            m += 1
            continue
        result.inconclusive_at = m
        return result
    result.inconclusive_at = m
    return result
