import pytest

from triramsey.engine import GameConfig, board_cells
from triramsey.search import (
    DRAW_FOUND,
    INCONCLUSIVE,
    NO_DRAW,
    BudgetInvalid,
    SpaceTooLarge,
    coloring_from_hex,
    coloring_to_hex,
    compute_r1,
    find_draw,
    is_draw_coloring,
    partition_census,
    verify_no_double_win,
)

BACKENDS = ["numpy", "numba"]


def test_is_draw_coloring_examples():
    # every total coloring of the 3-level board has a winner
    config = GameConfig(3, 2, 2, 1)
    assert not any(is_draw_coloring(c, config) for c in range(64))
    # the 2-level board draws when the single winning set is mixed
    assert is_draw_coloring(0b011, GameConfig(2, 2, 2, 1))
    assert not is_draw_coloring(0b111, GameConfig(2, 2, 2, 1))
    assert not is_draw_coloring(0b000, GameConfig(2, 2, 2, 1))


def test_coloring_hex_round_trip():
    assert coloring_to_hex(0xABC, 15) == "0abc"
    assert coloring_from_hex("0abc") == 0xABC


@pytest.mark.parametrize("backend", BACKENDS)
def test_census_smallest_board(backend):
    census = partition_census(GameConfig(3, 2, 2, 1), backend=backend)
    assert census.total == 64
    assert census.draws == 0 and census.double_wins == 0


def test_census_counts_draws_by_hand():
    # 2-level board, targets 2: the only winning set is the whole board,
    # so exactly the two monochromatic colorings are decided
    census = partition_census(GameConfig(2, 2, 2, 1))
    assert census.total == 8 and census.draws == 6 and census.double_wins == 0
    assert census.first_draw == 1


@pytest.mark.parametrize("backend", BACKENDS)
def test_no_double_win_small(backend):
    assert verify_no_double_win(3, 2, 2, 1, backend=backend)
    assert verify_no_double_win(5, 3, 3, 1, backend=backend)


def test_double_win_possible_on_oversized_board():
    # a 4-level board has room for two disjoint 2-level triangles
    census = partition_census(GameConfig(4, 2, 2, 1))
    assert census.double_wins > 0


def test_space_too_large():
    with pytest.raises(SpaceTooLarge):
        partition_census(GameConfig(5, 3, 3, 2))


def test_budget_validation():
    with pytest.raises(BudgetInvalid):
        find_draw(GameConfig(3, 2, 2, 1), budget=0)


def test_find_draw_outcomes():
    no_draw = find_draw(GameConfig(3, 2, 2, 1), "exhaustive")
    assert no_draw.result == NO_DRAW and no_draw.nodes_explored == 64
    found = find_draw(GameConfig(4, 3, 3, 1), "exhaustive")
    assert found.result == DRAW_FOUND
    assert is_draw_coloring(found.coloring, GameConfig(4, 3, 3, 1))


def test_find_draw_budget_inconclusive():
    assert find_draw(GameConfig(4, 3, 3, 1), "exhaustive", budget=16).result == INCONCLUSIVE
    assert find_draw(GameConfig(3, 2, 2, 1), "backtracking", budget=3).result == INCONCLUSIVE
    out = find_draw(GameConfig(3, 2, 2, 1), "randomized", budget=5, seed=1)
    assert out.result == INCONCLUSIVE and out.nodes_explored == 5


def test_strategies_agree_up_to_five_levels():
    for m in range(2, 6):
        for p in range(1, 4):
            for q in range(p, 4):
                if q > m:
                    continue
                config = GameConfig(m, p, q, 1)
                exhaustive = find_draw(config, "exhaustive")
                backtracking = find_draw(config, "backtracking")
                assert exhaustive.result == backtracking.result, config


def test_randomized_draw_search_fair_coin():
    out = find_draw(GameConfig(5, 3, 3, 2), "randomized", budget=5000, seed=7)
    assert out.result == DRAW_FOUND
    assert is_draw_coloring(out.coloring, GameConfig(5, 3, 3, 2))


def test_compute_r1_closed_form_small():
    for (p, q), expected in {
        (1, 1): 1, (1, 2): 2, (2, 2): 3, (2, 3): 4, (3, 3): 5, (1, 4): 4,
    }.items():
        result = compute_r1(p, q, 1)
        assert result.exact and result.value == expected


def test_compute_r1_records_witnesses():
    result = compute_r1(3, 3, 1)
    assert sorted(result.draws) == [3, 4]
    for m, coloring in result.draws.items():
        assert is_draw_coloring(coloring, GameConfig(m, 3, 3, 1))


def test_compute_r1_symmetry_by_color_swap():
    # swapping colors and targets maps draws onto draws, so the value is
    # symmetric in (p, q)
    a = compute_r1(2, 3, 1)
    b = compute_r1(3, 2, 1)
    assert a.value == b.value == 4
    for m, coloring in a.draws.items():
        config = GameConfig(m, 3, 2, 1)
        flipped = ~coloring & ((1 << config.cell_count()) - 1)
        assert is_draw_coloring(flipped, config)


def test_compute_r1_m_max_stops_with_lower_bound():
    result = compute_r1(3, 3, 1, m_max=4)
    assert not result.exact
    assert result.value == 5  # draws found at 3 and 4
    assert result.inconclusive_at == 5


def test_compute_r1_big_cells_fall_back_to_randomized():
    result = compute_r1(3, 3, 2, m_max=5, budget=5000, seed=7)
    assert not result.exact
    assert result.value >= 6  # a draw at 5 is guaranteed findable by coin flips
    assert 5 in result.draws


def test_draw_restriction_monotonicity():
    # truncating the last level of a draw leaves a draw on the smaller board
    result = compute_r1(4, 4, 1)
    assert result.exact and result.value == 7
    for m, coloring in result.draws.items():
        if m == 4:
            continue
        big_index = {cell: i for i, cell in enumerate(board_cells(m, 1))}
        restricted = 0
        for j, cell in enumerate(board_cells(m - 1, 1)):
            if coloring >> big_index[cell] & 1:
                restricted |= 1 << j
        assert is_draw_coloring(restricted, GameConfig(m - 1, 4, 4, 1))
