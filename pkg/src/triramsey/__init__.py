"""Triangular sets, the game of Mines, and triangular Ramsey number bounds."""

from .bounds import (
    asymptotic_lower_bound,
    eval_bound_expr,
    m_sequence_expr,
    prob_lower_bound,
    upper_bound_expr,
)
from .engine import (
    GameConfig,
    GameState,
    Variant,
    apply_move,
    legal_moves,
    new_game,
    rotate_position,
    winning_witness,
)
from .search import compute_r1, find_draw, is_draw_coloring, verify_no_double_win
from .solver import best_move, solve, verify_strategy_theorem
from .tricore import (
    BracketTable,
    KTooLarge,
    NotTriangularCardinality,
    TriangularSet,
    bracket,
    bracket_log2,
    bracket_poly,
    bracket_sum,
    enumerate_subtriangles,
    full_triangle,
    leq,
    parse_triangular_set,
    triangular_number,
)

__version__ = "0.1.0"

__all__ = [
    "BracketTable",
    "GameConfig",
    "GameState",
    "KTooLarge",
    "NotTriangularCardinality",
    "TriangularSet",
    "Variant",
    "apply_move",
    "asymptotic_lower_bound",
    "best_move",
    "bracket",
    "bracket_log2",
    "bracket_poly",
    "bracket_sum",
    "compute_r1",
    "enumerate_subtriangles",
    "eval_bound_expr",
    "find_draw",
    "full_triangle",
    "is_draw_coloring",
    "legal_moves",
    "leq",
    "m_sequence_expr",
    "new_game",
    "parse_triangular_set",
    "prob_lower_bound",
    "rotate_position",
    "solve",
    "triangular_number",
    "upper_bound_expr",
    "verify_no_double_win",
    "verify_strategy_theorem",
    "winning_witness",
    "__version__",
]
