import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triramsey.tricore import (
    BracketTable,
    KTooLarge,
    NotTriangularCardinality,
    bracket,
    bracket_log2,
    bracket_poly,
    bracket_sum,
    enumerate_subtriangles,
    full_triangle,
    leq,
    level_of_index,
    parse_triangular_set,
    triangular_number,
    triangular_root,
)


def test_triangular_number_values():
    assert triangular_number(1) == 1
    assert triangular_number(4) == 10
    assert triangular_number(5) == 15
    assert triangular_number(0) == 0


def test_triangular_root():
    assert triangular_root(10) == 4
    assert triangular_root(0) == 0
    assert triangular_root(2) is None
    assert triangular_root(-3) is None


def test_level_of_index():
    assert [level_of_index(i) for i in range(10)] == [1, 2, 2, 3, 3, 3, 4, 4, 4, 4]


def test_parse_triangular_set():
    t = parse_triangular_set({2, 4, 5})
    assert t.level_count == 2
    assert t.levels() == ((2,), (4, 5))
    assert parse_triangular_set(set()).level_count == 0
    with pytest.raises(NotTriangularCardinality):
        parse_triangular_set({1, 2})
    with pytest.raises(ValueError):
        parse_triangular_set([0, 1, 2])


def test_parse_rejects_duplicates():
    with pytest.raises(ValueError):
        parse_triangular_set([3, 3, 4])


def test_truncate():
    w = full_triangle(3)
    assert w.truncate(2).elements == (1, 2, 3)
    with pytest.raises(KTooLarge):
        w.truncate(4)


def test_leq_examples():
    w = full_triangle(3)
    x = parse_triangular_set({2, 4, 5})
    assert leq(x, w)
    assert leq(parse_triangular_set({5}), x)
    # subset holds but the two-element level straddles two host levels
    assert not leq(parse_triangular_set({1, 2, 4}), w)
    assert not leq(parse_triangular_set({7}), w)
    # distinctness: both levels of {4,5,6} would land in the host's row 3
    assert not leq(parse_triangular_set({4, 5, 6}), w)


def _all_triangular_subsets(universe):
    out = []
    for size in (1, 3, 6, 10):
        if size > len(universe):
            break
        for combo in combinations(universe, size):
            out.append(parse_triangular_set(combo))
    out.append(parse_triangular_set(set()))
    return out


def test_leq_is_a_partial_order():
    sets = _all_triangular_subsets(range(1, 11))
    rel = {}
    for i, x in enumerate(sets):
        for j, y in enumerate(sets):
            rel[i, j] = leq(x, y)
    for i, x in enumerate(sets):
        assert rel[i, i], f"not reflexive at {x.elements}"
    for i, x in enumerate(sets):
        for j, y in enumerate(sets):
            if i != j and rel[i, j] and rel[j, i]:
                raise AssertionError(f"antisymmetry fails: {x.elements} vs {y.elements}")
    below = {j: [i for i in range(len(sets)) if rel[i, j]] for j in range(len(sets))}
    above = {j: [k for k in range(len(sets)) if rel[j, k]] for j in range(len(sets))}
    for j in range(len(sets)):
        for i in below[j]:
            for k in above[j]:
                assert rel[i, k], (
                    f"transitivity fails: {sets[i].elements} <= {sets[j].elements} "
                    f"<= {sets[k].elements}"
                )


def test_enumerate_three_level_board():
    subs = enumerate_subtriangles(full_triangle(3), 2)
    expected = [
        (1, 2, 3), (1, 4, 5), (1, 4, 6), (1, 5, 6), (2, 4, 5),
        (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6),
    ]
    assert [s.elements for s in subs] == sorted(expected)


def test_enumerate_edge_cases():
    y = full_triangle(4)
    assert enumerate_subtriangles(y, 4) == [y]
    assert len(enumerate_subtriangles(y, 3)) == 41
    assert enumerate_subtriangles(y, 0)[0].level_count == 0
    with pytest.raises(KTooLarge):
        enumerate_subtriangles(y, 5)


def test_enumerate_results_are_subtriangles():
    for n in range(5):
        y = full_triangle(n)
        for k in range(n + 1):
            subs = enumerate_subtriangles(y, k)
            assert len({s.elements for s in subs}) == len(subs)
            for s in subs:
                assert s.level_count == k
                assert leq(s, y)


def test_bracket_values():
    assert bracket(3, 2) == 10
    assert bracket(4, 3) == 41
    assert bracket(5, 2) == 146
    assert bracket(5, 3) == 501
    for n in range(8):
        assert bracket(n, n) == 1
        assert bracket(n, 0) == 1
    with pytest.raises(KTooLarge):
        bracket(3, 4)


def test_bracket_monotone_in_n():
    for k in range(1, 6):
        values = [bracket(n, k) for n in range(k + 1, 13)]
        assert all(a < b for a, b in zip(values, values[1:]))


def test_bracket_equals_sum_and_enumeration():
    for n in range(7):
        board = full_triangle(n)
        for k in range(n + 1):
            count = len(enumerate_subtriangles(board, k))
            assert bracket(n, k) == bracket_sum(n, k) == count


def test_bracket_sum_anchors():
    for n in range(1, 9):
        assert bracket_sum(n, 1) == triangular_number(n)
        assert bracket_sum(n, n) == 1
    assert bracket_sum(4, 2) == 46
    with pytest.raises(KTooLarge):
        bracket_sum(2, 3)


def test_last_level_peeling_identity():
    # B(k, k-1) = 1 + k * B(k-1, k-2): peeling the last level
    for k in range(2, 9):
        assert bracket(k, k - 1) == 1 + k * bracket(k - 1, k - 2)


def test_fresh_table_isolated():
    table = BracketTable()
    assert bracket(6, 3, table=table) == 3421
    assert (6, 3) in table.known()


def test_table_survives_concurrent_fills():
    import threading

    table = BracketTable()

    def worker(tag):
        for i in range(15):
            bracket(25 + tag + i, 1 + tag % 5, table=table)

    threads = [threading.Thread(target=worker, args=(t,)) for t in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    # every memoized entry matches a single-threaded recomputation
    fresh = BracketTable()
    for (n, k), value in table.known().items():
        assert value == bracket(n, k, table=fresh)


def test_bracket_poly_matches_recursion():
    for k in range(0, 6):
        for n in range(0, 41):
            if k <= n:
                assert bracket_poly(n, k) == bracket(n, k), (n, k)
    assert bracket_poly(3, 7) == 0
    assert bracket_poly(3425, 5) == bracket(3425, 5)


@settings(max_examples=40)
@given(st.integers(min_value=0, max_value=60), st.integers(min_value=0, max_value=8))
def test_bracket_poly_agrees_everywhere(n, k):
    if k <= n:
        assert bracket_poly(n, k) == bracket(n, k)


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_bracket_log2_accuracy(backend):
    assert bracket_log2(3, 2, backend=backend) == pytest.approx(math.log2(10), rel=1e-12)
    assert bracket_log2(7, 7, backend=backend) == 0.0
    assert bracket_log2(5, 3, backend=backend) == pytest.approx(math.log2(501), rel=1e-12)
    for n in range(1, 31):
        for k in range(1, min(n, 5) + 1):
            exact = math.log2(bracket(n, k))
            got = bracket_log2(n, k, backend=backend)
            if exact == 0.0:
                assert got == 0.0
            else:
                assert abs(got - exact) / exact < 1e-9, (n, k)


def test_bracket_log2_rejects_k_above_n():
    with pytest.raises(KTooLarge):
        bracket_log2(3, 5)
