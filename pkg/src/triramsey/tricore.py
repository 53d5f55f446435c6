"""Triangular numbers, triangular sets, the sub-triangle order, and bracket coefficients.

A set of naturals is *triangular* when its cardinality is a triangular
number T_n = n(n+1)/2; its increasing enumeration splits into levels of
sizes 1, 2, ..., n.  The bracket coefficient counts k-level sub-triangles
of an n-level triangle and obeys

    B(n, k) = B(n-1, k) + C(n, k) * B(n-1, k-1),   B(n, 0) = B(n, n) = 1.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable


class NotTriangularCardinality(ValueError):
    """Raised when a set's size is not a triangular number."""


class KTooLarge(ValueError):
    """Raised when asked for more levels than a triangle has."""


def triangular_number(n: int) -> int:
    """T_n = n(n+1)/2, the number of points in an n-level triangle."""
    if n < 0:
        raise ValueError(f"level count must be non-negative, got {n}")
    return n * (n + 1) // 2


def triangular_root(size: int) -> int | None:
    """Return n with T_n == size, or None when size is not triangular."""
    if size < 0:
        return None
    n = (math.isqrt(8 * size + 1) - 1) // 2
    return n if n * (n + 1) // 2 == size else None


def level_of_index(i: int) -> int:
    """1-based level containing 0-based index ``i`` of a triangular layout."""
    lvl = (math.isqrt(8 * i + 9) - 1) // 2
    while triangular_number(lvl) <= i:
        lvl += 1
    while lvl > 1 and triangular_number(lvl - 1) > i:
        lvl -= 1
    return lvl


@dataclass(frozen=True)
class TriangularSet:
    """A triangular set: strictly increasing elements plus its level count.

    Level i (1-based) is the slice of elements from index T_{i-1} to T_i.
    """

    elements: tuple[int, ...]
    level_count: int

    def __post_init__(self):
        if len(self.elements) != triangular_number(self.level_count):
            raise NotTriangularCardinality(
                f"{len(self.elements)} elements cannot fill {self.level_count} levels"
            )

    def levels(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            self.elements[triangular_number(i - 1):triangular_number(i)]
            for i in range(1, self.level_count + 1)
        )

    def level(self, i: int) -> tuple[int, ...]:
        if not 1 <= i <= self.level_count:
            raise IndexError(f"level {i} out of range 1..{self.level_count}")
        return self.elements[triangular_number(i - 1):triangular_number(i)]

    def truncate(self, levels: int) -> "TriangularSet":
        """The sub-triangle formed by the first ``levels`` levels."""
        if levels > self.level_count:
            raise KTooLarge(f"cannot keep {levels} of {self.level_count} levels")
        return TriangularSet(self.elements[:triangular_number(levels)], levels)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements


EMPTY_TRIANGLE = TriangularSet((), 0)


def parse_triangular_set(values: Iterable[int]) -> TriangularSet:
    """Validate a collection of naturals as a triangular set.

    Raises NotTriangularCardinality when the size is not triangular, and
    ValueError for duplicates or non-positive entries.
    """
    elems = tuple(sorted(values))
    if any(e < 1 for e in elems):
        raise ValueError("elements must be naturals (>= 1)")
    if any(a == b for a, b in zip(elems, elems[1:])):
        raise ValueError("elements must be distinct")
    n = triangular_root(len(elems))
    if n is None:
        raise NotTriangularCardinality(f"{len(elems)} is not a triangular number")
    return TriangularSet(elems, n)


def full_triangle(n: int) -> TriangularSet:
    """The canonical n-level triangular set {1, ..., T_n}."""
    return TriangularSet(tuple(range(1, triangular_number(n) + 1)), n)


def leq(x: TriangularSet, y: TriangularSet) -> bool:
    """Sub-triangle order: x subset of y with each level of x inside a
    single level of y, distinct levels mapping to distinct levels."""
    pos = {e: i for i, e in enumerate(y.elements)}
    used_levels = set()
    for lv in x.levels():
        try:
            host = {level_of_index(pos[e]) for e in lv}
        except KeyError:
            return False
        if len(host) != 1:
            return False
        h = host.pop()
        if h in used_levels:
            return False
        used_levels.add(h)
    return True


def enumerate_subtriangles(y: TriangularSet, k: int) -> list[TriangularSet]:
    """All k-level sub-triangles of y, sorted lexicographically by elements.

    Enumeration is positional: pick host levels i_1 < ... < i_k of y, then
    j elements from host level i_j for the j-th level of the sub-triangle.
    """
    n = y.level_count
    if k > n:
        raise KTooLarge(f"k={k} exceeds level count {n}")
    if k == 0:
        return [EMPTY_TRIANGLE]
    host_levels = y.levels()
    found: list[TriangularSet] = []
    for idx in combinations(range(1, n + 1), k):
        pools = [combinations(host_levels[i - 1], j) for j, i in enumerate(idx, start=1)]
        for picks in product(*pools):
            elems = tuple(e for pick in picks for e in pick)
            found.append(TriangularSet(elems, k))
    found.sort(key=lambda t: t.elements)
    return found


class BracketTable:
    """Memoized exact (arbitrary precision) and log-domain bracket values.

    Reads are lock-free; the fill path is serialized so the table can be
    shared across worker threads.
    """

    def __init__(self):
        self._exact: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()

    def exact(self, n: int, k: int) -> int:
        if k < 0 or n < 0:
            raise ValueError("bracket arguments must be non-negative")
        if k > n:
            raise KTooLarge(f"k={k} exceeds n={n}")
        if k == 0 or k == n:
            return 1
        got = self._exact.get((n, k))
        if got is not None:
            return got
        with self._lock:
            self._fill(n, k)
            return self._exact[(n, k)]

    def _fill(self, n: int, k: int) -> None:
        memo = self._exact
        for nn in range(2, n + 1):
            top = min(nn - 1, k)
            for kk in range(1, top + 1):
                if (nn, kk) in memo:
                    continue
                left = 1 if kk == nn - 1 else memo[(nn - 1, kk)]
                below = 1 if kk - 1 == 0 or kk - 1 == nn - 1 else memo[(nn - 1, kk - 1)]
                memo[(nn, kk)] = left + math.comb(nn, kk) * below

    def known(self) -> dict[tuple[int, int], int]:
        """Snapshot of memoized entries (for cache persistence)."""
        return dict(self._exact)

    def preload(self, entries: dict[tuple[int, int], int]) -> None:
        """Adopt previously computed entries, e.g. from the JSON cache."""
        with self._lock:
            self._exact.update(entries)


DEFAULT_TABLE = BracketTable()


def bracket(n: int, k: int, table: BracketTable = DEFAULT_TABLE) -> int:
    """Exact bracket coefficient by the recursion, memoized."""
    return table.exact(n, k)


def bracket_sum(n: int, k: int) -> int:
    """Bracket coefficient as the explicit sum over increasing level indices.

    Computes sum over 0 < i_1 < ... < i_k <= n of prod_j C(i_j, j); an
    independent route used to cross-check the recursion.  Extended to
    k = 0 and k = n, where the sum degenerates to 1.
    """
    if k > n:
        raise KTooLarge(f"k={k} exceeds n={n}")
    if k == 0 or k == n:
        return 1
    total = 0
    for idx in combinations(range(1, n + 1), k):
        term = 1
        for j, i in enumerate(idx, start=1):
            term *= math.comb(i, j)
        total += term
    return total


# For fixed k the bracket is a polynomial in n of degree T_{k+1} - 1 on
# n >= k, so Newton forward differences over integer base points evaluate
# it exactly for arbitrarily large n without running the recursion there.
_NEWTON_CACHE: dict[int, tuple[int, ...]] = {}
_NEWTON_LOCK = threading.Lock()


def _newton_coeffs(k: int) -> tuple[int, ...]:
    got = _NEWTON_CACHE.get(k)
    if got is not None:
        return got
    with _NEWTON_LOCK:
        got = _NEWTON_CACHE.get(k)
        if got is not None:
            return got
        degree = triangular_number(k + 1) - 1
        vals = [bracket(n, k) for n in range(k, k + degree + 3)]
        coeffs = []
        row = vals
        for _ in range(degree + 1):
            coeffs.append(row[0])
            row = [b - a for a, b in zip(row, row[1:])]
        if any(row[:2]):
            raise AssertionError(f"bracket column k={k} is not degree-{degree}")
        out = tuple(coeffs)
        _NEWTON_CACHE[k] = out
        return out


def bracket_poly(n: int, k: int) -> int:
    """Exact bracket value for arbitrary n >= 0 via finite differences.

    O(T_{k+1}) big-integer operations per call; practical for small k and
    astronomically large n (threshold searches, bound evaluation).
    """
    if k < 0 or n < 0:
        raise ValueError("bracket arguments must be non-negative")
    if k > n:
        return 0
    if k == 0 or k == n:
        return 1
    coeffs = _newton_coeffs(k)
    total = 0
    binom = 1  # C(n - k, j), updated incrementally
    x = n - k
    for j, c in enumerate(coeffs):
        if j > 0:
            binom = binom * (x - j + 1) // j
        if binom == 0:
            break
        total += c * binom
    return total


def bracket_log2(n: int, k: int, backend: str | None = None) -> float:
    """Base-2 logarithm of the bracket by a streaming log-domain DP over n.

    Keeps k+1 columns; suitable for n far beyond exact-arithmetic reach.
    """
    if k > n:
        raise KTooLarge(f"k={k} exceeds n={n}")
    if k == 0 or k == n:
        return 0.0
    from . import kernels

    cols = kernels.log_bracket_columns(n, k, backend=backend)
    return float(cols[k])
