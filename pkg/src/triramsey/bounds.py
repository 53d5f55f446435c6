"""Lower bounds via random colorings, asymptotic estimates, and symbolic
upper bounds built from iterated classical Ramsey numbers.

The probabilistic bound: if B(m,p)/2^B(p,k) + B(m,q)/2^B(q,k) < 1 then a
random coloring leaves a draw with positive probability, so the triangular
Ramsey number exceeds m.  The threshold search runs in exact big-integer
arithmetic when the exponent is small, otherwise as a streaming log-domain
sweep whose crossing is re-verified exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .tricore import bracket, bracket_poly, triangular_number

# Values saturate at 2^CAP_BITS: anything larger is reported as HUGE for a
# lower interval end (still a valid lower bound) or unbounded for an upper.
CAP_BITS = 1 << 16
HUGE = 1 << CAP_BITS


class InvalidParams(ValueError):
    pass


class MalformedExpr(ValueError):
    pass


def _bracket_any(n: int, k: int) -> int:
    """Exact bracket for arbitrary n, saturating at HUGE."""
    if n >= HUGE and k >= 1:
        return HUGE
    value = bracket(n, k) if n <= 4096 else bracket_poly(n, k)
    return value if value.bit_length() <= CAP_BITS else HUGE


# ---------------------------------------------------------------------------
# Classical Ramsey number table
# ---------------------------------------------------------------------------


def int_token(x: int | None) -> str | None:
    """Decimal string for moderate integers, a power-of-two marker for the
    saturated ones (str() refuses huge conversions anyway)."""
    if x is None:
        return None
    return str(x) if x.bit_length() <= 256 else f"~2^{x.bit_length() - 1}"


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int | None  # None = unbounded above

    @property
    def exact(self) -> bool:
        return self.hi is not None and self.lo == self.hi

    def as_json(self) -> dict:
        return {"lo": int_token(self.lo), "hi": int_token(self.hi)}

    def render(self) -> str:
        if self.hi is None:
            return f"[{int_token(self.lo)}, unbounded)"
        return f"[{int_token(self.lo)}, {int_token(self.hi)}]"


class ClassicalRamseyTable:
    """Known bounds for classical Ramsey numbers R(n, k).

    Pair (k = 2) entries carry published exact values / ranges; everything
    else falls back to the generic 2^(n/2) <= R(n) <= 4^(n-1) window for
    pairs and the trivial floor R(n, k) >= n for hypergraphs (no exact
    hypergraph entries ship: no published values to seed them from).
    """

    _PAIR_ENTRIES: dict[int, tuple[int, int]] = {
        1: (1, 1),
        2: (2, 2),
        3: (6, 6),
        4: (18, 18),
        5: (43, 49),
        6: (102, 165),
        7: (205, 540),
    }

    def __init__(self, extra: dict[tuple[int, int], tuple[int, int | None]] | None = None):
        self._entries: dict[tuple[int, int], tuple[int, int | None]] = {
            (n, 2): bounds for n, bounds in self._PAIR_ENTRIES.items()
        }
        if extra:
            self._entries.update(extra)

    def lookup(self, n: int, k: int) -> Interval:
        if n <= max(2, k):
            return Interval(max(n, 1), max(n, 1))  # vacuous and single-edge cases
        entry = self._entries.get((n, k))
        if entry is not None:
            return Interval(entry[0], entry[1])
        if k == 2:
            return Interval(self._pair_lo(n), self._pair_hi(n))
        return Interval(n, None)

    def lo_at(self, n: int, k: int) -> int:
        return self.lookup(n, k).lo

    def hi_at(self, n: int | None, k: int) -> int | None:
        if n is None:
            return None
        return self.lookup(n, k).hi

    @staticmethod
    def _pair_lo(n: int) -> int:
        if n // 2 >= CAP_BITS:
            return HUGE
        root = math.isqrt(1 << n)  # floor(2^(n/2))
        return max(n, root)

    @staticmethod
    def _pair_hi(n: int) -> int | None:
        if 2 * (n - 1) > CAP_BITS:
            return None
        return 1 << (2 * (n - 1))  # 4^(n-1)


DEFAULT_CLASSICAL = ClassicalRamseyTable()


# ---------------------------------------------------------------------------
# Symbolic bound expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class ClassicalR:
    arg: "BoundExpr"
    k: int


@dataclass(frozen=True)
class IteratedR:
    times: "BoundExpr"
    base: "BoundExpr"
    k: int


@dataclass(frozen=True)
class BracketOf:
    arg: "BoundExpr"
    k: int


@dataclass(frozen=True)
class TriR1:
    """Unresolved diagonal triangular Ramsey reference R1(arg, arg, k)."""

    arg: "BoundExpr"
    k: int


@dataclass(frozen=True)
class TwoNMinusOne:
    """Closed form of the diagonal k = 1 value: R1(x, x, 1) = 2x - 1."""

    arg: "BoundExpr"


@dataclass(frozen=True)
class MSeq:
    """The upper-bound sequence member M(n, k); expands on evaluation and
    renders compactly."""

    n: int
    k: int


BoundExpr = Const | ClassicalR | IteratedR | BracketOf | TriR1 | TwoNMinusOne | MSeq


def bracket_of(arg: BoundExpr, k: int) -> BoundExpr:
    if isinstance(arg, Const):
        return Const(_bracket_any(arg.value, k))
    return BracketOf(arg, k)


def two_n_minus_one(arg: BoundExpr) -> BoundExpr:
    if isinstance(arg, Const):
        return Const(2 * arg.value - 1)
    return TwoNMinusOne(arg)


def render(expr: BoundExpr) -> str:
    if isinstance(expr, Const):
        return str(expr.value)
    if isinstance(expr, ClassicalR):
        return f"R({render(expr.arg)},{expr.k})"
    if isinstance(expr, IteratedR):
        base = f"({render(expr.base)},{expr.k})"
        if isinstance(expr.times, Const):
            return f"R^{expr.times.value}{base}"
        if isinstance(expr.times, BracketOf):
            return f"R^{render(expr.times)}{base}"
        return f"R^[{render(expr.times)}]{base}"
    if isinstance(expr, BracketOf):
        return f"[{render(expr.arg)} brack {expr.k}]"
    if isinstance(expr, TriR1):
        return f"R1({render(expr.arg)},{expr.k})"
    if isinstance(expr, TwoNMinusOne):
        return f"(2*{render(expr.arg)}-1)"
    if isinstance(expr, MSeq):
        return f"M_{{{expr.n},{expr.k}}}"
    raise MalformedExpr(f"unknown expression node {expr!r}")


def m_sequence_expr(n: int, k: int) -> BoundExpr:
    """Symbolic expansion of the upper-bound sequence:

        M(n, 1) = n,   M(k, k) = k,
        M(n, k) = R^[ R1(M(n-1, k), k-1)  brack  k-1 ](n, k)   for n > k > 1,

    where the inner diagonal reference collapses to the closed form
    2x - 1 when k - 1 = 1 and stays a symbolic reference otherwise.
    """
    if not (n >= k >= 1):
        raise InvalidParams(f"need n >= k >= 1, got n={n} k={k}")
    if k == 1 or n == k:
        return Const(n)
    prev = m_sequence_expr(n - 1, k)
    inner = two_n_minus_one(prev) if k - 1 == 1 else TriR1(prev, k - 1)
    return IteratedR(bracket_of(inner, k - 1), Const(n), k)


def upper_bound_expr(p: int, q: int, k: int) -> BoundExpr:
    """Symbolic upper bound for the triangular Ramsey number of (p, q, k).

    Exact closed forms cover k = 1 (p + q - 1) and p = k (the value is q).
    For q = k + 1 the tighter single-step form applies, with the inner
    diagonal reference replaced by its own upper bound when it has no
    closed form; otherwise the off-diagonal case reduces to the diagonal
    at q (a draw avoiding q-triangles for one player avoids p-triangles
    a fortiori), giving M(2q - 1, k).
    """
    if not (1 <= k <= p <= q):
        raise InvalidParams(f"need 1 <= k <= p <= q, got p={p} q={q} k={k}")
    if k == 1:
        return Const(p + q - 1)
    if p == k:
        return Const(q)
    if q == k + 1:  # then p == q == k + 1
        inner = Const(2 * k + 1) if k - 1 == 1 else MSeq(2 * k + 1, k - 1)
        return IteratedR(bracket_of(inner, k - 1), Const(k + 1), k)
    return MSeq(2 * q - 1, k)


_UNROLL_LIMIT = 64


def eval_bound_expr(
    expr: BoundExpr, table: ClassicalRamseyTable = DEFAULT_CLASSICAL
) -> Interval:
    """Interval evaluation, bottom-up; every rule weakens soundly.

    Iterated Ramsey applications unroll when the iteration count is exact
    and small, otherwise the result keeps the best finite lower end and
    becomes unbounded above.  Lower ends saturate at 2^CAP_BITS.
    """
    if isinstance(expr, Const):
        return Interval(expr.value, expr.value)
    if isinstance(expr, TwoNMinusOne):
        inner = eval_bound_expr(expr.arg, table)
        return Interval(2 * inner.lo - 1, None if inner.hi is None else 2 * inner.hi - 1)
    if isinstance(expr, BracketOf):
        inner = eval_bound_expr(expr.arg, table)
        hi = None if inner.hi is None else _bracket_any(inner.hi, expr.k)
        return Interval(_bracket_any(inner.lo, expr.k), hi)
    if isinstance(expr, TriR1):
        inner = eval_bound_expr(expr.arg, table)
        return Interval(inner.lo, None)  # the value is at least its target size
    if isinstance(expr, MSeq):
        return eval_bound_expr(m_sequence_expr(expr.n, expr.k), table)
    if isinstance(expr, ClassicalR):
        inner = eval_bound_expr(expr.arg, table)
        return Interval(table.lo_at(inner.lo, expr.k), table.hi_at(inner.hi, expr.k))
    if isinstance(expr, IteratedR):
        times = eval_bound_expr(expr.times, table)
        base = eval_bound_expr(expr.base, table)
        if times.exact and times.lo <= _UNROLL_LIMIT:
            lo, hi = base.lo, base.hi
            for _ in range(times.lo):
                lo = table.lo_at(lo, expr.k)
                hi = table.hi_at(hi, expr.k)
            return Interval(lo, hi)
        lo = base.lo
        for _ in range(min(times.lo, _UNROLL_LIMIT)):
            lo = table.lo_at(lo, expr.k)
        return Interval(lo, None)
    raise MalformedExpr(f"unknown expression node {expr!r}")


# ---------------------------------------------------------------------------
# Probabilistic lower bound (exact and log-domain)
# ---------------------------------------------------------------------------

EXACT_EXPONENT_LIMIT = 256
_GUARD_BITS = 1e-6  # sweep results this close to the threshold get walked


@dataclass(frozen=True)
class ProbBound:
    p: int
    q: int
    k: int
    m_star: int  # largest m satisfying the expectation inequality
    bound: int  # = m_star + 1, a verified lower bound on the Ramsey value
    method: str  # exact | log_sweep | trivial
    exponent: str  # statement | proof


def _holds_exact(m: int, p: int, q: int, a: int, b: int, adjust: int) -> bool:
    lhs = _bracket_any(m, p) * (1 << (b - a)) + _bracket_any(m, q)
    return lhs < (1 << (b - adjust))


def _exact_scan(p: int, q: int, k: int, a: int, b: int, adjust: int) -> int:
    """Largest m satisfying the inequality, by an incremental column DP."""
    cols = [1] + [0] * q  # exact bracket values of the current m, per level count
    m = 0
    last_good = None
    while True:
        m += 1
        for j in range(q, 0, -1):
            cols[j] = cols[j] + math.comb(m, j) * cols[j - 1]
        if m < q:
            continue
        lhs = cols[p] * (1 << (b - a)) + cols[q]
        if lhs < (1 << (b - adjust)):
            last_good = m
        elif last_good is not None:
            return last_good
        elif m > q:
            return q - 1  # fails from the start: only the trivial floor remains
        else:
            return q - 1


def prob_lower_bound(
    p: int,
    q: int,
    k: int,
    exponent: str = "statement",
    budget: int = 200_000_000,
    backend: str | None = None,
    method: str = "auto",
) -> ProbBound:
    """Largest m with B(m,p)*2^-B(p,k) + B(m,q)*2^-B(q,k) below one.

    ``exponent`` selects the published inequality ("statement") or the
    variant with both terms doubled ("proof"); both are exposed since the
    two derivations disagree by that factor.  Exact arithmetic decides the
    threshold whenever the exponent B(q,k) is small ("auto"), otherwise a
    log-domain sweep locates the crossing and exact evaluation pins it
    down; ``method`` forces one route.
    """
    if not (1 <= k <= p <= q):
        raise InvalidParams(f"need 1 <= k <= p <= q, got p={p} q={q} k={k}")
    if exponent not in ("statement", "proof"):
        raise InvalidParams(f"unknown exponent variant {exponent!r}")
    if method not in ("auto", "exact", "log_sweep"):
        raise InvalidParams(f"unknown method {method!r}")
    adjust = 0 if exponent == "statement" else 1
    a, b = bracket(p, k), bracket(q, k)

    if not _holds_exact(q, p, q, a, b, adjust):
        # even the smallest board violates the inequality; only the trivial
        # floor (the value is at least q) remains
        return ProbBound(p, q, k, q - 1, q, "trivial", exponent)

    if method == "exact" or (method == "auto" and b <= EXACT_EXPONENT_LIMIT):
        m_star = _exact_scan(p, q, k, a, b, adjust)
        return ProbBound(p, q, k, m_star, m_star + 1, "exact", exponent)

    first_fail = kernels.theorem9_sweep(
        q, p, q, float(a + adjust), float(b + adjust), budget, backend=backend
    )
    if first_fail < 0:
        raise RuntimeError(f"no crossing within the sweep budget {budget}")
    # exact walk: the float sweep can miss the boundary by a step or two
    while first_fail > q and not _holds_exact(first_fail - 1, p, q, a, b, adjust):
        first_fail -= 1
    while _holds_exact(first_fail, p, q, a, b, adjust):
        first_fail += 1
    m_star = first_fail - 1
    return ProbBound(p, q, k, m_star, m_star + 1, "log_sweep", exponent)


def asymptotic_lower_bound_log2(n: int, k: int) -> float:
    """log2 of (asymptotic lower bound + 1):
    (2 pi T)^(1/(4T)) * sqrt(2T/e) * 2^((n^k - k^k) / (2 k^k T)) with T = T_n.
    """
    if not (1 <= k <= n):
        raise InvalidParams(f"need 1 <= k <= n, got n={n} k={k}")
    t = triangular_number(n)
    head = math.log2(2 * math.pi * t) / (4 * t)
    body = 0.5 * math.log2(2 * t / math.e)
    tail = float(Fraction(n**k - k**k, 2 * k**k * t))
    return head + body + tail


def asymptotic_lower_bound(n: int, k: int) -> float:
    """The closed-form lower bound; returns inf when it exceeds float range."""
    log_value = asymptotic_lower_bound_log2(n, k)
    if log_value >= 1024:
        return math.inf
    return 2.0**log_value - 1.0


# ---------------------------------------------------------------------------
# Summary table reproduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsRow:
    p: int
    q: int
    k: int
    value: int | None  # exact Ramsey value when known
    lower: int | float | None
    lower_source: str
    upper_expr: str | None
    upper_interval: Interval | None
    upper_source: str | None


# (p, q, k) rows of the published summary; the final three use the
# asymptotic estimate for the lower bound.
FIGURE_ROWS: tuple[tuple[int, int, int], ...] = (
    (1, 2, 1),
    (2, 2, 1),
    (2, 3, 1),
    (3, 3, 1),
    (2, 2, 2),
    (2, 3, 2),
    (3, 3, 2),
    (3, 4, 2),
    (4, 4, 2),
    (3, 3, 3),
    (3, 4, 3),
    (4, 4, 3),
    (4, 5, 3),
    (5, 5, 3),
    (4, 4, 4),
    (4, 5, 4),
    (5, 5, 4),
    (30, 30, 20),
    (35, 35, 20),
    (40, 40, 20),
)

_ASYMPTOTIC_ROWS = {(30, 30, 20), (35, 35, 20), (40, 40, 20)}


def bounds_row(
    p: int,
    q: int,
    k: int,
    table: ClassicalRamseyTable = DEFAULT_CLASSICAL,
    exponent: str = "statement",
    backend: str | None = None,
) -> BoundsRow:
    """One summary-table row.

    Off-diagonal probabilistic entries are computed at the diagonal
    min(p, q) as the published table does (sound: the value is monotone in
    each target size); the direct off-diagonal inequality can only
    strengthen them.
    """
    if not (1 <= k <= p <= q):
        raise InvalidParams(f"need 1 <= k <= p <= q, got p={p} q={q} k={k}")
    expr = upper_bound_expr(p, q, k)
    upper = eval_bound_expr(expr, table)
    if k == 1:
        value = p + q - 1
        return BoundsRow(p, q, k, value, value, "closed-form", render(expr), upper, "closed-form")
    if p == k:
        return BoundsRow(p, q, k, q, q, "trivial", render(expr), upper, "trivial")
    if (p, q, k) in _ASYMPTOTIC_ROWS:
        lower = asymptotic_lower_bound(min(p, q), k)
        source = "asymptotic"
    else:
        lower = prob_lower_bound(min(p, q), min(p, q), k, exponent=exponent, backend=backend).bound
        source = "probabilistic" if p == q else "probabilistic (diagonal)"
    return BoundsRow(p, q, k, None, lower, source, render(expr), upper, "iterated-ramsey")


def bounds_table(
    include_slow: bool = True,
    table: ClassicalRamseyTable = DEFAULT_CLASSICAL,
    exponent: str = "statement",
    backend: str | None = None,
) -> list[BoundsRow]:
    """The full summary table; (5, 5, 3) needs the big sweep and can be
    skipped with include_slow=False."""
    rows = []
    for p, q, k in FIGURE_ROWS:
        if not include_slow and (p, q, k) == (5, 5, 3):
            continue
        rows.append(bounds_row(p, q, k, table=table, exponent=exponent, backend=backend))
    return rows
