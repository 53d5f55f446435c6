"""Hot numeric kernels with numba-jitted and pure-numpy implementations.

Two kernels dominate runtime:

* bitset closure over the space of board colorings (draw / double-win
  sweeps walk all 2^cells partitions at once), and
* the streaming log-domain bracket DP (probabilistic-bound threshold
  sweeps reach n ~ 10^8).

Backend selection: the ``TRIRAMSEY_KERNELS`` environment variable
(``auto`` | ``numba`` | ``numpy``), overridable per call.  ``auto``
uses numba when importable and falls back to numpy otherwise.
"""

from __future__ import annotations

import math
import os

import numpy as np
from scipy.special import gammaln

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

LN2 = math.log(2.0)
NEG_INF = float("-inf")

_BACKENDS = ("auto", "numba", "numpy")


def active_backend(override: str | None = None) -> str:
    choice = override or os.environ.get("TRIRAMSEY_KERNELS", "auto")
    if choice not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {choice!r}, expected one of {_BACKENDS}")
    if choice == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    if choice == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    return choice


# ---------------------------------------------------------------------------
# Bitset closure over coloring space
#
# A bitset over indices X in [0, 2^nbits) is stored as uint64 words,
# bit X living at word X >> 6, bit X & 63.  The upward closure marks every
# superset of a marked index (walk each coordinate once: high half |= low
# half); the downward closure marks every subset (low |= high).
# ---------------------------------------------------------------------------

# PAT[i]: bits whose within-word index has coordinate i clear (low halves).
_PAT = np.array(
    [
        0x5555555555555555,
        0x3333333333333333,
        0x0F0F0F0F0F0F0F0F,
        0x00FF00FF00FF00FF,
        0x0000FFFF0000FFFF,
        0x00000000FFFFFFFF,
    ],
    dtype=np.uint64,
)


def new_bitset(nbits: int) -> np.ndarray:
    if nbits < 0:
        raise ValueError("nbits must be non-negative")
    nwords = max(1, 1 << max(nbits - 6, 0))
    return np.zeros(nwords, dtype=np.uint64)


def set_bits(words: np.ndarray, indices) -> None:
    for x in indices:
        words[x >> 6] |= np.uint64(1) << np.uint64(x & 63)


def _closure_up_numpy(words: np.ndarray, nbits: int) -> None:
    for i in range(min(nbits, 6)):
        s = np.uint64(1 << i)
        words |= (words & _PAT[i]) << s
    for i in range(6, nbits):
        half = 1 << (i - 6)
        view = words.reshape(-1, 2, half)
        view[:, 1, :] |= view[:, 0, :]


def _closure_down_numpy(words: np.ndarray, nbits: int) -> None:
    for i in range(min(nbits, 6)):
        s = np.uint64(1 << i)
        words |= (words >> s) & _PAT[i]
    for i in range(6, nbits):
        half = 1 << (i - 6)
        view = words.reshape(-1, 2, half)
        view[:, 0, :] |= view[:, 1, :]


if HAS_NUMBA:

    @njit(cache=True)
    def _closure_up_numba(words, nbits):  # pragma: no cover - exercised via dispatch
        for i in range(min(nbits, 6)):
            s = np.uint64(1 << i)
            pat = _PAT[i]
            for t in range(words.size):
                x = words[t]
                words[t] = x | ((x & pat) << s)
        for i in range(6, nbits):
            half = 1 << (i - 6)
            step = half * 2
            for base in range(0, words.size, step):
                for t in range(half):
                    words[base + half + t] |= words[base + t]

    @njit(cache=True)
    def _closure_down_numba(words, nbits):  # pragma: no cover
        for i in range(min(nbits, 6)):
            s = np.uint64(1 << i)
            pat = _PAT[i]
            for t in range(words.size):
                x = words[t]
                words[t] = x | ((x >> s) & pat)
        for i in range(6, nbits):
            half = 1 << (i - 6)
            step = half * 2
            for base in range(0, words.size, step):
                for t in range(half):
                    words[base + t] |= words[base + half + t]


def closure_up(words: np.ndarray, nbits: int, backend: str | None = None) -> None:
    """Mark all supersets of currently marked indices, in place."""
    if active_backend(backend) == "numba":
        _closure_up_numba(words, nbits)
    else:
        _closure_up_numpy(words, nbits)


def closure_down(words: np.ndarray, nbits: int, backend: str | None = None) -> None:
    """Mark all subsets of currently marked indices, in place."""
    if active_backend(backend) == "numba":
        _closure_down_numba(words, nbits)
    else:
        _closure_down_numpy(words, nbits)


def _tail_mask(nbits: int) -> np.ndarray:
    """Per-word mask of the valid index range [0, 2^nbits)."""
    nwords = max(1, 1 << max(nbits - 6, 0))
    masks = np.full(nwords, ~np.uint64(0), dtype=np.uint64)
    if nbits < 6:
        masks[0] = np.uint64((1 << (1 << nbits)) - 1)
    return masks


def popcount(words: np.ndarray, nbits: int) -> int:
    return int(np.bitwise_count(words & _tail_mask(nbits)).sum())


def first_set(words: np.ndarray, nbits: int) -> int | None:
    """Smallest marked index, or None."""
    valid = words & _tail_mask(nbits)
    nz = np.flatnonzero(valid)
    if nz.size == 0:
        return None
    w = int(nz[0])
    word = int(valid[w])
    return (w << 6) + (word & -word).bit_length() - 1


def first_clear(words: np.ndarray, nbits: int) -> int | None:
    """Smallest unmarked index, or None when all 2^nbits are marked."""
    inverted = (~words) & _tail_mask(nbits)
    return first_set(inverted, nbits)


# ---------------------------------------------------------------------------
# Streaming log-domain bracket DP
#
# state[j] = log2 B(n, j) for j = 0..K, advanced one n at a time with
# log-sum addition; logc[j] tracks log2 C(n, j) incrementally.
# ---------------------------------------------------------------------------


def _log2_add(a: float, b: float) -> float:
    if a == NEG_INF:
        return b
    if b == NEG_INF:
        return a
    if a < b:
        a, b = b, a
    return a + math.log1p(2.0 ** (b - a)) / LN2


def _fresh_state(K: int) -> tuple[np.ndarray, np.ndarray]:
    state = np.full(K + 1, NEG_INF)
    logc = np.full(K + 1, NEG_INF)
    state[0] = 0.0
    logc[0] = 0.0
    return state, logc


if HAS_NUMBA:

    @njit(cache=True, inline="always")
    def _lae2(a, b):  # pragma: no cover
        if a == -np.inf:
            return b
        if b == -np.inf:
            return a
        if a < b:
            a, b = b, a
        return a + math.log1p(2.0 ** (b - a)) / LN2

    @njit(cache=True)
    def _advance_numba(state, logc, n_from, n_to, K):  # pragma: no cover
        for n in range(n_from + 1, n_to + 1):
            for j in range(K, 0, -1):
                if n == j:
                    logc[j] = 0.0
                elif n > j:
                    logc[j] = logc[j] + math.log2(n) - math.log2(n - j)
            for j in range(K, 0, -1):
                state[j] = _lae2(state[j], logc[j] + state[j - 1])

    @njit(cache=True)
    def _sweep_numba(K, p, q, off_p, off_q, n_limit):  # pragma: no cover
        state = np.full(K + 1, -np.inf)
        logc = np.full(K + 1, -np.inf)
        state[0] = 0.0
        logc[0] = 0.0
        for n in range(1, n_limit + 1):
            for j in range(K, 0, -1):
                if n == j:
                    logc[j] = 0.0
                elif n > j:
                    logc[j] = logc[j] + math.log2(n) - math.log2(n - j)
            for j in range(K, 0, -1):
                state[j] = _lae2(state[j], logc[j] + state[j - 1])
            if n >= q:
                lhs = _lae2(state[p] - off_p, state[q] - off_q)
                if lhs >= 0.0:
                    return n
        return -1


def _advance_numpy(state, logc, n_from, n_to, K, block=1 << 17):
    """Advance the column state from n_from to n_to, chunked.

    Within a block each column is a cumulative log-sum over
    terms[n] = log2 C(n, j) + state_{j-1}(n - 1), vectorized with
    np.logaddexp2.accumulate and per-column carries.
    """
    a = n_from
    while a < n_to:
        b = min(a + block, n_to)
        ns = np.arange(a + 1, b + 1, dtype=np.float64)
        with np.errstate(invalid="ignore"):
            logc_block = [
                (gammaln(ns + 1.0) - gammaln(j + 1.0) - gammaln(ns - j + 1.0)) / LN2
                for j in range(K + 1)
            ]
        for j in range(K + 1):
            logc_block[j][ns < j] = NEG_INF
        cols = [np.zeros(b - a)]
        new_state = np.empty_like(state)
        new_state[0] = 0.0
        for j in range(1, K + 1):
            prev_shifted = np.concatenate(([state[j - 1]], cols[j - 1][:-1]))
            terms = logc_block[j] + prev_shifted
            acc = np.logaddexp2.accumulate(np.concatenate(([state[j]], terms)))[1:]
            cols.append(acc)
            new_state[j] = acc[-1]
        state[:] = new_state
        nj = float(b)
        for j in range(K + 1):
            logc[j] = (
                (gammaln(nj + 1.0) - gammaln(j + 1.0) - gammaln(nj - j + 1.0)) / LN2
                if nj >= j
                else NEG_INF
            )
        a = b
    return cols if n_to > n_from else None


def _sweep_numpy(K, p, q, off_p, off_q, n_limit, block=1 << 17):
    state, logc = _fresh_state(K)
    a = 0
    while a < n_limit:
        b = min(a + block, n_limit)
        ns = np.arange(a + 1, b + 1, dtype=np.float64)
        with np.errstate(invalid="ignore"):
            logc_block = [
                (gammaln(ns + 1.0) - gammaln(j + 1.0) - gammaln(ns - j + 1.0)) / LN2
                for j in range(K + 1)
            ]
        for j in range(K + 1):
            logc_block[j][ns < j] = NEG_INF
        cols = [np.zeros(b - a)]
        for j in range(1, K + 1):
            prev_shifted = np.concatenate(([state[j - 1]], cols[j - 1][:-1]))
            terms = logc_block[j] + prev_shifted
            acc = np.logaddexp2.accumulate(np.concatenate(([state[j]], terms)))[1:]
            cols.append(acc)
        lhs = np.logaddexp2(cols[p] - off_p, cols[q] - off_q)
        lhs[ns < q] = NEG_INF
        hits = np.flatnonzero(lhs >= 0.0)
        if hits.size:
            return a + 1 + int(hits[0])
        for j in range(K + 1):
            state[j] = cols[j][-1]
        a = b
    return -1


def log_bracket_columns(n: int, K: int, backend: str | None = None) -> np.ndarray:
    """log2 B(n, j) for j = 0..K as a float vector."""
    state, logc = _fresh_state(K)
    if n == 0:
        return state
    if active_backend(backend) == "numba":
        _advance_numba(state, logc, 0, n, K)
    else:
        _advance_numpy(state, logc, 0, n, K)
    return state


def theorem9_sweep(
    K: int,
    p: int,
    q: int,
    off_p: float,
    off_q: float,
    n_limit: int,
    backend: str | None = None,
) -> int:
    """First n with log2(B(n,p)/2^off_p + B(n,q)/2^off_q) >= 0, or -1.

    The caller re-verifies the crossing with exact arithmetic; this keeps
    only the float-domain search hot.
    """
    if active_backend(backend) == "numba":
        return int(_sweep_numba(K, p, q, off_p, off_q, n_limit))
    return int(_sweep_numpy(K, p, q, off_p, off_q, n_limit))
