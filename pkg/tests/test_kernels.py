import numpy as np
import pytest

from triramsey import kernels
from triramsey.tricore import bracket

BACKENDS = ["numpy", "numba"]


def _brute_upward(seeds, nbits):
    out = set()
    for x in range(1 << nbits):
        if any(mask & x == mask for mask in seeds):
            out.add(x)
    return out


def _brute_downward(seeds, nbits):
    out = set()
    for x in range(1 << nbits):
        if any(x & seed == x for seed in seeds):
            out.add(x)
    return out


def _bits_of(words, nbits):
    return {
        x for x in range(1 << nbits)
        if words[x >> 6] >> np.uint64(x & 63) & np.uint64(1)
    }


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("nbits", [1, 3, 5, 6, 7, 9, 12])
def test_closures_match_brute_force(backend, nbits):
    rng = np.random.default_rng(nbits)
    seeds = sorted({int(v) for v in rng.integers(0, 1 << nbits, size=5)})

    words = kernels.new_bitset(nbits)
    kernels.set_bits(words, seeds)
    kernels.closure_up(words, nbits, backend=backend)
    assert _bits_of(words, nbits) == _brute_upward(seeds, nbits)

    words = kernels.new_bitset(nbits)
    kernels.set_bits(words, seeds)
    kernels.closure_down(words, nbits, backend=backend)
    assert _bits_of(words, nbits) == _brute_downward(seeds, nbits)


def test_backends_bit_identical_on_large_space():
    rng = np.random.default_rng(7)
    seeds = [int(v) for v in rng.integers(0, 1 << 20, size=40)]
    outputs = []
    for backend in BACKENDS:
        words = kernels.new_bitset(20)
        kernels.set_bits(words, seeds)
        kernels.closure_up(words, 20, backend=backend)
        outputs.append(words)
    assert np.array_equal(outputs[0], outputs[1])


def test_popcount_and_scans():
    words = kernels.new_bitset(10)
    kernels.set_bits(words, [5, 17, 900])
    assert kernels.popcount(words, 10) == 3
    assert kernels.first_set(words, 10) == 5
    assert kernels.first_clear(words, 10) == 0
    full = kernels.new_bitset(3)
    kernels.set_bits(full, range(8))
    assert kernels.first_clear(full, 3) is None
    assert kernels.popcount(full, 3) == 8


@pytest.mark.parametrize("backend", BACKENDS)
def test_log_bracket_columns(backend):
    cols = kernels.log_bracket_columns(12, 4, backend=backend)
    assert cols[0] == 0.0
    for k in range(1, 5):
        assert cols[k] == pytest.approx(float(np.log2(float(bracket(12, k)))), rel=1e-12)


def test_log_bracket_columns_chunking_consistent():
    # the chunked numpy path must not depend on the block size
    state_small = kernels._fresh_state(4)
    kernels._advance_numpy(*state_small, 0, 1000, 4, block=37)
    state_big = kernels._fresh_state(4)
    kernels._advance_numpy(*state_big, 0, 1000, 4, block=1 << 14)
    assert np.allclose(state_small[0], state_big[0], rtol=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
def test_theorem9_sweep_small(backend):
    # threshold 2^10 per term, p = q = 3: crossing where 2*B(m,3) >= 2^10
    first_fail = kernels.theorem9_sweep(3, 3, 3, 10.0, 10.0, 100, backend=backend)
    assert first_fail == 6  # B(5,3) = 501 holds, B(6,3) = 3421 fails
    assert kernels.theorem9_sweep(3, 3, 3, 1e9, 1e9, 50, backend=backend) == -1


def test_active_backend_dispatch(monkeypatch):
    assert kernels.active_backend("numpy") == "numpy"
    monkeypatch.setenv("TRIRAMSEY_KERNELS", "numpy")
    assert kernels.active_backend() == "numpy"
    monkeypatch.setenv("TRIRAMSEY_KERNELS", "bogus")
    with pytest.raises(ValueError):
        kernels.active_backend()
    monkeypatch.delenv("TRIRAMSEY_KERNELS")
    assert kernels.active_backend() in ("numpy", "numba")
