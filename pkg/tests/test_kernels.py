import os
import random
import subprocess
import sys

import numpy as np
import pytest
from oracles import magnus, word_letters

from andreadakis import _kernels
from andreadakis.autf import random_word
from andreadakis.freegroup import Word, parse_word

needs_ext = pytest.mark.skipif(not _kernels.HAVE_EXTENSION, reason="compiled kernels not built")


def _dense_from_sparse(poly, rank, depth):
    out = [np.zeros(rank**d, dtype=object) for d in range(depth + 1)]
    for mono, c in poly.items():
        idx = 0
        for g in mono:
            idx = idx * rank + (g - 1)
        out[len(mono)][idx] = c
    return out


def _same(blocks_a, blocks_b):
    return all(np.array_equal(np.asarray(a, dtype=object), np.asarray(b, dtype=object))
               for a, b in zip(blocks_a, blocks_b))


@pytest.mark.parametrize("backend", ["python", pytest.param("compiled", marks=needs_ext)])
def test_expand_matches_letter_oracle(backend):
    rng = random.Random(103)
    for _ in range(150):
        rank, depth = rng.randint(1, 3), rng.randint(1, 5)
        u = random_word(rank, rng.randint(0, 10), rng)
        blocks = _kernels.expand_blocks(u.syllables, rank, depth, backend=backend)
        assert _same(blocks, _dense_from_sparse(magnus(word_letters(u), depth), rank, depth))


@needs_ext
def test_expand_overflow_falls_back_exactly():
    # exponent series coefficients beyond int64 are handed to the exact kernel
    u = parse_word("x1^1000000 x2^-1000000 x1^3", 2)
    a = _kernels.expand_blocks(u.syllables, 2, 6, backend="compiled")
    b = _kernels.expand_blocks(u.syllables, 2, 6, backend="python")
    assert _same(a, b)
    assert max(abs(int(c)) for c in b[6]) > 2**63
    # every input row fits in int64, the products inside the kernel do not
    u = parse_word("x1^2000 x2^-2000 x1^2000 x2^2000", 2)
    assert _kernels._expand_compiled(list(u.syllables), 2, 6) is None
    assert _same(_kernels.expand_blocks(u.syllables, 2, 6), _kernels.expand_blocks(u.syllables, 2, 6, "python"))


@needs_ext
def test_series_mul_parity_and_overflow():
    rng = np.random.default_rng(107)
    rank, depth = 3, 4
    size = _kernels.dense_size(rank, depth)
    for _ in range(30):
        a = rng.integers(-50, 50, size, dtype=np.int64)
        b = rng.integers(-50, 50, size, dtype=np.int64)
        fast = _kernels.series_mul(a, b, rank, depth, backend="compiled")
        slow = _kernels.series_mul(a, b, rank, depth, backend="python")
        assert np.array_equal(fast.astype(object), slow)
    big = np.full(size, 2**40, dtype=np.int64)
    out = _kernels.series_mul(big, big, rank, depth, backend="compiled")
    assert out.dtype == object and int(out[-1]) > 2**63


@pytest.mark.parametrize("backend", ["python", pytest.param("compiled", marks=needs_ext)])
def test_substitute_and_apply_chain(backend):
    rng = random.Random(109)
    for _ in range(200):
        n = rng.randint(1, 4)
        imgs = [random_word(n, rng.randint(0, 5), rng) for _ in range(n)]
        fwd = [w.syllables for w in imgs]
        bwd = [w.inverse().syllables for w in imgs]
        u = random_word(n, rng.randint(0, 8), rng)
        got = _kernels.substitute(u.syllables, fwd, bwd, backend=backend)
        expected = Word(n)
        for g, e in u.syllables:
            expected = expected * (imgs[g - 1] if e > 0 else imgs[g - 1].inverse()) ** abs(e)
        assert tuple(got) == expected.syllables
        chain = _kernels.apply_chain([u.syllables], [(fwd, bwd), (fwd, bwd)], backend=backend)
        twice = Word(n, tuple(got))
        expected2 = Word(n)
        for g, e in twice.syllables:
            expected2 = expected2 * (imgs[g - 1] if e > 0 else imgs[g - 1].inverse()) ** abs(e)
        assert tuple(chain[0]) == expected2.syllables


@needs_ext
def test_backends_agree_on_substitution():
    rng = random.Random(113)
    for _ in range(200):
        n = rng.randint(2, 4)
        imgs = [random_word(n, rng.randint(0, 6), rng) for _ in range(n)]
        fwd = [w.syllables for w in imgs]
        bwd = [w.inverse().syllables for w in imgs]
        u = random_word(n, rng.randint(0, 12), rng)
        assert tuple(_kernels.substitute(u.syllables, fwd, bwd, "compiled")) == tuple(
            _kernels.substitute(u.syllables, fwd, bwd, "python")
        )


def test_dense_limit_returns_none():
    assert _kernels.expand_blocks(((1, 1),), 50, 5) is None


def test_pure_python_env_selects_fallback():
    env = dict(os.environ, ANDREADAKIS_PURE_PYTHON="1")
    code = "import andreadakis._kernels as k; print(k.HAVE_EXTENSION)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
    if not _kernels.HAVE_EXTENSION:
        with pytest.raises(RuntimeError):
            _kernels.expand_blocks(((1, 1),), 2, 2, backend="compiled")
