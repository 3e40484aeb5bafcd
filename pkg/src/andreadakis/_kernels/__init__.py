"""Hot kernels with a compiled fast path and a pure-Python fallback.

Two kernels: the dense Magnus expansion of a word and free-group substitution.
The compiled extension is used when it imports and ``ANDREADAKIS_PURE_PYTHON``
is unset.  Results are identical either way: the compiled kernel works in
int64 and hands the word back to the exact Python kernel on overflow.
"""

import os

import numpy as np

from . import magnus_py, words_py

try:
    if os.environ.get("ANDREADAKIS_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import magnus_ext, words_ext
except ImportError:
    magnus_ext = words_ext = None

HAVE_EXTENSION = magnus_ext is not None
DENSE_LIMIT = 4_000_000
_INT64_MAX = 2**63 - 1


def dense_size(rank: int, depth: int) -> int:
    return sum(rank**d for d in range(depth + 1))


def _expand_compiled(syllables, rank, depth):
    if depth > 62:
        return None
    rows = [magnus_py.series_coefficients(e, depth) for _, e in syllables]
    if any(abs(c) > _INT64_MAX for row in rows for c in row):
        return None
    coeffs = np.array(rows, dtype=np.int64).reshape(len(rows), depth + 1)
    gens = np.array([g for g, _ in syllables], dtype=np.int64)
    buf = np.zeros(dense_size(rank, depth), dtype=np.int64)
    if magnus_ext.expand_into(buf, gens, coeffs, rank, depth):
        return None
    blocks, off = [], 0
    for d in range(depth + 1):
        blocks.append(buf[off : off + rank**d])
        off += rank**d
    return blocks


def expand_blocks(syllables, rank: int, depth: int, backend: str = "auto"):
    """Dense degree blocks of the Magnus expansion of a syllable sequence.

    ``backend`` is ``"auto"``, ``"compiled"`` or ``"python"``.  Returns
    ``None`` when dense storage would exceed ``DENSE_LIMIT`` entries.
    """
    if dense_size(rank, depth) > DENSE_LIMIT:
        return None
    syllables = list(syllables)
    if backend == "compiled" and not HAVE_EXTENSION:
        raise RuntimeError("compiled kernel is not available")
    if backend in ("auto", "compiled") and HAVE_EXTENSION:
        blocks = _expand_compiled(syllables, rank, depth)
        if blocks is not None:
            return blocks
    return magnus_py.expand_blocks(syllables, rank, depth)


def expand_sparse(syllables, depth: int):
    return magnus_py.expand_sparse(syllables, depth)


def substitute(syllables, forward, backward, backend: str = "auto"):
    """Reduced syllables of ``w`` with ``x_i`` replaced by ``forward[i-1]``.

    Images are syllable tuples; ``backward[i-1]`` is the inverse of ``forward[i-1]``.
    """
    if backend == "compiled" and not HAVE_EXTENSION:
        raise RuntimeError("compiled kernel is not available")
    if backend in ("auto", "compiled") and HAVE_EXTENSION:
        return words_ext.substitute(tuple(syllables), list(forward), list(backward))
    return words_py.substitute(syllables, forward, backward)


def series_mul(a: np.ndarray, b: np.ndarray, rank: int, depth: int, backend: str = "auto"):
    """Product of flat dense truncated series.

    int64 inputs take the compiled path; an overflow, or any object-dtype
    input, switches to exact Python integers.
    """
    if backend == "compiled" and not HAVE_EXTENSION:
        raise RuntimeError("compiled kernel is not available")
    if (
        backend in ("auto", "compiled")
        and HAVE_EXTENSION
        and a.dtype == np.int64
        and b.dtype == np.int64
        and depth <= 62
    ):
        out = np.zeros(a.shape[0], dtype=np.int64)
        if not magnus_ext.series_mul_into(out, a, b, rank, depth):
            return out
    return magnus_py.series_mul(a.astype(object), b.astype(object), rank, depth)


def apply_chain(images, steps, backend: str = "auto"):
    """Map syllable tuples through a sequence of substitutions, in order."""
    if backend == "compiled" and not HAVE_EXTENSION:
        raise RuntimeError("compiled kernel is not available")
    if backend in ("auto", "compiled") and HAVE_EXTENSION:
        return words_ext.apply_chain(list(images), list(steps))
    return words_py.apply_chain(images, steps)
