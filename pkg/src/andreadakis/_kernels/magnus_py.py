"""Pure-Python Magnus expansion kernel.

Degree blocks are dense arrays of Python ints (``dtype=object``): the
monomial ``X_{i1} ... X_{id}`` lives at the base-``rank`` index with ``i1``
most significant.  Right multiplication by ``X_i^k`` maps index ``m`` to
``m * rank**k + (i - 1) * (1 + rank + ... + rank**(k-1))``, a strided slice.
"""

from math import comb

import numpy as np


def series_coefficients(exponent: int, depth: int) -> list[int]:
    """Coefficients of ``(1 + X)^exponent`` up to ``X^depth``."""
    if exponent >= 0:
        return [comb(exponent, k) for k in range(depth + 1)]
    e = -exponent
    return [(-1) ** k * comb(e + k - 1, k) for k in range(depth + 1)]


def repunits(rank: int, depth: int) -> list[int]:
    return [sum(rank**t for t in range(k)) for k in range(depth + 1)]


def expand_blocks(syllables, rank: int, depth: int) -> list[np.ndarray]:
    blocks = [np.zeros(rank**d, dtype=object) for d in range(depth + 1)]
    blocks[0][0] = 1
    rep = repunits(rank, depth)
    top = 0  # highest degree with a nonzero block so far
    for g, e in syllables:
        coeffs = series_coefficients(e, depth)
        i = g - 1
        for d in range(min(top, depth - 1), -1, -1):
            src = blocks[d]
            if not src.any():
                continue
            for k in range(1, depth - d + 1):
                blocks[d + k][i * rep[k] :: rank**k] += coeffs[k] * src
        top = depth
    return blocks


def expand_sparse(syllables, depth: int) -> dict[tuple[int, ...], int]:
    """Sparse variant for ranks where dense blocks would be too large."""
    poly = {(): 1}
    for g, e in syllables:
        coeffs = series_coefficients(e, depth)
        out: dict[tuple[int, ...], int] = {}
        for m, c in poly.items():
            for k in range(depth - len(m) + 1):
                key = m + (g,) * k
                out[key] = out.get(key, 0) + c * coeffs[k]
        poly = {m: c for m, c in out.items() if c}
    return poly


def block_offsets(rank: int, depth: int) -> list[int]:
    offs = [0]
    for d in range(depth + 1):
        offs.append(offs[-1] + rank**d)
    return offs


def series_mul(a: np.ndarray, b: np.ndarray, rank: int, depth: int) -> np.ndarray:
    """Product of flat dense truncated series (object dtype, exact)."""
    offs = block_offsets(rank, depth)
    out = np.zeros(offs[-1], dtype=object)
    for d1 in range(depth + 1):
        x = a[offs[d1] : offs[d1 + 1]]
        if not x.any():
            continue
        for d2 in range(depth - d1 + 1):
            y = b[offs[d2] : offs[d2 + 1]]
            if y.any():
                out[offs[d1 + d2] : offs[d1 + d2 + 1]] += np.outer(x, y).ravel()
    return out
