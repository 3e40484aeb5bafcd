"""Truncated Magnus expansion and the γ-degree of free-group words.

``x_i -> 1 + X_i`` extends to a multiplicative map from F_n into truncated
noncommutative power series; ``x_i^-1 -> 1 - X_i + X_i^2 - ...``.  A word lies
in Γ_k exactly when its expansion minus 1 starts in degree >= k, and the
leading homogeneous part is the word's class in the free Lie ring.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .degree import INFINITE, AtLeast, Degree, Exact, min_degree
from .errors import NotIAError, TruncationError
from .freegroup import Word, exponent_vector
from .freelie import LieElement, from_polynomial
from .ncpoly import NCPoly


def _index_to_monomial(idx: int, rank: int, d: int) -> tuple[int, ...]:
    m = []
    for _ in range(d):
        idx, r = divmod(idx, rank)
        m.append(r + 1)
    return tuple(reversed(m))


def _blocks(w: Word, depth: int, backend: str = "auto"):
    return _kernels.expand_blocks(w.syllables, w.rank, depth, backend)


def _block_to_dict(block, rank: int, d: int) -> dict[tuple[int, ...], int]:
    nz = block.nonzero()[0]
    return {_index_to_monomial(int(i), rank, d): int(block[i]) for i in nz}


def expand(w: Word, depth: int, backend: str = "auto") -> NCPoly:
    if depth < 1:
        raise ValueError("truncation must be >= 1")
    blocks = _blocks(w, depth, backend)
    if blocks is None:
        return NCPoly(w.rank, depth, _kernels.expand_sparse(w.syllables, depth))
    coeffs: dict[tuple[int, ...], int] = {}
    for d, block in enumerate(blocks):
        coeffs.update(_block_to_dict(block, w.rank, d))
    return NCPoly(w.rank, depth, coeffs)


def _leading(w: Word, depth: int) -> tuple[int, dict] | None:
    """Degree and homogeneous part of the first nonzero term of ``expand(w) - 1``."""
    blocks = _blocks(w, depth)
    if blocks is None:
        poly = _kernels.expand_sparse(w.syllables, depth)
        poly.pop((), None)
        if not poly:
            return None
        k = min(len(m) for m in poly)
        return k, {m: c for m, c in poly.items() if len(m) == k}
    for d in range(1, depth + 1):
        if blocks[d].any():
            return d, _block_to_dict(blocks[d], w.rank, d)
    return None


def gamma_degree(w: Word, depth: int) -> Degree:
    """Lower-central-series degree of ``w``, exact up to ``depth``."""
    if depth < 1:
        raise ValueError("truncation must be >= 1")
    if w.is_identity():
        return INFINITE
    if any(exponent_vector(w)):
        return Exact(1)
    lead = _leading(w, depth)
    return AtLeast(depth + 1) if lead is None else Exact(lead[0])


def leading_lie_class(w: Word, depth: int) -> LieElement:
    """Class of ``w`` in Γ_k/Γ_{k+1} in Lyndon coordinates, k = γ-degree."""
    if w.is_identity():
        raise ValueError("the identity has no leading class")
    lead = _leading(w, depth)
    if lead is None:
        raise TruncationError(f"γ-degree of the word exceeds truncation {depth}")
    _, part = lead
    return from_polynomial(w.rank, part)


# --- truncated series images of endomorphisms --------------------------------
#
# A series is a flat dense vector holding the degree blocks 0..depth in order.
# Tracking Magnus images of generators lets an endomorphism be composed
# without ever writing out its (often very long) image words.


def unit_series(rank: int, depth: int) -> np.ndarray:
    out = np.zeros(_kernels.dense_size(rank, depth), dtype=np.int64)
    out[0] = 1
    return out


def generator_series(rank: int, depth: int, i: int, exponent: int = 1) -> np.ndarray:
    """The series ``(1 + X_i)^exponent``."""
    out = unit_series(rank, depth)
    offs = _kernels.magnus_py.block_offsets(rank, depth)
    coeffs = _kernels.magnus_py.series_coefficients(exponent, depth)
    rep = _kernels.magnus_py.repunits(rank, depth)
    if any(abs(c) > 2**62 for c in coeffs):
        out = out.astype(object)
    for k in range(1, depth + 1):
        out[offs[k] + (i - 1) * rep[k]] = coeffs[k]
    return out


def evaluate_series(
    w: Word, forward, backward, rank: int, depth: int, backend: str = "auto"
) -> np.ndarray:
    """Series of ``w`` with ``x_i`` sent to ``forward[i-1]`` (inverse ``backward[i-1]``)."""
    acc = None
    for g, e in w.syllables:
        src = forward[g - 1] if e > 0 else backward[g - 1]
        for _ in range(abs(e)):
            acc = src if acc is None else _kernels.series_mul(acc, src, rank, depth, backend)
    return unit_series(rank, depth) if acc is None else acc


def series_valuation(s: np.ndarray, rank: int, depth: int) -> int | None:
    """Lowest degree ``d >= 1`` with a nonzero block, or None up to ``depth``."""
    offs = _kernels.magnus_py.block_offsets(rank, depth)
    for d in range(1, depth + 1):
        if s[offs[d] : offs[d + 1]].any():
            return d
    return None


def compose_series(factors, rank: int, depth: int, backend: str = "auto") -> list[np.ndarray]:
    """Series of ``(f_1 o f_2 o ... o f_k)(x_i)`` for automorphisms with short images.

    Each factor only substitutes into the running series, so the product's
    image words are never formed.
    """
    fwd = [generator_series(rank, depth, i) for i in range(1, rank + 1)]
    bwd = [generator_series(rank, depth, i, -1) for i in range(1, rank + 1)]
    for g in factors:
        new_f, new_b = list(fwd), list(bwd)
        for j, im in enumerate(g.images):
            if im.syllables == ((j + 1, 1),):
                continue
            new_f[j] = evaluate_series(im, fwd, bwd, rank, depth, backend)
            new_b[j] = evaluate_series(im.inverse(), fwd, bwd, rank, depth, backend)
        fwd, bwd = new_f, new_b
    return fwd


def series_displacement_degree(images, rank: int, depth: int) -> Degree:
    """Andreadakis degree read off the series images of the generators."""
    parts = []
    for i, s in enumerate(images, start=1):
        disp = _kernels.series_mul(s, generator_series(rank, depth, i, -1), rank, depth)
        v = series_valuation(disp, rank, depth)
        if v == 1:
            raise NotIAError(f"x{i} is moved outside its coset mod Γ_2")
        parts.append(AtLeast(depth) if v is None else Exact(v - 1))
    return min_degree(parts)
