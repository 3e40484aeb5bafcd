"""Slow reference implementations that share no code with the package.

Words here are plain lists of signed letters (``3`` is ``x3``, ``-3`` its
inverse); polynomials are dicts keyed by index tuples.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product


def free_reduce(letters):
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


def word_letters(w):
    """Signed letters of a package Word."""
    out = []
    for g, e in w.syllables:
        out += [g if e > 0 else -g] * abs(e)
    return out


def inv(letters):
    return [-a for a in reversed(letters)]


def comm(a, b):
    return free_reduce(a + b + inv(a) + inv(b))


def substitute(letters, images):
    out = []
    for a in letters:
        out += images[a - 1] if a > 0 else inv(images[-a - 1])
    return free_reduce(out)


# --- Magnus expansion, letter by letter ---------------------------------------


def poly_mul(p, q, depth):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            if len(m1) + len(m2) <= depth:
                key = m1 + m2
                out[key] = out.get(key, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def letter_series(a, depth):
    g = abs(a)
    if a > 0:
        return {(): 1, (g,): 1}
    return {(g,) * k: (-1) ** k for k in range(depth + 1)}


def magnus(letters, depth):
    p = {(): 1}
    for a in letters:
        p = poly_mul(p, letter_series(a, depth), depth)
    return p


def magnus_degree(letters, depth):
    """Lowest degree of a nonzero term of M(w) - 1, or None up to depth."""
    p = magnus(letters, depth)
    degs = [len(m) for m, c in p.items() if m and c]
    return min(degs) if degs else None


# --- Lyndon words and the free Lie ring ----------------------------------------


def lyndon_brute(n, k):
    out = []
    for w in product(range(1, n + 1), repeat=k):
        if all(w < w[i:] + w[:i] for i in range(1, k)):
            out.append(w)
    return out


def mobius(m):
    res, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def witt(n, k):
    return sum(mobius(d) * n ** (k // d) for d in range(1, k + 1) if k % d == 0) // k


def _is_lyndon(w):
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def lie_poly(w):
    """Associative polynomial of the standard bracketing of a Lyndon word."""
    if len(w) == 1:
        return {w: 1}
    # longest proper Lyndon suffix
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            u, v = w[:i], w[i:]
            break
    return poly_comm(lie_poly(u), lie_poly(v))


def poly_comm(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
            out[m2 + m1] = out.get(m2 + m1, 0) - c1 * c2
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=None)
def _solver(n, k):
    """Pivot monomials and the inverse of the basis matrix restricted to them."""
    basis = lyndon_brute(n, k)
    polys = [lie_poly(w) for w in basis]
    monos = sorted({m for p in polys for m in p})
    rows = [[Fraction(p.get(m, 0)) for p in polys] for m in monos]
    size = len(basis)
    # choose independent rows greedily, then invert that square block
    chosen, echelon = [], []
    for i, row in enumerate(rows):
        r = list(row)
        for piv, e in echelon:
            if r[piv]:
                f = r[piv] / e[piv]
                r = [a - f * b for a, b in zip(r, e)]
        piv = next((c for c in range(size) if r[c]), None)
        if piv is not None:
            echelon.append((piv, r))
            chosen.append(i)
        if len(chosen) == size:
            break
    square = [rows[i] + [Fraction(int(j == t)) for j in range(size)] for t, i in enumerate(chosen)]
    for c in range(size):
        piv = next(r for r in range(c, size) if square[r][c])
        square[c], square[piv] = square[piv], square[c]
        pv = square[c][c]
        square[c] = [a / pv for a in square[c]]
        for r in range(size):
            if r != c and square[r][c]:
                f = square[r][c]
                square[r] = [a - f * b for a, b in zip(square[r], square[c])]
    inverse = [row[size:] for row in square]
    return basis, polys, [monos[i] for i in chosen], inverse


def lyndon_coordinates(poly, n, k):
    """Solve ``poly = sum c_w P_w`` over the degree-k Lyndon basis exactly."""
    basis, polys, pivots, inverse = _solver(n, k)
    rhs = [Fraction(poly.get(m, 0)) for m in pivots]
    coeffs = [sum(a * b for a, b in zip(row, rhs)) for row in inverse]
    recon = {}
    for c, p in zip(coeffs, polys):
        if c:
            assert c.denominator == 1
            for m, v in p.items():
                recon[m] = recon.get(m, 0) + int(c) * v
    if {m: v for m, v in recon.items() if v} != {m: v for m, v in poly.items() if v}:
        raise ValueError("not in the span of the Lyndon basis")
    return {w: int(c) for w, c in zip(basis, coeffs) if c}
