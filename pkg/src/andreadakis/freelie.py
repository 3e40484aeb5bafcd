"""The free Lie ring over the integers with its Lyndon basis.

Basis elements are Lyndon words (tuples of 1-based letters) under the
standard bracketing: a letter is a generator, and a longer Lyndon word
``w = uv`` with ``v`` its longest proper Lyndon suffix is ``[P_u, P_v]``.
Expanded in the free associative ring, ``P_w = w + (lexicographically larger
words)``, which makes coordinate extraction a greedy triangular solve.

Elements are :class:`LieElement` maps from Lyndon words to integers.  The
bracket of basis elements is computed by Lyndon rewriting;
:func:`bracket_by_embedding` is the independent route through associative
polynomials.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .errors import NonLieElementError, RankMismatchError, TruncationError

LWord = tuple[int, ...]
Poly = dict[tuple[int, ...], int]


# --- Lyndon words -----------------------------------------------------------

def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def _lyndon_words_upto(n: int, k: int) -> tuple[LWord, ...]:
    # Duval's generation in lexicographic order
    out = []
    w = [0]
    while w:
        out.append(tuple(c + 1 for c in w))
        m = len(w)
        while len(w) < k:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
        if w:
            w[-1] += 1
    return tuple(out)


_memo_lock = threading.Lock()
_basis_memo: dict[tuple[int, int], tuple[LWord, ...]] = {}


def lyndon_words(n: int, k: int) -> tuple[LWord, ...]:
    """All Lyndon words of length ``k`` over ``1..n``, increasing."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    key = (n, k)
    words = _basis_memo.get(key)
    if words is None:
        words = tuple(w for w in _lyndon_words_upto(n, k) if len(w) == k)
        with _memo_lock:
            _basis_memo.setdefault(key, words)
    return words


def _mobius(m: int) -> int:
    result, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def witt_dimension(n: int, k: int) -> int:
    """Rank of the degree-``k`` part of the free Lie ring on ``n`` generators."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    total = sum(_mobius(d) * n ** (k // d) for d in range(1, k + 1) if k % d == 0)
    return total // k


@lru_cache(maxsize=None)
def standard_factorization(w: LWord) -> tuple[LWord, LWord]:
    if len(w) < 2:
        raise ValueError("letters have no standard factorization")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise AssertionError("unreachable: the last letter is Lyndon")


def bracketing(w: LWord, name: Callable[[int], str] = lambda i: f"x{i}") -> str:
    if len(w) == 1:
        return name(w[0])
    u, v = standard_factorization(w)
    return f"[{bracketing(u, name)},{bracketing(v, name)}]"


@dataclass(frozen=True)
class LyndonBasis:
    n: int
    k: int
    words: tuple[LWord, ...]

    def __len__(self) -> int:
        return len(self.words)

    def bracketings(self) -> list[str]:
        return [bracketing(w) for w in self.words]

    def index(self, w: LWord) -> int:
        return self.words.index(w)


def lyndon_basis(n: int, k: int) -> LyndonBasis:
    return LyndonBasis(n, k, lyndon_words(n, k))


# --- associative polynomials ------------------------------------------------

def _poly_mul(p: Mapping, q: Mapping) -> Poly:
    out: Poly = defaultdict(int)
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            out[m1 + m2] += c1 * c2
    return {m: c for m, c in out.items() if c}


def _poly_add(p: Mapping, q: Mapping, scale: int = 1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + scale * c
    return {m: c for m, c in out.items() if c}


def poly_commutator(p: Mapping, q: Mapping) -> Poly:
    return _poly_add(_poly_mul(p, q), _poly_mul(q, p), -1)


@lru_cache(maxsize=None)
def _basis_poly(w: LWord) -> tuple[tuple[tuple[int, ...], int], ...]:
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    return tuple(sorted(poly_commutator(dict(_basis_poly(u)), dict(_basis_poly(v))).items()))


def basis_polynomial(w: LWord) -> Poly:
    """Associative expansion of the basis element ``P_w``."""
    return dict(_basis_poly(w))


# --- Lie elements -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LieElement:
    rank: int
    terms: Mapping[LWord, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {w: c for w, c in self.terms.items() if c})

    @classmethod
    def zero(cls, rank: int) -> LieElement:
        return cls(rank, {})

    @classmethod
    def generator(cls, rank: int, i: int) -> LieElement:
        if not 1 <= i <= rank:
            raise ValueError(f"x{i} is not a generator in rank {rank}")
        return cls(rank, {(i,): 1})

    @classmethod
    def basis(cls, rank: int, w: Sequence[int]) -> LieElement:
        w = tuple(w)
        if not is_lyndon(w) or max(w) > rank:
            raise ValueError(f"{w} is not a Lyndon word in rank {rank}")
        return cls(rank, {w: 1})

    def _check(self, other: LieElement) -> None:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs rank {other.rank}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __add__(self, other: LieElement) -> LieElement:
        self._check(other)
        return LieElement(self.rank, _poly_add(self.terms, other.terms))

    def __sub__(self, other: LieElement) -> LieElement:
        self._check(other)
        return LieElement(self.rank, _poly_add(self.terms, other.terms, -1))

    def __neg__(self) -> LieElement:
        return LieElement(self.rank, {w: -c for w, c in self.terms.items()})

    def __rmul__(self, k: int) -> LieElement:
        return LieElement(self.rank, {w: k * c for w, c in self.terms.items()})

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous(self, d: int) -> LieElement:
        return LieElement(self.rank, {w: c for w, c in self.terms.items() if len(w) == d})

    def coordinates(self) -> dict[tuple[int, int], int]:
        """Coefficients keyed by ``(degree, index in the Lyndon basis)``."""
        return {
            (len(w), lyndon_words(self.rank, len(w)).index(w)): c
            for w, c in self.terms.items()
        }

    def to_polynomial(self) -> Poly:
        out: Poly = {}
        for w, c in self.terms.items():
            out = _poly_add(out, basis_polynomial(w), c)
        return out

    def format(self, name: Callable[[int], str] = lambda i: f"x{i}") -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            body = bracketing(w, name)
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mag + body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()

    __repr__ = __str__


def from_polynomial(rank: int, poly: Mapping[tuple[int, ...], int]) -> LieElement:
    """Lyndon coordinates of an associative polynomial that is a Lie element.

    Raises :class:`NonLieElementError` when the polynomial is not Lie.
    """
    rest = {m: c for m, c in poly.items() if c}
    if () in rest:
        raise NonLieElementError("constant term in a Lie polynomial")
    terms: dict[LWord, int] = {}
    while rest:
        w = min(rest)
        if not is_lyndon(w) or max(w) > rank:
            raise NonLieElementError(f"leading word {w} is not Lyndon")
        c = rest[w]
        terms[w] = c
        rest = _poly_add(rest, basis_polynomial(w), -c)
    return LieElement(rank, terms)


@lru_cache(maxsize=None)
def _bracket_basis(u: LWord, v: LWord) -> tuple[tuple[LWord, int], ...]:
    # [P_u, P_v] by Lyndon rewriting
    if u == v:
        return ()
    if u > v:
        return tuple((w, -c) for w, c in _bracket_basis(v, u))
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return ((u + v, 1),)
    u1, u2 = standard_factorization(u)
    # [[u1, u2], v] = [u1, [u2, v]] - [u2, [u1, v]]
    out: dict[LWord, int] = {}
    for w, c in _bracket_basis(u2, v):
        out = _poly_add(out, dict(_bracket_basis(u1, w)), c)
    for w, c in _bracket_basis(u1, v):
        out = _poly_add(out, dict(_bracket_basis(u2, w)), -c)
    return tuple(sorted(out.items()))


def bracket(a: LieElement, b: LieElement) -> LieElement:
    a._check(b)
    out: dict[LWord, int] = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            for w, e in _bracket_basis(u, v):
                out[w] = out.get(w, 0) + c * d * e
    return LieElement(a.rank, out)


def bracket_by_embedding(a: LieElement, b: LieElement) -> LieElement:
    """The bracket computed as ``ab - ba`` of associative expansions."""
    a._check(b)
    return from_polynomial(a.rank, poly_commutator(a.to_polynomial(), b.to_polynomial()))


def iterated_bracket(elements: Sequence[LieElement]) -> LieElement:
    """Right-normed ``[e_1, [e_2, [..., e_k]]]``."""
    out = elements[-1]
    for e in reversed(elements[:-1]):
        out = bracket(e, out)
    return out


# --- derivations ------------------------------------------------------------

@dataclass(frozen=True)
class Derivation:
    """A derivation of degree ``degree``: generators go to degree ``degree + 1``."""

    rank: int
    degree: int
    images: tuple[LieElement, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("derivation degree must be >= 1")
        if len(self.images) != self.rank:
            raise RankMismatchError(f"{len(self.images)} images for rank {self.rank}")
        for im in self.images:
            if im.rank != self.rank:
                raise RankMismatchError("image rank differs from derivation rank")
            if im.terms and im.degrees() != {self.degree + 1}:
                raise ValueError(
                    f"image {im} is not homogeneous of degree {self.degree + 1}"
                )

    def is_zero(self) -> bool:
        return all(im.is_zero() for im in self.images)

    def __call__(self, a: LieElement) -> LieElement:
        return derivation_apply(self, a)


def derivation_apply(d: Derivation, a: LieElement) -> LieElement:
    """Leibniz extension of the generator images of ``d`` applied to ``a``."""
    if d.rank != a.rank:
        raise RankMismatchError(f"rank {d.rank} vs rank {a.rank}")
    memo: dict[LWord, LieElement] = {}

    def on_basis(w: LWord) -> LieElement:
        hit = memo.get(w)
        if hit is not None:
            return hit
        if len(w) == 1:
            res = d.images[w[0] - 1]
        else:
            u, v = standard_factorization(w)
            pu, pv = LieElement(d.rank, {u: 1}), LieElement(d.rank, {v: 1})
            res = bracket(on_basis(u), pv) + bracket(pu, on_basis(v))
        memo[w] = res
        return res

    out = LieElement.zero(d.rank)
    for w, c in a.terms.items():
        out = out + c * on_basis(w)
    return out


def johnson(sigma, depth: int) -> Derivation:
    """Johnson image of an IA-automorphism given by its generator images.

    The degree is the Andreadakis degree ``j`` of ``sigma``; generator ``x_i``
    goes to the class of ``sigma(x_i) x_i^-1`` in degree ``j + 1``.
    """
    from .autf import andreadakis_degree
    from .freegroup import Word
    from .magnus import gamma_degree, leading_lie_class

    deg = andreadakis_degree(sigma, depth)
    if not deg.is_exact:
        raise TruncationError(f"Andreadakis degree is {deg} at truncation {depth}")
    j = deg.value
    rank = sigma.rank
    images = []
    for i, im in enumerate(sigma.images, start=1):
        g = im * Word.generator(rank, i, -1)
        gd = gamma_degree(g, depth)
        if gd.is_exact and gd.value == j + 1:
            images.append(leading_lie_class(g, depth))
        else:
            images.append(LieElement.zero(rank))
    return Derivation(rank, j, tuple(images))


def parse_lie(text: str, rank: int) -> LieElement:
    """Parse integer combinations of bracketed words, e.g. ``3*[x1,[x1,x2]] - [x2,x3]``."""
    from .exprparse import parse_expression

    def atom(tok: str) -> LieElement:
        if not tok.startswith("x"):
            raise ValueError(f"unexpected token {tok!r}")
        return LieElement.generator(rank, int(tok[1:]))

    return parse_expression(text, atom, bracket, LieElement.zero(rank))
