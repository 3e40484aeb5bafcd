"""The Drinfeld–Kohno Lie ring p_n in iterated semidirect normal form.

``p_n = k_2 ⋊ k_3 ⋊ ... ⋊ k_n`` where ``k_m`` is free on ``t(1,m) .. t(m-1,m)``.
An element stores one free Lie element per ``m``; letter ``i`` of component
``m`` is ``t(i,m)``.  A generator ``t(r,s)`` acts on ``k_m`` (``m > s``) by the
derivation ``delta_rs``::

    t(i,m) -> 0               (i not in {r, s})
    t(r,m) -> [t(r,m), t(s,m)]
    t(s,m) -> [t(s,m), t(r,m)]

and a bracketed element acts by the commutator of the derivations.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import ParseError, RankMismatchError, TruncationError
from .freelie import (
    LieElement,
    LWord,
    bracket,
    lyndon_words,
    standard_factorization,
    witt_dimension,
)

Gen = tuple[int, int]


def _normalize(i: int, j: int, n: int) -> Gen:
    if i == j:
        raise ValueError(f"t({i},{j}) is zero and not a generator")
    i, j = min(i, j), max(i, j)
    if i < 1 or j > n:
        raise ValueError(f"t({i},{j}) out of range for n = {n}")
    return i, j


@dataclass(frozen=True, eq=False)
class DKElement:
    n: int
    components: Mapping[int, LieElement] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, el in self.components.items():
            if not 2 <= m <= self.n:
                raise ValueError(f"component {m} outside 2..{self.n}")
            if el.rank != m - 1:
                raise RankMismatchError(f"component {m} must have rank {m - 1}")
            if el:
                clean[m] = el
        object.__setattr__(self, "components", clean)

    @classmethod
    def zero(cls, n: int) -> DKElement:
        return cls(n, {})

    @classmethod
    def generator(cls, i: int, j: int, n: int) -> DKElement:
        i, j = _normalize(i, j, n)
        return cls(n, {j: LieElement.generator(j - 1, i)})

    def component(self, m: int) -> LieElement:
        return self.components.get(m, LieElement.zero(m - 1))

    def _check(self, other: DKElement) -> None:
        if self.n != other.n:
            raise RankMismatchError(f"p_{self.n} vs p_{other.n}")

    def _combine(self, other: DKElement, sign: int) -> DKElement:
        self._check(other)
        keys = set(self.components) | set(other.components)
        return DKElement(
            self.n,
            {m: self.component(m) + sign * other.component(m) for m in keys},
        )

    def __add__(self, other: DKElement) -> DKElement:
        return self._combine(other, 1)

    def __sub__(self, other: DKElement) -> DKElement:
        return self._combine(other, -1)

    def __neg__(self) -> DKElement:
        return DKElement(self.n, {m: -el for m, el in self.components.items()})

    def __rmul__(self, k: int) -> DKElement:
        return DKElement(self.n, {m: k * el for m, el in self.components.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, DKElement):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __hash__(self):
        return hash((self.n, frozenset(self.components.items())))

    def is_zero(self) -> bool:
        return not self.components

    def __bool__(self) -> bool:
        return bool(self.components)

    def degrees(self) -> set[int]:
        return set().union(*(el.degrees() for el in self.components.values()))

    def homogeneous(self, d: int) -> DKElement:
        return DKElement(self.n, {m: el.homogeneous(d) for m, el in self.components.items()})

    def coordinates(self) -> dict[tuple[int, LWord], int]:
        """Coefficients keyed by ``(component, Lyndon word)``."""
        return {(m, w): c for m, el in self.components.items() for w, c in el.terms.items()}

    def __str__(self) -> str:
        text = ""
        for m in sorted(self.components):
            part = self.components[m].format(lambda i, m=m: f"t({i},{m})")
            if not text:
                text = part
            elif part.startswith("-"):
                text += " - " + part[1:]
            else:
                text += " + " + part
        return text or "0"

    __repr__ = __str__


# --- derivation action ------------------------------------------------------


def _apply(images, a: LieElement) -> LieElement:
    """Leibniz extension of generator images (a function of the letter) to ``a``."""
    memo: dict[LWord, LieElement] = {}

    def on_basis(w: LWord) -> LieElement:
        hit = memo.get(w)
        if hit is None:
            if len(w) == 1:
                hit = images(w[0])
            else:
                u, v = standard_factorization(w)
                pu, pv = LieElement(a.rank, {u: 1}), LieElement(a.rank, {v: 1})
                hit = bracket(on_basis(u), pv) + bracket(pu, on_basis(v))
            memo[w] = hit
        return hit

    out = LieElement.zero(a.rank)
    for w, c in a.terms.items():
        out = out + c * on_basis(w)
    return out


def delta(r: int, s: int, m: int, i: int) -> LieElement:
    """``delta_rs(t(i,m))`` in ``k_m``, for ``r < s < m``."""
    rank = m - 1
    if i == r:
        return bracket(LieElement.generator(rank, r), LieElement.generator(rank, s))
    if i == s:
        return bracket(LieElement.generator(rank, s), LieElement.generator(rank, r))
    return LieElement.zero(rank)


@lru_cache(maxsize=None)
def _action_image(k: int, w: LWord, m: int, i: int) -> LieElement:
    # image of t(i,m) under the derivation of the basis element P_w of k_k
    if len(w) == 1:
        return delta(w[0], k, m, i)
    u, v = standard_factorization(w)
    return _act_basis(k, u, m, _action_image(k, v, m, i)) - _act_basis(
        k, v, m, _action_image(k, u, m, i)
    )


def _act_basis(k: int, w: LWord, m: int, a: LieElement) -> LieElement:
    return _apply(lambda i: _action_image(k, w, m, i), a)


def act(u: LieElement, k: int, m: int, a: LieElement) -> LieElement:
    """``[u, a]`` for ``u`` in ``k_k`` and ``a`` in ``k_m``, ``k < m``."""
    out = LieElement.zero(m - 1)
    for w, c in u.terms.items():
        out = out + c * _act_basis(k, w, m, a)
    return out


def dk_bracket(a: DKElement, b: DKElement) -> DKElement:
    a._check(b)
    _verify_constants()
    out: dict[int, LieElement] = {}

    def add(m: int, el: LieElement) -> None:
        out[m] = out[m] + el if m in out else el

    for k1, u in a.components.items():
        for k2, v in b.components.items():
            if k1 == k2:
                add(k1, bracket(u, v))
            elif k1 < k2:
                add(k2, act(u, k1, k2, v))
            else:
                add(k1, -act(v, k2, k1, u))
    return DKElement(a.n, out)


def dk_dimension(n: int, k: int) -> int:
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    return sum(witt_dimension(m - 1, k) for m in range(2, n + 1))


def dk_basis(n: int, k: int) -> list[tuple[int, LWord]]:
    """Normal-form basis of degree ``k``: Lyndon words per component."""
    return [(m, w) for m in range(2, n + 1) for w in lyndon_words(m - 1, k)]


# --- relation-rewriting oracle ----------------------------------------------


def generators(n: int) -> list[Gen]:
    return [(i, j) for j in range(2, n + 1) for i in range(1, j)]


def defining_relations(n: int) -> list[dict[tuple[Gen, Gen], int]]:
    """Degree-2 relations as combinations of formal brackets of generators.

    ``[t_ij, t_ik + t_kj] = 0`` for distinct i, j, k and ``[t_ij, t_kl] = 0``
    for disjoint pairs.
    """
    rels = []
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        g = _normalize(i, j, n)
        rels.append({(g, _normalize(i, k, n)): 1, (g, _normalize(k, j, n)): 1})
    for (i, j), (k, l) in itertools.combinations(generators(n), 2):
        if not {i, j} & {k, l}:
            rels.append({((i, j), (k, l)): 1})
    return rels


def _antisym_key(a: Gen, b: Gen) -> tuple[tuple[Gen, Gen], int] | None:
    if a == b:
        return None
    return ((a, b), 1) if a < b else ((b, a), -1)


def derive_delta(n: int) -> dict[tuple[int, int, int, int], dict[tuple[int, int], int]]:
    """Rewrite ``[t_rs, t_im]`` (``r < s < m``) into the ``k_m`` normal form.

    Works in the degree-2 part of the free Lie ring on the ``t_ij``
    (antisymmetric brackets of generator pairs) modulo the defining relations.
    Returns ``{(r, s, m, i): {(a, b): coeff}}`` meaning ``sum coeff [t_am, t_bm]``.
    """
    # columns: brackets not of the form [t_am, t_bm] first, so they are eliminated
    def is_normal(p):
        (a, b) = p
        return a[1] == b[1]

    pairs = list(itertools.combinations(sorted(generators(n)), 2))
    order = sorted(pairs, key=lambda p: (is_normal(p), p))
    col = {p: idx for idx, p in enumerate(order)}
    rows = []
    for rel in defining_relations(n):
        vec: dict[int, Fraction] = {}
        for (a, b), c in rel.items():
            key = _antisym_key(a, b)
            if key is None:
                continue
            p, sign = key
            vec[col[p]] = vec.get(col[p], Fraction(0)) + sign * c
        vec = {k: v for k, v in vec.items() if v}
        if vec:
            rows.append(vec)
    pivots: dict[int, dict[int, Fraction]] = {}
    for vec in rows:
        vec = dict(vec)
        while vec:
            lead = min(vec)
            if lead not in pivots:
                scale = vec[lead]
                pivots[lead] = {k: v / scale for k, v in vec.items()}
                break
            piv = pivots[lead]
            f = vec[lead]
            for k, v in piv.items():
                vec[k] = vec.get(k, Fraction(0)) - f * v
            vec = {k: v for k, v in vec.items() if v}
    normal_cols = {idx for p, idx in col.items() if is_normal(p)}
    if any(lead in normal_cols for lead in pivots):
        raise ArithmeticError("relations identify normal-form brackets")

    def reduce_vec(vec):
        vec = dict(vec)
        changed = True
        while changed:
            changed = False
            for k in sorted(vec):
                if k in pivots and vec.get(k):
                    f = vec[k]
                    for kk, v in pivots[k].items():
                        vec[kk] = vec.get(kk, Fraction(0)) - f * v
                    vec = {kk: v for kk, v in vec.items() if v}
                    changed = True
                    break
        return vec

    out = {}
    for m in range(3, n + 1):
        for s in range(2, m):
            for r in range(1, s):
                for i in range(1, m):
                    key = _antisym_key((r, s), (i, m))
                    p, sign = key
                    red = reduce_vec({col[p]: Fraction(sign)})
                    res = {}
                    for idx, v in red.items():
                        if idx not in normal_cols or v.denominator != 1:
                            raise ArithmeticError(f"[t({r},{s}), t({i},{m})] has no normal form")
                        (a, _), (b, _) = order[idx]
                        res[(a, b)] = int(v)
                    out[(r, s, m, i)] = res
    return out


def delta_table(n: int) -> dict[tuple[int, int, int, int], dict[tuple[int, int], int]]:
    """The ``delta`` formulas in the shape returned by :func:`derive_delta`."""
    out = {}
    for m in range(3, n + 1):
        for s in range(2, m):
            for r in range(1, s):
                for i in range(1, m):
                    out[(r, s, m, i)] = {
                        (a, b): c for (a, b), c in delta(r, s, m, i).terms.items()
                    }
    return out


_VERIFIED = False
_VERIFY_LOCK = threading.Lock()
# five indices realise every relative position of i against r < s < m
_ORACLE_N = 5


def _verify_constants() -> None:
    global _VERIFIED
    if _VERIFIED:
        return
    with _VERIFY_LOCK:
        if not _VERIFIED:
            if derive_delta(_ORACLE_N) != delta_table(_ORACLE_N):
                raise ArithmeticError("derivation constants disagree with the relations")
            _VERIFIED = True


# --- graded dimensions by brackets ------------------------------------------

_PRIME = (1 << 61) - 1


def _rank_mod_p(vectors: list[dict], p: int = _PRIME) -> int:
    pivots: dict = {}
    rank = 0
    for vec in vectors:
        vec = {k: v % p for k, v in vec.items() if v % p}
        while vec:
            lead = min(vec)
            if lead not in pivots:
                inv = pow(vec[lead], -1, p)
                pivots[lead] = {k: v * inv % p for k, v in vec.items()}
                rank += 1
                break
            f = vec[lead]
            for k, v in pivots[lead].items():
                vec[k] = (vec.get(k, 0) - f * v) % p
            vec = {k: v for k, v in vec.items() if v}
    return rank


def _basis_mod_p(elements: list[DKElement], p: int = _PRIME) -> list[DKElement]:
    pivots: dict = {}
    keep = []
    for el in elements:
        vec = {k: v % p for k, v in el.coordinates().items() if v % p}
        while vec:
            lead = min(vec)
            if lead not in pivots:
                inv = pow(vec[lead], -1, p)
                pivots[lead] = {k: v * inv % p for k, v in vec.items()}
                keep.append(el)
                break
            f = vec[lead]
            for k, v in pivots[lead].items():
                vec[k] = (vec.get(k, 0) - f * v) % p
            vec = {k: v for k, v in vec.items() if v}
    return keep


def spanned_dimensions(n: int, max_k: int) -> list[int]:
    """Rank of the degree-``k`` span of brackets of generators, ``k = 1..max_k``.

    Ranks are taken modulo a large prime; a mod-p rank is a lower bound for the
    rational rank, and the ambient normal-form space bounds it from above.
    """
    gens = [DKElement.generator(i, j, n) for i, j in generators(n)]
    layer = gens
    dims = []
    for k in range(1, max_k + 1):
        if k > 1:
            layer = _basis_mod_p([dk_bracket(g, b) for g in gens for b in layer])
        dims.append(len(layer))
    return dims


# --- braid classes ----------------------------------------------------------


def braid_class_to_dk(beta, depth: int) -> DKElement:
    """Class of a pure braid in the graded piece of its γ-degree."""
    from .braid import comb
    from .magnus import gamma_degree, leading_lie_class
    from .degree import min_degree

    factors = comb(beta).factors
    degs = [gamma_degree(w, depth) for w in factors]
    k = min_degree(degs)
    if not k.is_exact:
        raise TruncationError(f"γ-degree is {k} at truncation {depth}")
    comps = {}
    for m, (w, d) in enumerate(zip(factors, degs), start=2):
        if d == k:
            comps[m] = leading_lie_class(w, depth)
    return DKElement(beta.n, comps)


# --- parsing ----------------------------------------------------------------


def parse_dk(text: str, n: int) -> DKElement:
    """Parse e.g. ``[t(1,2),t(1,3)] + 2*t(2,3)``."""
    from .exprparse import parse_expression

    def atom(tok: str) -> DKElement:
        if not tok.startswith("t("):
            raise ValueError(f"unexpected token {tok!r}")
        i, j = (int(x) for x in tok[2:-1].split(","))
        return DKElement.generator(i, j, n)

    try:
        return parse_expression(text, atom, dk_bracket, DKElement.zero(n))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
