"""Exact arithmetic in the free group F_n on generators x_1, ..., x_n.

Words are kept freely reduced in run-length form: a tuple of
``(generator, exponent)`` syllables with 1-based generator indices, no zero
exponents and no two adjacent syllables on the same generator.  The empty
tuple is the identity.

Conventions: ``conjugate(x, y)`` is the right action ``x^y = y^-1 x y`` and
``commutator(x, y)`` is ``[x, y] = x y x^-1 y^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernels
from .errors import (
    IndexOutOfRangeError,
    NotInCommutatorSubgroupError,
    ParseError,
    RankMismatchError,
)

Syllable = tuple[int, int]


def _append(out: list[list[int]], gen: int, exp: int) -> None:
    # merge one syllable onto a reduced list, cancelling at the junction
    if exp == 0:
        return
    if out and out[-1][0] == gen:
        e = out[-1][1] + exp
        if e:
            out[-1][1] = e
        else:
            out.pop()
    else:
        out.append([gen, exp])


@dataclass(frozen=True)
class Word:
    """A freely reduced word of a fixed rank.

    Build words with :func:`reduce`, :meth:`generator` or :func:`parse_word`;
    the constructor trusts its input.
    """

    rank: int
    syllables: tuple[Syllable, ...] = ()

    @classmethod
    def identity(cls, rank: int) -> Word:
        if rank < 1:
            raise ValueError("rank must be >= 1")
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, index: int, exponent: int = 1) -> Word:
        if not 1 <= index <= rank:
            raise IndexOutOfRangeError(f"x{index} is not a generator of F_{rank}")
        return cls(rank, ((index, exponent),) if exponent else ())

    def is_identity(self) -> bool:
        return not self.syllables

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __len__(self) -> int:
        """Letter length."""
        return sum(abs(e) for _, e in self.syllables)

    def letters(self) -> list[Syllable]:
        """Expand into single letters ``(generator, +-1)``."""
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def _check(self, other: Word) -> None:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs rank {other.rank}")

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        self._check(other)
        if not other.syllables:
            return self
        if not self.syllables:
            return other
        out = [list(s) for s in self.syllables]
        for g, e in other.syllables:
            _append(out, g, e)
        return Word(self.rank, tuple((g, e) for g, e in out))

    def inverse(self) -> Word:
        return Word(self.rank, tuple((g, -e) for g, e in reversed(self.syllables)))

    def __invert__(self) -> Word:
        return self.inverse()

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return self.inverse() ** (-n)
        if len(self.syllables) == 1:
            g, e = self.syllables[0]
            return Word(self.rank, ((g, e * n),) if n else ())
        result = Word(self.rank)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exponent(self, index: int) -> int:
        return sum(e for g, e in self.syllables if g == index)

    def occurrences(self, index: int) -> int:
        """Number of letters x_index^{+-1} in the word."""
        return sum(abs(e) for g, e in self.syllables if g == index)

    def max_generator(self) -> int:
        return max((g for g, _ in self.syllables), default=0)

    def with_rank(self, rank: int) -> Word:
        """The same word viewed in another free group that contains its letters."""
        if self.max_generator() > rank:
            raise IndexOutOfRangeError(f"word uses x{self.max_generator()}, rank {rank}")
        return Word(rank, self.syllables)

    def __str__(self) -> str:
        return format_word(self)


def reduce(rank: int, raw: Iterable[Sequence[int]]) -> Word:
    """Freely reduce a sequence of ``(index, exponent)`` pairs."""
    out: list[list[int]] = []
    for g, e in raw:
        if not 1 <= g <= rank:
            raise IndexOutOfRangeError(f"x{g} is not a generator of F_{rank}")
        _append(out, g, e)
    return Word(rank, tuple((g, e) for g, e in out))


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(u: Word) -> Word:
    return u.inverse()


def conjugate(x: Word, y: Word) -> Word:
    """``x^y = y^-1 x y``."""
    return y.inverse() * x * y


def commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x y x^-1 y^-1``."""
    return x * y * x.inverse() * y.inverse()


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """Apply the endomorphism ``x_i -> images[i-1]`` to ``w``."""
    if len(images) != w.rank:
        raise RankMismatchError(f"{len(images)} images for a word of rank {w.rank}")
    if not images:
        return w
    rank = images[0].rank
    for im in images:
        if im.rank != rank:
            raise RankMismatchError("images must share one rank")
    forward = [im.syllables for im in images]
    negative = {g for g, e in w.syllables if e < 0}
    backward = [
        im.inverse().syllables if g in negative else ()
        for g, im in enumerate(images, start=1)
    ]
    return Word(rank, _kernels.substitute(w.syllables, forward, backward))


def exponent_vector(w: Word) -> tuple[int, ...]:
    vec = [0] * w.rank
    for g, e in w.syllables:
        vec[g - 1] += e
    return tuple(vec)


def _letter_commutator(u: Syllable, v: Syllable, rank: int) -> tuple[int, int, Word]:
    # [u, v] for letters u, v as [x_a, x_b]^c
    (a, s), (b, t) = u, v
    if s > 0 and t > 0:
        return a, b, Word(rank)
    if s > 0:  # [a, b^-1] = [b, a]^b
        return b, a, Word.generator(rank, b)
    if t > 0:  # [a^-1, b] = [b, a]^a
        return b, a, Word.generator(rank, a)
    # [a^-1, b^-1] = [a, b]^(ab)
    return a, b, reduce(rank, [(a, 1), (b, 1)])


def decompose_gamma2(g: Word) -> list[tuple[int, int, Word]]:
    """Write ``g`` in Γ_2 as a product of conjugated basic commutators.

    Returns ``[(a, b, w), ...]`` with ``g = prod conjugate([x_a, x_b], w)``
    taken left to right.  Letters are bubble-sorted by generator index; each
    adjacent swap ``A u v B -> A v u B`` emits ``[u, v]^(A^-1)``.
    """
    if any(exponent_vector(g)):
        raise NotInCommutatorSubgroupError(f"{format_word(g)} has nonzero exponent sum")
    rank = g.rank
    letters = g.letters()
    factors: list[tuple[int, int, Word]] = []
    while True:
        for p in range(len(letters) - 1):
            if letters[p][0] > letters[p + 1][0]:
                break
        else:
            break
        u, v = letters[p], letters[p + 1]
        a, b, c = _letter_commutator(u, v, rank)
        prefix = reduce(rank, letters[:p])
        factors.append((a, b, c * prefix.inverse()))
        letters[p], letters[p + 1] = v, u
        letters = reduce(rank, letters).letters()
    assert not letters
    return factors


def recompose_gamma2(rank: int, factors: Iterable[tuple[int, int, Word]]) -> Word:
    out = Word(rank)
    for a, b, w in factors:
        c = commutator(Word.generator(rank, a), Word.generator(rank, b))
        out = out * conjugate(c, w)
    return out


def left_normed_commutator(words: Sequence[Word]) -> Word:
    """``[w_1, [w_2, [..., w_k]]]``; a single word is returned as is."""
    out = words[-1]
    for w in reversed(words[:-1]):
        out = commutator(w, out)
    return out


_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, rank: int) -> Word:
    """Parse ``"x1 x2^-1 x1^3"``; the empty string (or ``1``) is the identity."""
    raw = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad word token {tok!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if e == 0:
            raise ParseError(f"zero exponent in {tok!r}")
        raw.append((int(m.group(1)), e))
    return reduce(rank, raw)


def format_word(w: Word) -> str:
    return " ".join(f"x{g}" if e == 1 else f"x{g}^{e}" for g, e in w.syllables)
