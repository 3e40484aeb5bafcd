"""Automorphisms of F_n: IA generators, triangular automorphisms, degrees.

Composition reads right to left: ``compose(f, g)`` applies ``g`` first, and an
IA word ``L1 L2 ... Lm`` evaluates to ``L1 o L2 o ... o Lm``.

IA generators follow the Nielsen convention::

    K(i,j):   x_i -> x_j x_i x_j^-1
    K(i,j,k): x_i -> [x_j, x_k] x_i

A triangular automorphism sends ``x_i -> w_i^-1 x_i w_i gamma_i`` with
``w_i`` and ``gamma_i`` words in ``x_1 .. x_{i-1}`` and ``gamma_i`` in Γ_2.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .degree import Degree, min_degree
from .errors import (
    IndexOutOfRangeError,
    NotIAError,
    NotTriangularError,
    ParseError,
    RankMismatchError,
)
from .freegroup import (
    Word,
    commutator,
    decompose_gamma2,
    exponent_vector,
    format_word,
    left_normed_commutator,
    parse_word,
    reduce,
    substitute,
)
from .magnus import gamma_degree

# --- endomorphisms and automorphisms ----------------------------------------


@dataclass(frozen=True)
class FreeEndo:
    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise RankMismatchError(f"{len(self.images)} images for rank {self.rank}")
        for im in self.images:
            if im.rank != self.rank:
                raise RankMismatchError(f"image of rank {im.rank} in rank {self.rank}")

    @classmethod
    def identity(cls, rank: int) -> FreeEndo:
        return cls(rank, tuple(Word.generator(rank, i) for i in range(1, rank + 1)))

    def __call__(self, w: Word) -> Word:
        return substitute(w, self.images)

    def is_identity(self) -> bool:
        return all(im.syllables == ((i, 1),) for i, im in enumerate(self.images, start=1))

    def __str__(self) -> str:
        return format_images(self.images)


def compose(f: FreeEndo, g: FreeEndo) -> FreeEndo:
    """``f o g``: apply ``g`` first, then ``f``."""
    if f.rank != g.rank:
        raise RankMismatchError(f"rank {f.rank} vs rank {g.rank}")
    return FreeEndo(f.rank, tuple(substitute(im, f.images) for im in g.images))


@dataclass(frozen=True)
class FreeAut:
    """An automorphism carried together with its inverse."""

    forward: FreeEndo
    backward: FreeEndo

    @property
    def rank(self) -> int:
        return self.forward.rank

    @property
    def images(self) -> tuple[Word, ...]:
        return self.forward.images

    @classmethod
    def identity(cls, rank: int) -> FreeAut:
        e = FreeEndo.identity(rank)
        return cls(e, e)

    def inverse(self) -> FreeAut:
        return FreeAut(self.backward, self.forward)

    def __call__(self, w: Word) -> Word:
        return self.forward(w)

    def __matmul__(self, other: FreeAut) -> FreeAut:
        """Composition ``self o other``."""
        return FreeAut(compose(self.forward, other.forward), compose(other.backward, self.backward))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeAut):
            return NotImplemented
        return self.forward == other.forward

    def __hash__(self):
        return hash(self.forward)

    def is_identity(self) -> bool:
        return self.forward.is_identity()

    def check_inverse(self) -> bool:
        return compose(self.forward, self.backward).is_identity() and compose(
            self.backward, self.forward
        ).is_identity()

    def __str__(self) -> str:
        return str(self.forward)


def group_commutator(s: FreeAut, t: FreeAut) -> FreeAut:
    """``[s, t] = s o t o s^-1 o t^-1``."""
    return s @ t @ s.inverse() @ t.inverse()


def format_images(images: Sequence[Word]) -> str:
    return ";".join(format_word(w) for w in images)


def parse_images(text: str, rank: int) -> FreeEndo:
    parts = text.split(";")
    if len(parts) != rank:
        raise ParseError(f"expected {rank} images separated by ';', got {len(parts)}")
    return FreeEndo(rank, tuple(parse_word(p, rank) for p in parts))


# --- IA words ----------------------------------------------------------------

IALetter = tuple[int, ...]


def _check_letter(letter: IALetter, rank: int) -> None:
    if any(not 1 <= a <= rank for a in letter):
        raise IndexOutOfRangeError(f"K{letter} has an index outside 1..{rank}")
    if len(letter) == 2:
        i, j = letter
        if i == j:
            raise IndexOutOfRangeError(f"K({i},{j}) needs distinct indices")
    elif len(letter) == 3:
        i, j, k = letter
        if i in (j, k) or j == k:
            raise IndexOutOfRangeError(f"K({i},{j},{k}) needs i not in {{j,k}} and j != k")
    else:
        raise ValueError(f"bad IA letter {letter}")


@dataclass(frozen=True)
class IAWord:
    """A reduced word in the IA generators ``K(i,j)`` and ``K(i,j,k)``."""

    rank: int
    syllables: tuple[tuple[IALetter, int], ...] = ()

    @classmethod
    def from_letters(cls, rank: int, raw: Iterable[tuple[IALetter, int]]) -> IAWord:
        out: list[list] = []
        for letter, e in raw:
            letter = tuple(letter)
            _check_letter(letter, rank)
            if e == 0:
                continue
            if out and out[-1][0] == letter:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([letter, e])
        return cls(rank, tuple((l, e) for l, e in out))

    def __mul__(self, other: IAWord) -> IAWord:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs rank {other.rank}")
        return IAWord.from_letters(self.rank, self.syllables + other.syllables)

    def inverse(self) -> IAWord:
        return IAWord(self.rank, tuple((l, -e) for l, e in reversed(self.syllables)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def is_empty(self) -> bool:
        return not self.syllables

    def __str__(self) -> str:
        return format_ia_word(self)


def k_gen(i: int, j: int, rank: int) -> IAWord:
    return IAWord.from_letters(rank, [((i, j), 1)])


def k_gen3(i: int, j: int, k: int, rank: int) -> IAWord:
    return IAWord.from_letters(rank, [((i, j, k), 1)])


def _letter_images(letter: IALetter, rank: int, sign: int) -> tuple[int, Word]:
    # the single generator moved by K^sign and its image
    if len(letter) == 2:
        i, j = letter
        xi, xj = Word.generator(rank, i), Word.generator(rank, j)
        if sign > 0:
            return i, xj * xi * xj.inverse()
        return i, xj.inverse() * xi * xj
    i, j, k = letter
    c = commutator(Word.generator(rank, j), Word.generator(rank, k))
    if sign < 0:
        c = c.inverse()
    return i, c * Word.generator(rank, i)


def _right_compose(images: list[Word], letter: IALetter, sign: int) -> None:
    # images <- images o K^sign, K moving only x_i
    i, im = _letter_images(letter, len(images), sign)
    images[i - 1] = substitute(im, images)


def _evaluate_endo(w: IAWord) -> FreeEndo:
    images = list(FreeEndo.identity(w.rank).images)
    for letter, e in w.syllables:
        s = 1 if e > 0 else -1
        for _ in range(abs(e)):
            _right_compose(images, letter, s)
    return FreeEndo(w.rank, tuple(images))


def evaluate(w: IAWord) -> FreeAut:
    return FreeAut(_evaluate_endo(w), _evaluate_endo(w.inverse()))


_IA_TOKEN = re.compile(r"K\((\d+),(\d+)(?:,(\d+))?\)(?:\^(-?\d+))?$")


def parse_ia_word(text: str, rank: int) -> IAWord:
    raw = []
    for tok in text.split():
        m = _IA_TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad IA token {tok!r}")
        letter = tuple(int(g) for g in m.groups()[:3] if g is not None)
        e = int(m.group(4)) if m.group(4) is not None else 1
        raw.append((letter, e))
    return IAWord.from_letters(rank, raw)


def format_ia_word(w: IAWord) -> str:
    parts = []
    for letter, e in w.syllables:
        body = "K(" + ",".join(map(str, letter)) + ")"
        parts.append(body if e == 1 else f"{body}^{e}")
    return " ".join(parts)


# --- Andreadakis degree -----------------------------------------------------


def displacements(sigma) -> list[Word]:
    """The words ``sigma(x_i) x_i^-1``."""
    return [im * Word.generator(sigma.rank, i, -1) for i, im in enumerate(sigma.images, start=1)]


def is_ia(sigma) -> bool:
    return not any(any(exponent_vector(g)) for g in displacements(sigma))


def andreadakis_degree(sigma, depth: int) -> Degree:
    """Largest ``j`` with ``sigma(x_i) x_i^-1`` in Γ_{j+1} for every ``i``."""
    disp = displacements(sigma)
    for i, g in enumerate(disp, start=1):
        if any(exponent_vector(g)):
            raise NotIAError(f"x{i} -> {format_word(sigma.images[i - 1])} is not IA")
    return min_degree(gamma_degree(g, depth).shift(-1) for g in disp)


# --- triangular automorphisms -----------------------------------------------


@dataclass(frozen=True)
class TriangularAut:
    """Data ``(w_i, gamma_i)`` for ``i = 2..n``, both of rank ``i - 1``."""

    rank: int
    data: tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        if len(self.data) != self.rank - 1:
            raise RankMismatchError(f"{len(self.data)} factors for rank {self.rank}")
        for i, (w, g) in enumerate(self.data, start=2):
            if w.rank != i - 1 or g.rank != i - 1:
                raise RankMismatchError(f"factor {i} must have rank {i - 1}")
            if any(exponent_vector(g)):
                raise NotTriangularError(f"gamma_{i} = {format_word(g)} is not in Γ_2")

    @classmethod
    def identity(cls, rank: int) -> TriangularAut:
        return cls(rank, tuple((Word(i - 1), Word(i - 1)) for i in range(2, rank + 1)))

    @classmethod
    def from_lists(cls, rank: int, ws: Sequence[Word], gammas: Sequence[Word]) -> TriangularAut:
        return cls(rank, tuple(zip(ws, gammas)))

    def w(self, i: int) -> Word:
        return self.data[i - 2][0]

    def gamma(self, i: int) -> Word:
        return self.data[i - 2][1]

    def images(self) -> tuple[Word, ...]:
        n = self.rank
        out = [Word.generator(n, 1)]
        for i, (w, g) in enumerate(self.data, start=2):
            wl = w.with_rank(n)
            out.append(wl.inverse() * Word.generator(n, i) * wl * g.with_rank(n))
        return tuple(out)

    def inverse_images(self) -> tuple[Word, ...]:
        # sigma^-1(x_i) = s(w_i) x_i s(gamma_i)^-1 s(w_i)^-1 with s = sigma^-1
        n = self.rank
        inv = [Word.generator(n, 1)]
        for i, (w, g) in enumerate(self.data, start=2):
            sw = substitute(w, inv)
            sg = substitute(g, inv)
            inv.append(sw * Word.generator(n, i) * sg.inverse() * sw.inverse())
        return tuple(inv)

    def to_aut(self) -> FreeAut:
        return FreeAut(
            FreeEndo(self.rank, self.images()), FreeEndo(self.rank, self.inverse_images())
        )


def parse_triangular(sigma) -> TriangularAut:
    n = sigma.rank
    images = sigma.images
    if images[0].syllables != ((1, 1),):
        raise NotTriangularError("x1 must be fixed")
    data = []
    for i in range(2, n + 1):
        im = images[i - 1]
        if im.max_generator() > i:
            raise NotTriangularError(f"image of x{i} uses a later generator")
        if im.occurrences(i) != 1:
            raise NotTriangularError(f"image of x{i} must contain x{i} exactly once")
        pos = next(p for p, (g, _) in enumerate(im.syllables) if g == i)
        if im.syllables[pos][1] != 1:
            raise NotTriangularError(f"x{i} occurs with exponent -1")
        a = Word(i - 1, im.syllables[:pos])
        b = Word(i - 1, im.syllables[pos + 1 :])
        gamma = a * b
        if any(exponent_vector(gamma)):
            raise NotTriangularError(
                f"gamma_{i} = {format_word(gamma)} has nonzero exponent vector"
            )
        data.append((a.inverse(), gamma))
    return TriangularAut(n, tuple(data))


def triangular_gamma_degree(t: TriangularAut, depth: int) -> Degree:
    """Degree in the lower central series of the triangular subgroup.

    ``w_i`` contributes its γ-degree, ``gamma_i`` its γ-degree minus one.
    """
    parts = []
    for w, g in t.data:
        parts.append(gamma_degree(w, depth))
        parts.append(gamma_degree(g, depth).shift(-1))
    return min_degree(parts)


def is_mccool(t: TriangularAut) -> bool:
    return all(g.is_identity() for _, g in t.data)


def _conj_factor(i: int, w: Word, rank: int) -> list[tuple[IALetter, int]]:
    # x_i -> w^-1 x_i w, i.e. the product of K(i,a)^-e over the syllables of w
    return [((i, a), -e) for a, e in w.syllables]


def decompose_triangular(t: TriangularAut) -> IAWord:
    """An IA word in ``K(i,j)``, ``K(i,j,k)`` with ``j, k < i`` evaluating to ``t``.

    With ``c_w: x_i -> x_i^w`` and ``r_g: x_i -> x_i g`` the factor moving
    ``x_i`` is ``c_{w_i} o r_{gamma_i}``; ``r`` is multiplicative in ``g``,
    ``r_{c^v} = c_{v^-1} o r_c o c_v`` and ``r_{[x_a,x_b]} = K(i,a,b) o c_{[x_a,x_b]}``.
    """
    n = t.rank
    raw: list[tuple[IALetter, int]] = []
    for i in range(n, 1, -1):
        w, g = t.data[i - 2]
        raw += _conj_factor(i, w, n)
        for a, b, v in decompose_gamma2(g):
            c = commutator(Word.generator(i - 1, a), Word.generator(i - 1, b))
            raw += _conj_factor(i, v.inverse(), n)
            raw.append(((i, a, b), 1))
            raw += _conj_factor(i, c, n)
            raw += _conj_factor(i, v, n)
    return IAWord.from_letters(n, raw)


# --- samplers ---------------------------------------------------------------


def random_word(rank: int, length: int, rng: random.Random) -> Word:
    raw = [(rng.randint(1, rank), rng.choice((-1, 1))) for _ in range(length)]
    return reduce(rank, raw)


def random_commutator(rank: int, weight: int, rng: random.Random, max_len: int = 2) -> Word:
    """A left-normed commutator of ``weight`` short random words (in Γ_weight)."""
    if weight == 1:
        return random_word(rank, rng.randint(1, max_len + 1), rng)
    parts = [random_word(rank, rng.randint(1, max_len), rng) for _ in range(weight)]
    return left_normed_commutator(parts)


def random_gamma_element(rank: int, j: int, rng: random.Random, terms: int = 2) -> Word:
    """A product of up to ``terms`` random commutators of weight >= ``j``."""
    out = Word(rank)
    for _ in range(rng.randint(1, terms)):
        out = out * random_commutator(rank, j + rng.choice((0, 0, 0, 1)), rng)
    return out


def sample_gamma_witness(
    j: int, n: int, seed: int, mccool: bool = False, density: float = 0.7
) -> TriangularAut:
    """A random element of Γ_j of the triangular subgroup of Aut(F_n).

    Each ``w_i`` is drawn from Γ_j(F_{i-1}) and each ``gamma_i`` from
    Γ_{j+1}(F_{i-1}) (trivial when ``mccool``); deterministic per seed.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    rng = random.Random(seed)
    data = []
    for i in range(2, n + 1):
        r = i - 1
        w = random_gamma_element(r, j, rng) if rng.random() < density else Word(r)
        if mccool or rng.random() >= density:
            g = Word(r)
        else:
            g = random_gamma_element(r, j + 1, rng)
        data.append((w, g))
    if all(w.is_identity() and g.is_identity() for w, g in data):
        # keep samples nontrivial when the top factor allows it
        r = n - 1
        data[-1] = (random_commutator(r, j, rng), data[-1][1])
    return TriangularAut(n, tuple(data))


def kernel_factor(t: TriangularAut) -> TriangularAut:
    """The component of ``t`` moving only ``x_n``."""
    n = t.rank
    data = [(Word(i - 1), Word(i - 1)) for i in range(2, n)] + [t.data[-1]]
    return TriangularAut(n, tuple(data))


def complement_factor(t: TriangularAut) -> TriangularAut:
    """The component of ``t`` fixing ``x_n``."""
    n = t.rank
    return TriangularAut(n, t.data[:-1] + ((Word(n - 1), Word(n - 1)),))
