"""Pure braids acting on free groups: generators, combing, filtration degrees.

Braid words act on the right: the first letter acts first, so
``braid_to_aut(b * c) == braid_to_aut(c) @ braid_to_aut(b)``.  With this
convention conjugation in P_n is the Artin action on the free kernel:
``l^-1 A(i,n) l`` is the image of ``x_i`` under ``artin_A`` of ``l`` on F_{n-1}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .. import _kernels
from ..autf import FreeAut, andreadakis_degree
from ..degree import INFINITE, Degree, min_degree
from ..errors import (
    BudgetExceededError,
    IndexOutOfRangeError,
    NotConjugationFormError,
    ParseError,
    RankMismatchError,
)
from ..freegroup import Word, exponent_vector
from ..magnus import compose_series, gamma_degree, series_displacement_degree
from . import _calibration as cal
from .calibrate import artin_sigma_aut, pure_generator_aut, table_case, table_word

Letter = tuple[int, int]

DEFAULT_BUDGET = 200_000


def artin_sigma(i: int, n: int) -> FreeAut:
    """``x_i -> x_i x_{i+1} x_i^-1``, ``x_{i+1} -> x_i``."""
    if not 1 <= i < n:
        raise IndexOutOfRangeError(f"sigma_{i} needs 1 <= i < n = {n}")
    return artin_sigma_aut(i, n)


@lru_cache(maxsize=None)
def artin_A(r: int, s: int, n: int) -> FreeAut:
    if not 1 <= r < s <= n:
        raise IndexOutOfRangeError(f"A({r},{s}) needs 1 <= r < s <= n = {n}")
    return pure_generator_aut(
        r, s, n, cal.CONJUGATOR_CROSSING, cal.CONJUGATOR_ORDER, cal.ACTION_SIDE
    )


def sigma_word_to_aut(word: Iterable[tuple[int, int]], n: int) -> FreeAut:
    """Action of a braid word ``[(i, e), ...]`` in the sigma generators."""
    acc = FreeAut.identity(n)
    for i, e in word:
        g = artin_sigma(i, n)
        g = g if e > 0 else g.inverse()
        for _ in range(abs(e)):
            acc = g @ acc
    return acc


# --- pure braid words -------------------------------------------------------


def _normalize_letter(i: int, j: int, n: int) -> Letter:
    if i == j:
        raise IndexOutOfRangeError(f"A({i},{j}) is not a generator")
    i, j = min(i, j), max(i, j)
    if i < 1 or j > n:
        raise IndexOutOfRangeError(f"A({i},{j}) out of range for n = {n}")
    return (i, j)


@dataclass(frozen=True)
class PureBraidWord:
    """Reduced word in the generators ``A(i,j)``, ``i < j``, of P_n."""

    n: int
    syllables: tuple[tuple[Letter, int], ...] = ()

    @classmethod
    def from_letters(cls, n: int, raw: Iterable[tuple[Sequence[int], int]]) -> PureBraidWord:
        out: list[list] = []
        for (i, j), e in raw:
            letter = _normalize_letter(i, j, n)
            if e == 0:
                continue
            if out and out[-1][0] == letter:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([letter, e])
        return cls(n, tuple((l, e) for l, e in out))

    @classmethod
    def generator(cls, i: int, j: int, n: int, e: int = 1) -> PureBraidWord:
        return cls.from_letters(n, [((i, j), e)])

    def _check(self, other: PureBraidWord) -> None:
        if self.n != other.n:
            raise RankMismatchError(f"braids on {self.n} and {other.n} strands")

    def __mul__(self, other: PureBraidWord) -> PureBraidWord:
        self._check(other)
        return PureBraidWord.from_letters(self.n, self.syllables + other.syllables)

    def inverse(self) -> PureBraidWord:
        return PureBraidWord(self.n, tuple((l, -e) for l, e in reversed(self.syllables)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def __str__(self) -> str:
        return format_braid(self)


def braid_commutator(a: PureBraidWord, b: PureBraidWord) -> PureBraidWord:
    return a * b * a.inverse() * b.inverse()


_BRAID_TOKEN = re.compile(r"A\(\s*(\d+)\s*,\s*(\d+)\s*\)(?:\^\(?(-?\d+)\)?)?")


def parse_braid(text: str, n: int) -> PureBraidWord:
    text = text.strip()
    if text in ("", "1"):
        return PureBraidWord(n)
    raw, pos = [], 0
    for m in _BRAID_TOKEN.finditer(text):
        if text[pos : m.start()].strip(" *"):
            raise ParseError(f"cannot parse {text[pos:m.start()]!r}")
        raw.append(((int(m.group(1)), int(m.group(2))), int(m.group(3) or 1)))
        pos = m.end()
    if text[pos:].strip(" *"):
        raise ParseError(f"cannot parse {text[pos:]!r}")
    try:
        return PureBraidWord.from_letters(n, raw)
    except IndexOutOfRangeError as exc:
        raise ParseError(str(exc)) from exc


def format_braid(b: PureBraidWord) -> str:
    if not b.syllables:
        return "1"
    return " ".join(
        f"A({i},{j})" if e == 1 else f"A({i},{j})^{e}" for (i, j), e in b.syllables
    )


def braid_to_aut(beta: PureBraidWord, n: int | None = None) -> FreeAut:
    n = beta.n if n is None else n
    if n < beta.n:
        raise RankMismatchError(f"a braid on {beta.n} strands does not act on F_{n}")
    acc = FreeAut.identity(n)
    for (r, s), e in beta.syllables:
        g = artin_A(r, s, n)
        g = g if e > 0 else g.inverse()
        for _ in range(abs(e)):
            acc = g @ acc
    return acc


def braid_images(beta: PureBraidWord, backend: str = "auto") -> tuple[Word, ...]:
    """Images of ``x_1 .. x_n`` under the Artin action, without the inverse."""
    n = beta.n
    steps = []
    for (r, s), e in beta.syllables:
        g = artin_A(r, s, n)
        g = g if e > 0 else g.inverse()
        step = (
            [w.syllables for w in g.images],
            [w.inverse().syllables for w in g.images],
        )
        steps += [step] * abs(e)
    start = [((i, 1),) for i in range(1, n + 1)]
    return tuple(Word(n, syl) for syl in _kernels.apply_chain(start, steps, backend))


def braids_equal(a: PureBraidWord, b: PureBraidWord) -> bool:
    """Equality in P_n, decided through the faithful Artin action."""
    a._check(b)
    return braid_images(a) == braid_images(b)


# --- combing ----------------------------------------------------------------


@dataclass(frozen=True)
class CombedForm:
    """``beta = beta_2 beta_3 ... beta_n`` with ``beta_k`` a word of rank ``k - 1``.

    Generator ``x_i`` of ``factors[k - 2]`` stands for ``A(i,k)``.
    """

    n: int
    factors: tuple[Word, ...]

    def factor(self, k: int) -> Word:
        return self.factors[k - 2]

    def factor_braid(self, k: int) -> PureBraidWord:
        return PureBraidWord.from_letters(self.n, kernel_letters(self.factor(k), k))

    def to_braid(self) -> PureBraidWord:
        raw = []
        for k, w in enumerate(self.factors, start=2):
            raw += kernel_letters(w, k)
        return PureBraidWord.from_letters(self.n, raw)

    def __str__(self) -> str:
        parts = (f"beta_{k} = {format_braid(self.factor_braid(k))}" for k in range(2, self.n + 1))
        return "  ".join(parts) or "1"


def kernel_letters(w: Word, k: int) -> list[tuple[Letter, int]]:
    return [((g, k), e) for g, e in w.syllables]


def _kernel_image(w: Word, r: int, s: int, e: int, m: int) -> Word:
    g = artin_A(r, s, m - 1)
    g = g if e > 0 else g.inverse()
    for _ in range(abs(e)):
        w = g(w)
    return w


def comb(beta: PureBraidWord, budget: int = DEFAULT_BUDGET) -> CombedForm:
    """Comb ``beta`` into its iterated semidirect normal form.

    Kernel letters are pushed right: ``x l = l (l^-1 x l)``.  Raises
    ``BudgetExceededError`` if an intermediate kernel word grows past ``budget``.
    """
    n = beta.n
    word = list(beta.syllables)
    factors: dict[int, Word] = {}
    for m in range(n, 1, -1):
        kernel = Word(m - 1)
        rest = []
        for (r, s), e in word:
            if s == m:
                kernel = kernel * Word.generator(m - 1, r, e)
            else:
                if kernel:
                    kernel = _kernel_image(kernel, r, s, e, m)
                    if len(kernel) > budget:
                        raise BudgetExceededError(
                            f"kernel word for strand {m} exceeds {budget} letters"
                        )
                rest.append(((r, s), e))
        factors[m] = kernel
        word = rest
    return CombedForm(n, tuple(factors[k] for k in range(2, n + 1)))


# --- degrees ----------------------------------------------------------------


def braid_gamma_degree(beta: PureBraidWord, depth: int, budget: int = DEFAULT_BUDGET) -> Degree:
    """Lower-central-series degree in P_n, via the combed factors."""
    return min_degree(gamma_degree(w, depth) for w in comb(beta, budget).factors)


def braid_andreadakis_degree(beta: PureBraidWord, depth: int) -> Degree:
    """Andreadakis degree of the Artin image, from truncated Magnus images.

    Same value as ``andreadakis_degree(braid_to_aut(beta), depth)`` without
    building the image words.
    """
    if all(w.is_identity() for w in comb(beta).factors):
        return INFINITE
    return series_displacement_degree(braid_series_images(beta, depth), beta.n, depth)


def braid_andreadakis_degree_words(beta: PureBraidWord, depth: int) -> Degree:
    """The same degree computed on the image words themselves."""
    return andreadakis_degree(braid_to_aut(beta), depth)


def braid_series_images(beta: PureBraidWord, depth: int, backend: str = "auto"):
    """Truncated Magnus series of ``braid_to_aut(beta)(x_i)`` for every ``i``."""
    factors = []
    # the last letter acts outermost
    for (r, t), e in reversed(beta.syllables):
        g = artin_A(r, t, beta.n)
        factors += [g if e > 0 else g.inverse()] * abs(e)
    return compose_series(factors, beta.n, depth, backend)


def conjugation_parallel(image: Word, i: int) -> Word:
    """The ``w`` with ``image = w x_i w^-1`` and exponent sum of ``x_i`` in ``w`` zero."""
    syl = image.syllables
    if len(syl) % 2 == 0:
        raise NotConjugationFormError(f"{image} is not a conjugate of x{i}")
    mid = len(syl) // 2
    head = Word(image.rank, syl[:mid])
    tail = Word(image.rank, syl[mid + 1 :])
    if syl[mid] != (i, 1) or head.inverse() != tail:
        raise NotConjugationFormError(f"{image} is not a conjugate of x{i}")
    return head * Word.generator(image.rank, i, -head.exponent(i))


def parallels(beta: PureBraidWord) -> list[Word]:
    images = braid_images(beta)
    return [conjugation_parallel(im, i) for i, im in enumerate(images, start=1)]


def parallels_degree(beta: PureBraidWord, depth: int) -> Degree:
    """Andreadakis degree read off the parallels: the minimum of their γ-degrees.

    Truncating the parallels at ``depth - 1`` matches the truncation of the
    displacements ``[w_i, x_i]`` at ``depth``.
    """
    return min_degree(gamma_degree(w, depth - 1) for w in parallels(beta))


# --- relation table ---------------------------------------------------------


def table_value(r: int, s: int, i: int, n: int) -> Word:
    """Kernel word of ``[A(r,s), A(i,n)]`` per the calibrated table, rank ``n - 1``."""
    case = table_case(r, s, i)
    return table_word(cal.TABLE_ORIENTATION[case], r, s, i, n - 1)


def kernel_commutator(r: int, s: int, i: int, n: int) -> Word:
    """``[A(r,s), A(i,n)]`` rewritten in the kernel through the Artin action."""
    x = Word.generator(n - 1, i)
    # A x A^-1 x^-1 = (A^-1)^-1 x A^-1 . x^-1, i.e. the image of x under A^-1
    return _kernel_image(x, r, s, -1, n) * x.inverse()


def almost_direct(r: int, s: int, i: int, n: int) -> bool:
    return not any(exponent_vector(kernel_commutator(r, s, i, n)))


def random_braid(n: int, length: int, rng) -> PureBraidWord:
    pairs = [(i, j) for j in range(2, n + 1) for i in range(1, j)]
    raw = [(rng.choice(pairs), rng.choice((1, -1))) for _ in range(length)]
    return PureBraidWord.from_letters(n, raw)


def left_normed_braid_commutator(words: Sequence[PureBraidWord]) -> PureBraidWord:
    acc = words[-1]
    for w in reversed(words[:-1]):
        acc = braid_commutator(w, acc)
    return acc


def sample_braid(n: int, rng, max_length: int = 12) -> PureBraidWord:
    """Random pure braid biased toward short commutators (higher γ-degree)."""
    pairs = [(i, j) for j in range(2, n + 1) for i in range(1, j)]

    def gen():
        return PureBraidWord.generator(*rng.choice(pairs), n, rng.choice((1, -1)))

    kind = rng.random()
    if kind < 0.25:
        return random_braid(n, rng.randint(1, max_length), rng)
    if kind < 0.55:
        a = random_braid(n, rng.randint(1, max_length // 4), rng)
        b = random_braid(n, rng.randint(1, max_length // 4), rng)
        out = braid_commutator(a, b)
    elif max_length >= 10:
        out = left_normed_braid_commutator([gen(), gen(), gen()])
    else:
        out = braid_commutator(gen(), gen())
    return out
