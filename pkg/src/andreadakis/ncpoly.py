"""Degree-truncated noncommutative polynomials over the integers.

Monomials are tuples of 1-based variable indices; ``()`` is the unit.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .errors import RankMismatchError

Monomial = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class NCPoly:
    rank: int
    depth: int
    coeffs: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("truncation must be >= 0")
        clean = {m: c for m, c in self.coeffs.items() if c and len(m) <= self.depth}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def one(cls, rank: int, depth: int) -> NCPoly:
        return cls(rank, depth, {(): 1})

    @classmethod
    def variable(cls, rank: int, depth: int, i: int) -> NCPoly:
        return cls(rank, depth, {(i,): 1})

    def _check(self, other: NCPoly) -> None:
        if self.rank != other.rank or self.depth != other.depth:
            raise RankMismatchError(
                f"NCPoly(rank={self.rank}, D={self.depth}) vs "
                f"NCPoly(rank={other.rank}, D={other.depth})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self.rank, self.depth) == (other.rank, other.depth) and self.coeffs == other.coeffs

    def __add__(self, other: NCPoly) -> NCPoly:
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return NCPoly(self.rank, self.depth, out)

    def __neg__(self) -> NCPoly:
        return NCPoly(self.rank, self.depth, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: NCPoly) -> NCPoly:
        return self + (-other)

    def __rmul__(self, k: int) -> NCPoly:
        return NCPoly(self.rank, self.depth, {m: k * c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return ncpoly_multiply(self, other)

    def homogeneous(self, d: int) -> dict[Monomial, int]:
        return {m: c for m, c in self.coeffs.items() if len(m) == d}

    def min_degree(self) -> int | None:
        return min((len(m) for m in self.coeffs), default=None)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for m in sorted(self.coeffs, key=lambda m: (len(m), m)):
            c = self.coeffs[m]
            mono = "".join(f"X{i}" for i in m) or "1"
            terms.append(f"{c:+d}*{mono}" if mono != "1" else f"{c:+d}")
        return " ".join(terms)


def ncpoly_multiply(p: NCPoly, q: NCPoly) -> NCPoly:
    p._check(q)
    depth = p.depth
    out: dict[Monomial, int] = defaultdict(int)
    for m1, c1 in p.coeffs.items():
        room = depth - len(m1)
        for m2, c2 in q.coeffs.items():
            if len(m2) <= room:
                out[m1 + m2] += c1 * c2
    return NCPoly(p.rank, depth, out)
