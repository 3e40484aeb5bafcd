"""Filtration degrees with an explicit truncation sentinel.

A degree is exact (``Exact(j)``: the element lies in step ``j`` but not in
step ``j + 1``), a lower bound produced by truncation (``AtLeast(m)``), or
infinite (the identity).  Lower bounds never turn into exact values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

EXACT = "exact"
AT_LEAST = "at_least"
INFINITE_KIND = "infinite"


@dataclass(frozen=True)
class Degree:
    kind: str
    value: Optional[int] = None

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    @property
    def is_infinite(self) -> bool:
        return self.kind == INFINITE_KIND

    @property
    def is_bound(self) -> bool:
        return self.kind == AT_LEAST

    def shift(self, by: int) -> Degree:
        if self.kind == INFINITE_KIND:
            return self
        return Degree(self.kind, self.value + by)

    def at_least(self, m: int) -> bool:
        """True when the degree is known to be ``>= m``."""
        return self.kind == INFINITE_KIND or self.value >= m

    def below(self, m: int) -> bool:
        """True when the degree is known to be ``< m``."""
        return self.kind == EXACT and self.value < m

    def __str__(self) -> str:
        if self.kind == EXACT:
            return str(self.value)
        if self.kind == AT_LEAST:
            return f">= {self.value}"
        return "inf"

    def to_json(self) -> dict:
        if self.kind == EXACT:
            return {"degree": self.value}
        if self.kind == AT_LEAST:
            return {"degree_at_least": self.value}
        return {"degree": None, "infinite": True}


def Exact(j: int) -> Degree:
    return Degree(EXACT, j)


def AtLeast(m: int) -> Degree:
    return Degree(AT_LEAST, m)


INFINITE = Degree(INFINITE_KIND)

GammaDegree = Degree
AndreadakisDegree = Degree


def min_degree(degrees: Iterable[Degree]) -> Degree:
    """Degree of an element known through components of the given degrees.

    An exact component at or below every bound decides the minimum exactly.
    """
    exact = None
    bound = None
    for d in degrees:
        if d.kind == EXACT:
            exact = d.value if exact is None else min(exact, d.value)
        elif d.kind == AT_LEAST:
            bound = d.value if bound is None else min(bound, d.value)
    if exact is not None and (bound is None or exact <= bound):
        return Exact(exact)
    if bound is not None:
        return AtLeast(bound)
    return INFINITE


def degrees_agree(a: Degree, b: Degree) -> Optional[bool]:
    """Compare two degrees; ``None`` when truncation leaves it undecided."""
    if a.is_infinite and b.is_infinite:
        return True
    if a.is_exact and b.is_exact:
        return a.value == b.value
    if a.is_exact and b.at_least(a.value + 1):
        return False
    if b.is_exact and a.at_least(b.value + 1):
        return False
    return None
