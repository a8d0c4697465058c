"""Exact arithmetic on integer weight vectors.

Weights are integral linear forms on the Lie algebra of a torus, given by
their coordinate vectors in ``Z^r``.  An isotropy weight is only defined up
to a global sign, so most of the library works with sign classes
(:class:`WeightClass`) whose canonical representative has its first nonzero
coordinate positive.  All rank and span tests are exact (integer
elimination); nothing in this module touches floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from . import linalg

Coords = tuple[int, ...]


class LatticeError(ValueError):
    """Raised for invalid weight-lattice inputs (zero weights etc.)."""


def _as_coords(v: Iterable[int]) -> Coords:
    coords = tuple(v)
    for x in coords:
        if not isinstance(x, int):
            raise LatticeError(f"weight coordinates must be integers, got {x!r}")
    return coords


def canonical_sign(coords: Sequence[int]) -> int:
    """Return +1/-1 so that sign*coords has its first nonzero entry positive."""
    for x in coords:
        if x > 0:
            return 1
        if x < 0:
            return -1
    raise LatticeError("zero weight")


@dataclass(frozen=True, order=True)
class WeightClass:
    """A nonzero integer weight modulo global sign.

    ``rep`` is the canonical representative: first nonzero coordinate
    positive.  Two classes are equal iff their representatives are equal.
    """

    rep: Coords

    def __post_init__(self) -> None:
        if not self.rep:
            raise LatticeError("empty weight vector")
        if canonical_sign(self.rep) < 0:
            raise LatticeError(
                f"non-canonical representative {self.rep}; use canonicalize()"
            )

    @property
    def rank(self) -> int:
        return len(self.rep)

    def neg(self) -> Coords:
        return tuple(-x for x in self.rep)

    def matches(self, v: Sequence) -> bool:
        """True if v equals the representative or its negative (exactly)."""
        n = len(self.rep)
        if len(v) != n:
            return False
        return all(v[i] == self.rep[i] for i in range(n)) or all(
            v[i] == -self.rep[i] for i in range(n)
        )

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.rep) + ")"


@dataclass(frozen=True)
class PrimitiveDecomposition:
    """A weight written as scale * direction with primitive direction."""

    scale: int
    direction: Coords


def canonicalize(v: Iterable[int]) -> WeightClass:
    """Sign class of a nonzero integer vector.

    >>> canonicalize((-1, 2, 0)).rep
    (1, -2, 0)
    """
    coords = _as_coords(v)
    s = canonical_sign(coords)
    return WeightClass(tuple(s * x for x in coords))


def is_k_independent(ws: Sequence[WeightClass], k: int) -> bool:
    """True iff every k-subset of ``ws`` is linearly independent over Q.

    Vacuously true when fewer than k weights are given.
    """
    if k < 2:
        raise LatticeError(f"independence order k must be >= 2, got {k}")
    for subset in itertools.combinations(ws, k):
        rows = [list(w.rep) for w in subset]
        if linalg.rank_int(rows) < k:
            return False
    return True


def primitive_decompose(w: WeightClass) -> PrimitiveDecomposition:
    """Split w into a positive integer scale and a primitive direction."""
    a = 0
    for x in w.rep:
        a = gcd(a, x)
    return PrimitiveDecomposition(a, tuple(x // a for x in w.rep))


def are_coprime(a: WeightClass, b: WeightClass) -> bool:
    """True iff the scales of the primitive decompositions are coprime.

    Follows the scale-only definition: parallel weights with coprime scales
    count as coprime.
    """
    return gcd(primitive_decompose(a).scale, primitive_decompose(b).scale) == 1


def is_primitive(w: WeightClass) -> bool:
    return primitive_decompose(w).scale == 1


def in_span2(w: WeightClass, a: WeightClass, b: WeightClass) -> bool:
    """True iff w lies in the rational span of the independent pair {a, b}."""
    if linalg.rank_int([list(a.rep), list(b.rep)]) != 2:
        raise LatticeError(f"span generators are dependent: {a}, {b}")
    return linalg.rank_int([list(a.rep), list(b.rep), list(w.rep)]) == 2
