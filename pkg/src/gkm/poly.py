"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are exponent tuples.  Within a fixed total degree, monomials are
ordered in descending graded reverse-lexicographic order; all coefficient
vectors in the cohomology solver use this order, which makes pivot choices
reproducible.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Sequence

Monomial = tuple[int, ...]


def _grevlex_cmp(a: Monomial, b: Monomial) -> int:
    # a before b (descending) iff the last nonzero entry of a-b is negative
    for i in range(len(a) - 1, -1, -1):
        d = a[i] - b[i]
        if d:
            return -1 if d < 0 else 1
    return 0


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[Monomial, ...]:
    """All exponent tuples of the given total degree, grevlex-descending."""
    if degree < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        exps = []
        prev = -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(degree + nvars - 2 - prev)
        out.append(tuple(exps))
    out.sort(key=cmp_to_key(_grevlex_cmp))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


def num_monomials(nvars: int, degree: int) -> int:
    return len(monomials(nvars, degree))


class Polynomial:
    """Immutable-by-convention sparse polynomial over Q."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: dict[Monomial, Fraction] | None = None):
        self.nvars = nvars
        self.coeffs = {m: c for m, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def linear_form(cls, coords: Sequence) -> "Polynomial":
        n = len(coords)
        d: dict[Monomial, Fraction] = {}
        for i, c in enumerate(coords):
            if c:
                m = tuple(1 if j == i else 0 for j in range(n))
                d[m] = Fraction(c)
        return cls(n, d)

    @classmethod
    def monomial(cls, nvars: int, exps: Monomial, c=1) -> "Polynomial":
        return cls(nvars, {tuple(exps): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        d = dict(self.coeffs)
        for m, c in other.coeffs.items():
            d[m] = d.get(m, Fraction(0)) + c
        return Polynomial(self.nvars, d)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        d = dict(self.coeffs)
        for m, c in other.coeffs.items():
            d[m] = d.get(m, Fraction(0)) - c
        return Polynomial(self.nvars, d)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        d: dict[Monomial, Fraction] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = d.get(m, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, d)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.nvars, {m: c * x for m, x in self.coeffs.items()})

    def degree(self) -> int:
        return max((sum(m) for m in self.coeffs), default=0)

    def truncate(self, max_degree: int) -> "Polynomial":
        return Polynomial(
            self.nvars, {m: c for m, c in self.coeffs.items() if sum(m) <= max_degree}
        )

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial(
            self.nvars, {m: c for m, c in self.coeffs.items() if sum(m) == degree}
        )

    def compose_linear(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute x_i -> images[i] (all in the same target variable set)."""
        assert len(images) == self.nvars
        target_nvars = images[0].nvars if images else 0
        powers: list[dict[int, Polynomial]] = [
            {0: Polynomial.one(target_nvars)} for _ in images
        ]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        out = Polynomial.zero(target_nvars)
        for m, c in self.coeffs.items():
            term = Polynomial.constant(target_nvars, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def coeff_vector(self, degree: int) -> list[Fraction]:
        """Coefficients of the degree-d homogeneous part, grevlex order."""
        idx = monomial_index(self.nvars, degree)
        v = [Fraction(0)] * len(idx)
        for m, c in self.coeffs.items():
            if sum(m) == degree:
                v[idx[m]] = c
        return v

    @classmethod
    def from_coeff_vector(
        cls, nvars: int, degree: int, vec: Sequence
    ) -> "Polynomial":
        monos = monomials(nvars, degree)
        return cls(nvars, {m: Fraction(c) for m, c in zip(monos, vec) if c})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=lambda mm: (sum(mm), mm)):
            c = self.coeffs[m]
            factors = [
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            ]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__
