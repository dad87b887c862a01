"""Integer partitions and the symmetric-group statistics built on them.

A partition alpha = (alpha_1 >= ... >= alpha_m >= 1) of n indexes a
conjugacy class C_alpha of the symmetric group S_n.  This module provides
enumeration in reverse-lexicographic order, the class size |C_alpha|, the
statistic theta(alpha) = prod_i i^{m_i} m_i! = n!/|C_alpha|, elementary
symmetric functions of the parts, and the weighted one-part series psi_i
whose coefficients a_r = r^r/(r-1)! drive the closed Hurwitz formulas.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator

from .series import PSeries, Truncation


class Partition:
    """Weakly decreasing tuple of positive parts; the empty partition is legal."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        pt = tuple(int(a) for a in parts)
        for pos, a in enumerate(pt):
            if a < 1:
                raise ValueError(f"parts must be positive, got {a}")
            if pos and pt[pos - 1] < a:
                raise ValueError(f"parts must be weakly decreasing, got {pt}")
        self.parts = pt

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build from parts in any order."""
        return cls(sorted(parts, reverse=True))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    def mults(self) -> dict[int, int]:
        """Multiplicity view: part size -> number of occurrences."""
        out: dict[int, int] = {}
        for a in self.parts:
            out[a] = out.get(a, 0) + 1
        return out

    def pexp(self) -> tuple[tuple[int, int], ...]:
        """The exponent vector of the monomial p_alpha = prod p_{alpha_i}."""
        return tuple(sorted(self.mults().items()))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Partition):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.parts) + ")"


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    if n == 0:
        return (Partition(),)
    out: list[Partition] = []
    cur = [n]
    while True:
        out.append(Partition(cur))
        j = len(cur) - 1
        while j >= 0 and cur[j] == 1:
            j -= 1
        if j < 0:
            return tuple(out)
        rest = len(cur) - j - 1 + cur[j]
        v = cur[j] - 1
        cur = cur[:j]
        while rest > 0:
            nxt = min(v, rest)
            cur.append(nxt)
            rest -= nxt


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, each once, in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions_cached(n))


def theta(alpha: Partition) -> int:
    """theta(alpha) = prod_i i^{m_i} m_i!, the order of the centralizer."""
    out = 1
    for i, mi in alpha.mults().items():
        out *= i**mi * factorial(mi)
    return out


def class_size(alpha: Partition) -> int:
    """|C_alpha| = n!/theta(alpha)."""
    return factorial(alpha.n) // theta(alpha)


def elem_sym(alpha: Partition, k: int) -> int:
    """Elementary symmetric function e_k of the parts (e_0 = 1, e_k = 0 for k > m).

    Computed by the division-free DP on prod_j (1 + alpha_j t).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > alpha.m:
        return 0
    e = [1] + [0] * k
    filled = 0
    for a in alpha.parts:
        filled = min(filled + 1, k)
        for idx in range(filled, 0, -1):
            e[idx] += a * e[idx - 1]
    return e[k]


def a_coeff(r: int) -> Fraction:
    """The weight a_r = r^r/(r-1)! attached to a part of size r."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return Fraction(r**r, factorial(r - 1))


def psi(i: int, trunc: Truncation) -> PSeries:
    """The one-part series psi_i = sum_r r^(i-1) a_r p_r x^r, truncated at x^N.

    Negative i is allowed; the exponent just yields exact rational weights.
    """
    terms = {}
    for r in range(1, trunc.N + 1):
        terms[(r, 0, ((r, 1),))] = Fraction(r) ** (i - 1) * a_coeff(r)
    return PSeries(trunc, terms)
