"""Enumeration primitives: perfect matchings, multisets, subsets.

Index sequences are 1-based throughout, matching the usual mathematical
convention; conversion to 0-based happens only when indexing arrays.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParityError

Matching = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class IndexSequence:
    """A nondecreasing sequence of integers drawn from ``[1, n]``."""

    entries: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        e = self.entries
        if any(x < 1 or x > self.n for x in e):
            raise DomainError(f"entries {e} not within [1, {self.n}]")
        if any(a > b for a, b in zip(e, e[1:])):
            raise DomainError(f"entries {e} are not nondecreasing")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def is_strict(self) -> bool:
        e = self.entries
        return all(a < b for a, b in zip(e, e[1:]))

    @property
    def mu(self) -> int:
        return mu(self)

    def zero_based(self) -> list[int]:
        return [x - 1 for x in self.entries]


def perfect_matchings(two_m: int) -> Iterator[Matching]:
    """Yield every perfect matching of ``{1, ..., two_m}`` exactly once.

    The smallest unmatched index is paired with each larger unmatched index
    in turn, which gives a canonical, duplicate-free order. ``two_m = 0``
    yields a single empty matching.
    """
    if two_m < 0 or two_m % 2:
        raise ParityError(f"perfect matchings need an even, nonnegative size, got {two_m}")

    def rec(remaining: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
        if not remaining:
            yield []
            return
        first, rest = remaining[0], remaining[1:]
        for k, partner in enumerate(rest):
            for tail in rec(rest[:k] + rest[k + 1:]):
                yield [(first, partner), *tail]

    for m in rec(tuple(range(1, two_m + 1))):
        yield tuple(m)


def double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def nondecreasing_sequences(k: int, n: int) -> list[IndexSequence]:
    """All of ``G_{k,n}`` in lexicographic order; there are ``C(n+k-1, k)``."""
    if k < 0 or n < 1:
        raise DomainError(f"need k >= 0 and n >= 1, got k={k}, n={n}")
    return [
        IndexSequence(c, n)
        for c in itertools.combinations_with_replacement(range(1, n + 1), k)
    ]


def mu(alpha: IndexSequence | Iterable[int]) -> int:
    """Product of the factorials of the multiplicities of distinct entries."""
    return math.prod(math.factorial(c) for c in Counter(alpha).values())


def strict_subsets(size: int, n: int) -> list[IndexSequence]:
    """All ``size``-subsets of ``[1, n]`` as increasing sequences, lexicographic."""
    if size < 0 or size > n:
        raise DomainError(f"subset size {size} out of range for n={n}")
    return [IndexSequence(c, n) for c in itertools.combinations(range(1, n + 1), size)]


def complement(alpha: IndexSequence | Iterable[int], n: int) -> IndexSequence:
    """Sorted complement ``[n] minus alpha`` of a strictly increasing alpha."""
    entries = tuple(alpha)
    if len(set(entries)) != len(entries):
        raise DomainError(f"complement needs distinct entries, got {entries}")
    if any(x < 1 or x > n for x in entries):
        raise DomainError(f"entries {entries} not within [1, {n}]")
    present = set(entries)
    return IndexSequence(tuple(i for i in range(1, n + 1) if i not in present), n)


def submatrix(q, alpha: Iterable[int], beta: Iterable[int]) -> np.ndarray:
    """``Q[alpha, beta]``: rows alpha, columns beta, repeats allowed, 1-based."""
    q = np.asarray(q, dtype=np.complex128)
    alpha, beta = tuple(alpha), tuple(beta)
    rows = [int(i) - 1 for i in alpha]
    cols = [int(j) - 1 for j in beta]
    if any(i < 0 or i >= q.shape[0] for i in rows):
        raise DomainError(f"row index out of range 1..{q.shape[0]}: {alpha}")
    if any(j < 0 or j >= q.shape[1] for j in cols):
        raise DomainError(f"column index out of range 1..{q.shape[1]}: {beta}")
    return q[np.ix_(np.array(rows, dtype=np.intp), np.array(cols, dtype=np.intp))]
