"""Hafnians and permanents of complex matrices.

``hafnian`` evaluates the sum over perfect matchings; ``hafnian_naive`` and
``permanent_naive`` are literal permutation sums kept as independent
oracles. ``hafnian_block`` evaluates the hafnian of
``A(Y, B) = [[Y, B], [B^T, conj(Y)]]`` by splitting matchings according to
which indices of each half are paired within that half.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .combinatorics import complement, strict_subsets
from .errors import DimensionError, ParityError, PreconditionError, SizeLimitError
from .linalg import as_matrix, is_hermitian, is_symmetric

HAFNIAN_MAX_ORDER = 20
HAFNIAN_NAIVE_MAX_ORDER = 8
RYSER_MAX_ORDER = 25
PERMANENT_NAIVE_MAX_ORDER = 9
# below this order the permutation expansion beats Ryser's constant factor
SMALL_PERMANENT_ORDER = 5


class ComplexAccumulator:
    """Neumaier-compensated running sum of complex terms."""

    __slots__ = ("_re", "_im", "_cre", "_cim")

    def __init__(self):
        self._re = self._im = self._cre = self._cim = 0.0

    @staticmethod
    def _step(total, comp, x):
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        return t, comp

    def add(self, z: complex) -> None:
        self._re, self._cre = self._step(self._re, self._cre, z.real)
        self._im, self._cim = self._step(self._im, self._cim, z.imag)

    @property
    def value(self) -> complex:
        return complex(self._re + self._cre, self._im + self._cim)


def _check_square(a: np.ndarray, what: str) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{what} needs a square matrix, got shape {a.shape}")


def _check_hafnian_input(a, cap: int, tol: float | None) -> np.ndarray:
    a = as_matrix(a)
    _check_square(a, "hafnian")
    n = a.shape[0]
    if n % 2:
        raise ParityError(f"hafnian needs an even order, got {n}")
    if n > cap:
        raise SizeLimitError(f"order {n} exceeds the hafnian cap {cap}")
    if not is_symmetric(a, tol):
        raise PreconditionError("hafnian needs a symmetric matrix")
    return a


def _hafnian_unchecked(a: np.ndarray) -> complex:
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    if n == 2:
        return complex(a[0, 1])
    # upper triangle only; diagonal entries never appear in a perfect matching
    rows = [[complex(a[i, j]) if j > i else 0j for j in range(n)] for i in range(n)]
    memo: dict[int, complex] = {0: 1.0 + 0.0j}

    def rec(mask: int) -> complex:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        row = rows[i]
        total = 0j
        m = rest
        while m:
            bit = m & -m
            aij = row[bit.bit_length() - 1]
            if aij:
                total += aij * rec(rest ^ bit)
            m ^= bit
        memo[mask] = total
        return total

    return rec((1 << n) - 1)


def hafnian(a, tol: float | None = None) -> complex:
    """Hafnian of a symmetric matrix of even order.

    The matching tree (pair the lowest free index with every other free
    index) is walked with memoisation on the set of still-free indices, so
    subtrees shared between matchings are evaluated once. Only the strict
    upper triangle is read. The empty matrix has hafnian 1.
    """
    a = _check_hafnian_input(a, HAFNIAN_MAX_ORDER, tol)
    return _hafnian_unchecked(a)


@lru_cache(maxsize=None)
def _permutation_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)


def hafnian_naive(a, tol: float | None = None) -> complex:
    """Normalised sum over all ``(2M)!`` permutations, for order <= 8."""
    a = _check_hafnian_input(a, HAFNIAN_NAIVE_MAX_ORDER, tol)
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    m = n // 2
    perms = _permutation_table(n)
    terms = a[perms[:, 0::2], perms[:, 1::2]].prod(axis=1)
    return complex(terms.sum() / (math.factorial(m) * 2**m))


def permanent_naive(b) -> complex:
    """Permanent as a direct sum over all ``n!`` permutations (order <= 9)."""
    b = as_matrix(b)
    _check_square(b, "permanent")
    n = b.shape[0]
    if n > PERMANENT_NAIVE_MAX_ORDER:
        raise SizeLimitError(f"order {n} exceeds the naive permanent cap {PERMANENT_NAIVE_MAX_ORDER}")
    return _permanent_naive_unchecked(b)


def _permanent_naive_unchecked(b: np.ndarray) -> complex:
    n = b.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    if n == 1:
        return complex(b[0, 0])
    if n == 2:
        return complex(b[0, 0] * b[1, 1] + b[0, 1] * b[1, 0])
    perms = _permutation_table(n)
    return complex(b[np.arange(n), perms].prod(axis=1).sum())


def permanent_ryser(b) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula in Gray-code order.

    ``per(B) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} b_ij``; walking the
    column subsets in Gray-code order changes one column per step, so the
    row sums update in O(n). Cost O(2^n n), order capped at 25.
    """
    b = as_matrix(b)
    _check_square(b, "permanent")
    n = b.shape[0]
    if n > RYSER_MAX_ORDER:
        raise SizeLimitError(f"order {n} exceeds the Ryser cap {RYSER_MAX_ORDER}")
    return _permanent_ryser_unchecked(b)


def _permanent_ryser_unchecked(b: np.ndarray) -> complex:
    n = b.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    cols = [b[:, j].copy() for j in range(n)]
    row_sums = np.zeros(n, dtype=np.complex128)
    acc = ComplexAccumulator()
    gray = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        gray ^= 1 << j
        if gray >> j & 1:
            row_sums += cols[j]
        else:
            row_sums -= cols[j]
        term = complex(np.prod(row_sums))
        acc.add(-term if gray.bit_count() % 2 else term)
    total = acc.value
    return -total if n % 2 else total


def permanent(b, algorithm: str = "auto") -> complex:
    """Permanent dispatcher: ``"ryser"``, ``"naive"`` or ``"auto"`` by order."""
    if algorithm == "ryser":
        return permanent_ryser(b)
    if algorithm == "naive":
        return permanent_naive(b)
    if algorithm != "auto":
        raise ValueError(f"unknown permanent algorithm {algorithm!r}")
    b = as_matrix(b)
    _check_square(b, "permanent")
    if b.shape[0] < SMALL_PERMANENT_ORDER:
        return _permanent_naive_unchecked(b)
    return permanent_ryser(b)


def _permanent_fast(b: np.ndarray) -> complex:
    if b.shape[0] < SMALL_PERMANENT_ORDER:
        return _permanent_naive_unchecked(b)
    return _permanent_ryser_unchecked(b)


@dataclass(frozen=True)
class BlockMatrix:
    """The pair ``(Y, B)`` standing for ``A(Y, B) = [[Y, B], [B^T, conj(Y)]]``.

    ``y`` must be complex symmetric and ``b`` Hermitian; both are checked on
    construction (``tol=None`` uses the relative default).
    """

    y: np.ndarray
    b: np.ndarray
    tol: float | None = None

    def __post_init__(self):
        y = as_matrix(self.y, name="y")
        b = as_matrix(self.b, name="b")
        if y.shape[0] != y.shape[1] or y.shape != b.shape:
            raise DimensionError(f"y and b must both be M x M, got {y.shape} and {b.shape}")
        if not is_symmetric(y, self.tol):
            raise PreconditionError("y must be complex symmetric")
        if not is_hermitian(b, self.tol):
            raise PreconditionError("b must be Hermitian")
        y.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "b", b)

    @property
    def m(self) -> int:
        return self.y.shape[0]

    def assemble(self) -> np.ndarray:
        return assemble(self)


def assemble(ab: BlockMatrix) -> np.ndarray:
    """Materialise the 2M x 2M matrix ``[[Y, B], [B^T, conj(Y)]]``."""
    return np.block([[ab.y, ab.b], [ab.b.T, ab.y.conj()]])


def _alpha_partial(
    alpha, haf_y: dict, betas, b: np.ndarray, m: int
) -> complex:
    h_alpha = haf_y[alpha.entries]
    if h_alpha == 0:
        return 0j
    rows = [i - 1 for i in complement(alpha, m)]
    acc = ComplexAccumulator()
    for beta in betas:
        h_beta = haf_y[beta.entries]
        if h_beta == 0:
            continue
        cols = [j - 1 for j in complement(beta, m)]
        p = _permanent_fast(b[np.ix_(rows, cols)]) if rows else 1.0 + 0.0j
        acc.add(h_alpha * p * h_beta.conjugate())
    return acc.value


def hafnian_block(ab: BlockMatrix, workers: int = 1) -> complex:
    """Hafnian of ``A(Y, B)`` by the block decomposition.

    A perfect matching of ``[2M]`` pairs an even subset alpha of the first
    half among itself, an equally sized subset beta of the second half among
    itself, and matches the remaining rows to the remaining columns through
    ``B``. Summing over ``|alpha| = |beta| = 2k``::

        sum_k sum_{alpha, beta} haf(Y[a,a]) * per(B[~a, ~b]) * conj(haf(Y[b,b]))

    ``haf(Y[alpha, alpha])`` is cached per subset. Each alpha contributes a
    compensated partial sum; partials are reduced in a fixed order so the
    result does not depend on ``workers``.
    """
    m = ab.m
    y, b = ab.y, ab.b
    if m == 0:
        return 1.0 + 0.0j
    tasks = []
    for k in range(m // 2 + 1):
        subsets = strict_subsets(2 * k, m)
        haf_y = {
            s.entries: _hafnian_unchecked(y[np.ix_(s.zero_based(), s.zero_based())])
            for s in subsets
        }
        for alpha in subsets:
            tasks.append((alpha, haf_y, subsets))

    def run(task):
        alpha, haf_y, betas = task
        return _alpha_partial(alpha, haf_y, betas, b, m)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, tasks))
    else:
        partials = [run(t) for t in tasks]
    return complex(
        math.fsum(p.real for p in partials), math.fsum(p.imag for p in partials)
    )
