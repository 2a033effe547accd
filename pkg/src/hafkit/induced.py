"""Induced matrices of permanents.

For an m x n matrix Q, ``P_r(Q)`` is indexed by the nondecreasing length-r
sequences over the rows and columns (lexicographic order) with entries
``per(Q[alpha, beta]) / sqrt(mu(alpha) mu(beta))``. It is multiplicative,
``P_r(QS) = P_r(Q) P_r(S)``, and maps Hermitian / PSD / unitary matrices to
matrices of the same kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combinatorics import IndexSequence, nondecreasing_sequences, strict_subsets
from .errors import DimensionError, DomainError, SizeLimitError
from .hafper import _permanent_fast
from .linalg import as_matrix

MAX_INDUCED_DIM = 10_000


@dataclass(frozen=True)
class InducedMatrix:
    r: int
    row_index: list[IndexSequence]
    col_index: list[IndexSequence]
    data: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape


def induced_dimension(n: int, r: int) -> int:
    """Number of nondecreasing length-r sequences over ``[n]``."""
    return math.comb(n + r - 1, r)


def _mu_vector(seqs: list[IndexSequence]) -> np.ndarray:
    return np.array([s.mu for s in seqs], dtype=float)


def _mu_scale(rows: list[IndexSequence], cols: list[IndexSequence]) -> np.ndarray:
    # one sqrt of the integer product keeps e.g. sqrt(2 * 2) exact
    return np.sqrt(np.outer(_mu_vector(rows), _mu_vector(cols)))


def _permanent_grid(q: np.ndarray, rows: list[IndexSequence], cols: list[IndexSequence]) -> np.ndarray:
    out = np.empty((len(rows), len(cols)), dtype=np.complex128)
    col_idx = [c.zero_based() for c in cols]
    for i, alpha in enumerate(rows):
        q_rows = q[alpha.zero_based(), :]
        for j, beta in enumerate(col_idx):
            out[i, j] = _permanent_fast(q_rows[:, beta])
    return out


def _check_r(q: np.ndarray, r: int) -> None:
    if r < 1:
        raise DomainError(f"order of inducement must be >= 1, got {r}")
    for n in q.shape:
        if n == 0:
            raise DimensionError("induced matrices need a non-empty matrix")
        if induced_dimension(n, r) > MAX_INDUCED_DIM:
            raise SizeLimitError(
                f"induced dimension C({n}+{r}-1, {r}) exceeds {MAX_INDUCED_DIM}"
            )


def induced_p(q, r: int) -> InducedMatrix:
    """The r-th induced matrix ``P_r(Q)``; ``P_1(Q) = Q``."""
    q = as_matrix(q)
    _check_r(q, r)
    rows = nondecreasing_sequences(r, q.shape[0])
    cols = nondecreasing_sequences(r, q.shape[1])
    grid = _permanent_grid(q, rows, cols)
    grid /= _mu_scale(rows, cols)
    return InducedMatrix(r, rows, cols, grid)


def induced_c(b, r: int) -> np.ndarray:
    """``C_r(B) = F P_r(B) F`` with ``F = diag(sqrt(mu(alpha)))``.

    The mu factors cancel, so entry ``(alpha, beta)`` is ``per(B[alpha, beta])``.
    """
    b = as_matrix(b)
    if b.shape[0] != b.shape[1]:
        raise DimensionError(f"C_r needs a square matrix, got shape {b.shape}")
    p = induced_p(b, r)
    return p.data * _mu_scale(p.row_index, p.col_index)


def subset_permanent_matrix(b, size: int) -> np.ndarray:
    """Matrix of ``per(B[gamma, delta])`` over all ``size``-subsets of ``[M]``.

    It is the principal submatrix of ``C_size(B)`` on repeat-free sequences;
    ``size = 0`` gives ``[[1]]``.
    """
    b = as_matrix(b)
    if b.shape[0] != b.shape[1]:
        raise DimensionError(f"need a square matrix, got shape {b.shape}")
    m = b.shape[0]
    if size < 0 or size > m:
        raise DomainError(f"subset size {size} out of range for M={m}")
    if math.comb(m, size) > MAX_INDUCED_DIM:
        raise SizeLimitError(f"C({m}, {size}) exceeds {MAX_INDUCED_DIM}")
    subsets = strict_subsets(size, m)
    return _permanent_grid(b, subsets, subsets)
