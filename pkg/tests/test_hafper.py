import math

import numpy as np
import pytest

from hafkit.combinatorics import perfect_matchings
from hafkit.errors import DimensionError, ParityError, PreconditionError, SizeLimitError
from hafkit.hafper import (
    BlockMatrix,
    ComplexAccumulator,
    assemble,
    hafnian,
    hafnian_block,
    hafnian_naive,
    permanent,
    permanent_naive,
    permanent_ryser,
)
from hafkit.linalg import is_symmetric

from conftest import cgauss, rand_hermitian, rand_psd, rand_symmetric, rel_err


def matching_sum(a):
    """Oracle: explicit sum over the streamed perfect matchings."""
    a = np.asarray(a)
    total = 0j
    for m in perfect_matchings(a.shape[0]):
        total += math.prod(a[i - 1, j - 1] for i, j in m)
    return total


def test_hafnian_examples():
    assert hafnian(np.zeros((0, 0))) == 1
    z = 2.5 - 1j
    assert hafnian([[0, z], [z, 0]]) == z
    a = np.zeros((4, 4))
    for (i, j), v in zip([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], range(1, 7)):
        a[i, j] = a[j, i] = v
    assert matching_sum(a) == 28
    assert hafnian(a) == 28


def test_hafnian_ignores_diagonal(rng):
    a = rand_symmetric(rng, 6)
    b = a.copy()
    np.fill_diagonal(b, 100.0)
    assert hafnian(a) == hafnian(b)


def test_hafnian_errors():
    with pytest.raises(ParityError):
        hafnian(np.eye(3))
    with pytest.raises(PreconditionError):
        hafnian([[0, 1], [2, 0]])
    with pytest.raises(DimensionError):
        hafnian(np.zeros((2, 4)))
    with pytest.raises(SizeLimitError):
        hafnian(np.ones((22, 22)))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_hafnian_matches_oracles(rng, n):
    for _ in range(5):
        a = rand_symmetric(rng, n)
        h = hafnian(a)
        assert rel_err(h, hafnian_naive(a)) <= 1e-10
        assert rel_err(h, matching_sum(a)) <= 1e-10


def test_hafnian_naive_examples(rng):
    for _ in range(5):
        a = rand_symmetric(rng, 2)
        assert hafnian_naive(a) == pytest.approx(hafnian(a), abs=1e-15)
    assert hafnian_naive(np.zeros((6, 6))) == 0
    with pytest.raises(SizeLimitError):
        hafnian_naive(np.ones((10, 10)))


def test_hafnian_of_all_ones_counts_matchings():
    # haf(J_{2M}) = (2M-1)!!
    assert hafnian(np.ones((10, 10))) == 945


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_hafnian_homogeneity(rng, m):
    a = rand_symmetric(rng, 2 * m)
    t = 0.7 - 0.4j
    assert rel_err(hafnian(t * a), t**m * hafnian(a)) <= 1e-10


def test_permanent_examples():
    assert permanent_ryser(np.eye(5)) == 1
    assert permanent_ryser(np.ones((6, 6))) == pytest.approx(720, rel=1e-14)
    assert permanent_ryser([[1, 2], [3, 4]]) == 10
    assert permanent_naive([[1, 2], [3, 4]]) == 10
    assert permanent_naive(np.eye(3)) == 1
    assert permanent_naive(np.diag([2.0, 3j, -1.0])) == pytest.approx(-6j)
    assert permanent_ryser(np.zeros((0, 0))) == 1
    assert permanent_naive(np.zeros((0, 0))) == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_ryser_matches_naive(rng, n):
    for _ in range(3):
        b = cgauss(rng, n, n)
        assert rel_err(permanent_ryser(b), permanent_naive(b)) <= 1e-10
        assert rel_err(permanent(b), permanent_naive(b)) <= 1e-10


def test_permanent_errors():
    with pytest.raises(DimensionError):
        permanent_ryser(np.ones((2, 3)))
    with pytest.raises(SizeLimitError):
        permanent_ryser(np.ones((26, 26)))
    with pytest.raises(SizeLimitError):
        permanent_naive(np.ones((10, 10)))
    with pytest.raises(ValueError):
        permanent(np.eye(2), "glynn")


def test_accumulator_compensates():
    acc = ComplexAccumulator()
    for z in [1e16, 1.0, -1e16, 1j * 1e16, 1j, -1j * 1e16]:
        acc.add(z)
    assert acc.value == 1 + 1j


def test_block_matrix_validation(rng):
    with pytest.raises(PreconditionError):
        BlockMatrix(np.array([[0, 1], [2, 0]]), np.eye(2))
    with pytest.raises(PreconditionError):
        BlockMatrix(np.zeros((2, 2)), np.array([[0, 1j], [1j, 0]]))
    with pytest.raises(DimensionError):
        BlockMatrix(np.zeros((2, 2)), np.eye(3))


def test_assemble_examples(rng):
    ab = BlockMatrix(np.zeros((1, 1)), np.eye(1))
    np.testing.assert_array_equal(assemble(ab), [[0, 1], [1, 0]])
    y, b = 0.3 + 2j, 1.5
    np.testing.assert_array_equal(
        assemble(BlockMatrix([[y]], [[b]])), [[y, b], [b, np.conj(y)]]
    )
    for m in range(1, 6):
        ab = BlockMatrix(rand_symmetric(rng, m), rand_hermitian(rng, m))
        assert is_symmetric(assemble(ab), 1e-14)


def test_block_y_zero_is_permanent(rng):
    b = rand_psd(rng, 4)
    ab = BlockMatrix(np.zeros((4, 4)), b)
    assert rel_err(hafnian_block(ab), permanent_ryser(b)) <= 1e-10
    assert rel_err(hafnian(assemble(ab)), permanent_ryser(b)) <= 1e-10


def test_block_b_zero():
    y = np.array([[0, 1], [1, 0]], dtype=complex)
    ab = BlockMatrix(y, np.zeros((2, 2)))
    assert hafnian(assemble(ab)) == 1
    assert hafnian_block(ab) == 1


@pytest.mark.parametrize("m", range(0, 6))
def test_block_formula_matches_direct(rng, m):
    for _ in range(4):
        ab = BlockMatrix(rand_symmetric(rng, m), rand_hermitian(rng, m))
        assert rel_err(hafnian_block(ab), hafnian(assemble(ab))) <= 1e-10


@pytest.mark.parametrize("m", range(1, 6))
def test_block_hafnian_is_real_for_indefinite_b(rng, m):
    for _ in range(4):
        h = hafnian_block(BlockMatrix(rand_symmetric(rng, m), rand_hermitian(rng, m)))
        assert abs(h.imag) <= 1e-9 * max(1.0, abs(h))


def test_block_independent_of_workers(rng):
    ab = BlockMatrix(rand_symmetric(rng, 6), rand_hermitian(rng, 6))
    assert hafnian_block(ab, workers=1) == hafnian_block(ab, workers=4)
