import pytest

from voalog import IrrationalEigenvalue
from voalog.linalg import SpanBasis, eigenvalues, jordan_blocks, kernel, rank
from voalog.rational import Q


def M(rows):
    return [[Q(x) for x in r] for r in rows]


def test_jordan_single_block():
    assert jordan_blocks(M([[2, 1], [0, 2]])).blocks == {Q(2): [2]}


def test_jordan_mixed():
    m = M([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]])
    data = jordan_blocks(m)
    assert data.blocks == {Q(1): [2, 1], Q(3): [1]}
    assert data.max_block() == 2 and data.logarithmic()


def test_diagonalizable_not_logarithmic():
    assert not jordan_blocks(M([[0, 1], [1, 0]])).logarithmic()


def test_irrational_eigenvalue():
    with pytest.raises(IrrationalEigenvalue):
        eigenvalues(M([[0, 2], [1, 0]]))


def test_rank_and_kernel():
    m = M([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(m) == 2
    (k,) = kernel(m)
    assert all(sum(a * b for a, b in zip(row, k)) == 0 for row in m)


def test_span_basis():
    s = SpanBasis()
    assert s.add({"a": Q(1), "b": Q(1)}) is not None
    assert s.add({"a": Q(2), "b": Q(2)}) is None
    assert s.add({"b": Q(1)}) is not None
    assert len(s) == 2
    assert not s.reduce({"a": Q(3), "b": Q(-1)})
