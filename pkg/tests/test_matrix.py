import pytest

from fqrank.errors import DimensionMismatch
from fqrank.field import field_new
from fqrank.matrix import FqMatrix, dumps_matrix, in_span, loads_matrix

F2 = field_new(2)
F3 = field_new(3)
F4 = field_new(4)


def test_shape_validation():
    with pytest.raises(DimensionMismatch):
        FqMatrix(F2, 2, 2, (0, 1, 0))
    with pytest.raises(ValueError):
        FqMatrix(F2, 1, 1, (2,))


def test_identity_and_zero():
    I = FqMatrix.identity(F3, 3)
    assert I.rank() == 3 and I.corank() == 0
    Z = FqMatrix.zero(F3, 2, 3)
    assert Z.rank() == 0 and Z.corank() == 2


def test_rank_known_values():
    M = FqMatrix.from_rows(F2, [[1, 1], [1, 1]])
    assert M.rank() == 1
    M = FqMatrix.from_rows(F3, [[1, 2, 0], [2, 1, 0], [0, 0, 1]])
    assert M.rank() == 2  # top corner has det 1 - 4 = 0 mod 3
    M = FqMatrix.from_rows(F3, [[1, 2, 0], [0, 1, 0], [0, 0, 1]])
    assert M.rank() == 3
    # rows proportional over F_3: (2,1,0) = 2*(1,2,0)
    M = FqMatrix.from_rows(F3, [[1, 2, 0], [2, 1, 0], [0, 0, 0]])
    assert M.rank() == 1


def test_rank_extension_field():
    # over F_4, (2,3) = 2*(1,x+1)... check a rank-1 construction directly
    a = 2
    row = (1, 3)
    scaled = tuple(F4.mul(a, x) for x in row)
    M = FqMatrix.from_rows(F4, [list(row), list(scaled)])
    assert M.rank() == 1


def test_rref_pivots():
    M = FqMatrix.from_rows(F3, [[0, 2, 1], [1, 1, 0]])
    red, pivots = M.rref()
    assert pivots == [0, 1]
    # pivot columns reduce to unit vectors
    assert red.get(0, 0) == 1 and red.get(1, 0) == 0
    assert red.get(0, 1) == 0 and red.get(1, 1) == 1


def test_nullspace_is_kernel():
    M = FqMatrix.from_rows(F3, [[1, 2, 0], [0, 1, 1]])
    basis = M.nullspace()
    assert len(basis) == M.cols - M.rank() == 1
    for v in basis:
        assert M.matvec(v) == (0, 0)


def test_left_nullspace():
    M = FqMatrix.from_rows(F2, [[1, 0], [1, 0], [0, 1]])
    basis = M.left_nullspace()
    assert len(basis) == M.rows - M.rank() == 1
    w = basis[0]
    assert M.transpose().matvec(w) == (0, 0)


def test_in_span():
    W = FqMatrix.from_rows(F3, [[1, 0], [0, 1], [0, 0]])
    assert in_span(W, (2, 1, 0))
    assert not in_span(W, (0, 0, 1))
    with pytest.raises(DimensionMismatch):
        in_span(W, (1, 0))


def test_symmetry_predicates():
    S = FqMatrix.from_rows(F3, [[1, 2], [2, 0]])
    assert S.is_symmetric() and not S.is_alternating()
    A = FqMatrix.from_rows(F3, [[0, 1], [2, 0]])
    assert A.is_alternating() and not A.is_symmetric()
    assert not FqMatrix.from_rows(F3, [[1, 1], [2, 0]]).is_alternating()


def test_submatrix_and_transpose():
    M = FqMatrix.from_rows(F3, [[1, 2, 0], [0, 1, 1], [2, 2, 2]])
    assert M.submatrix(2, 2).to_lists() == [[1, 2], [0, 1]]
    assert M.transpose().transpose() == M


def test_text_roundtrip():
    M = FqMatrix.from_rows(F4, [[0, 1, 2], [3, 2, 1]])
    text = dumps_matrix(M)
    assert text.splitlines()[0] == "4 2 3"
    assert loads_matrix(text) == M


def test_matvec():
    M = FqMatrix.from_rows(F3, [[1, 2], [0, 1]])
    assert M.matvec((1, 1)) == (0, 1)
    with pytest.raises(DimensionMismatch):
        M.matvec((1, 1, 1))
