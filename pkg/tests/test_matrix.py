import pytest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from lu_general import BoundsError, FieldMismatchError, Matrix, ShapeError, float64

I3 = Matrix.identity(3)


def test_submatrix_identity_block():
    assert I3.sub(1, 2, 1, 2) == Matrix.identity(2)


def test_submatrix_trailing_block_of_singular_example():
    a = Matrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert a.sub(2, 3, 2, 3) == Matrix([[0, 1], [1, 0]])


def test_submatrix_empty_range():
    a = Matrix([[1, 2], [3, 4]])
    empty = a.sub(2, 1, 1, 2)
    assert empty.rows == 0 and empty.cols == 2


def test_submatrix_full_range_selectors():
    a = Matrix([[1, 2], [3, 4]])
    assert a.sub(None, None, None, None) == a
    assert a.sub(None, None, 2, 2) == Matrix([[2], [4]])


def test_submatrix_bounds_errors():
    a = Matrix([[1, 2], [3, 4]])
    with pytest.raises(BoundsError):
        a.sub(1, 3, 1, 2)
    with pytest.raises(BoundsError):
        a.sub(0, 1, 1, 2)
    with pytest.raises(BoundsError):
        a.sub(1, 2, 1, 5)
    with pytest.raises(BoundsError):
        a.entry(3, 1)


def test_transpose_symmetric_and_forced():
    assert Matrix([[0, 1], [1, 0]]).transpose() == Matrix([[0, 1], [1, 0]])
    assert Matrix([[1, 2], [3, 4]]).transpose() == Matrix([[1, 3], [2, 4]])


def test_transpose_empty():
    e = Matrix.zeros(0, 3)
    t = e.transpose()
    assert (t.rows, t.cols) == (3, 0)
    assert t.transpose() == e


def test_matmul_reconstructs_singular_example():
    lmat = Matrix([[0, 0], [1, 0], [0, 1]])
    umat = Matrix([[0, 0, 1], [0, 1, 0]])
    assert lmat.matmul(umat) == Matrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]])


def test_matmul_identity():
    a = Matrix([[1, 2], [3, 4]])
    assert Matrix.identity(2).matmul(a) == a
    assert a.matmul(Matrix.identity(2)) == a


def test_matmul_empty_inner_dimension_gives_zero():
    lmat = Matrix.zeros(3, 0)
    umat = Matrix.zeros(0, 3)
    assert lmat.matmul(umat) == Matrix.zeros(3, 3)


def test_matmul_dimension_mismatch():
    with pytest.raises(ShapeError):
        Matrix([[1, 2]]).matmul(Matrix([[1, 2]]))


def test_matmul_field_mismatch():
    a = Matrix([[1]])
    b = Matrix([[1.0]], float64(1e-9))
    with pytest.raises(FieldMismatchError):
        a.matmul(b)


def test_entries_are_exact_fractions():
    a = Matrix([["1/3", 2], [Fraction(-4, 6), 0]])
    assert a.entry(1, 1) == Fraction(1, 3)
    assert a.entry(2, 1) == Fraction(-2, 3)


def test_rational_field_refuses_floats():
    with pytest.raises(TypeError):
        Matrix([[0.5]])


def test_immutability_of_source_rows():
    rows = [[1, 2], [3, 4]]
    a = Matrix(rows)
    rows[0][0] = 99
    assert a.entry(1, 1) == 1


ranges = st.integers(min_value=1, max_value=5)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=5),
    data=st.data(),
)
def test_slicing_composition(n, data):
    a = Matrix([[i * n + j for j in range(n)] for i in range(n)])
    i1 = data.draw(st.integers(1, n))
    j1 = data.draw(st.integers(i1, n))
    k1 = data.draw(st.integers(1, n))
    l1 = data.draw(st.integers(k1, n))
    inner = a.sub(i1, j1, k1, l1)
    i2 = data.draw(st.integers(1, inner.rows))
    j2 = data.draw(st.integers(i2, inner.rows))
    k2 = data.draw(st.integers(1, inner.cols))
    l2 = data.draw(st.integers(k2, inner.cols))
    composed = a.sub(i1 + i2 - 1, i1 + j2 - 1, k1 + k2 - 1, k1 + l2 - 1)
    assert inner.sub(i2, j2, k2, l2) == composed


@settings(max_examples=60, deadline=None)
@given(
    rows=st.integers(min_value=0, max_value=4),
    cols=st.integers(min_value=0, max_value=4),
    data=st.data(),
)
def test_transpose_involution(rows, cols, data):
    cells = [
        [data.draw(st.integers(-3, 3)) for _ in range(cols)] for _ in range(rows)
    ]
    a = Matrix(cells, cols=cols)
    assert a.transpose().transpose() == a


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_exact_algebraic_identities(data):
    n = data.draw(st.integers(1, 3))
    frac = st.fractions(min_value=-3, max_value=3, max_denominator=3)

    def draw_matrix():
        return Matrix([[data.draw(frac) for _ in range(n)] for _ in range(n)])

    a, b, c = draw_matrix(), draw_matrix(), draw_matrix()
    assert a.matmul(b.matmul(c)) == a.matmul(b).matmul(c)
    assert a.matmul(b + c) == a.matmul(b) + a.matmul(c)
