from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from homotopes.linalg import (GF, QQ, Echelon, FieldSpec, Matrix, Mod, block_diag, invert, is_prime,
                              kernel_basis, rank, rref, solve, solve_many, span)

small = st.integers(-4, 4)


def matrices(n=st.integers(1, 4), m=st.integers(1, 4), field=QQ):
    return st.tuples(n, m).flatmap(lambda s: st.lists(
        st.lists(small, min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0])).map(
        lambda rows: Matrix(rows, field))


def test_mod_arithmetic():
    a, b = Mod(3, 7), Mod(5, 7)
    assert a + b == Mod(1, 7)
    assert a * b == Mod(1, 7)
    assert a / b == Mod(3 * 3, 7)
    assert -a == Mod(4, 7)
    assert a ** 6 == Mod(1, 7)
    with pytest.raises(ZeroDivisionError):
        a / Mod(0, 7)


def test_field_parsing():
    assert QQ.parse("-7/2") == Fraction(-7, 2)
    assert GF(5).parse("1/2") == Mod(3, 5)
    with pytest.raises(ValueError):
        QQ.parse("x")
    with pytest.raises(ValueError):
        GF(5).parse("1/5")
    with pytest.raises(ValueError):
        FieldSpec(6)
    assert FieldSpec.from_string("fp:101") == GF(101)
    assert FieldSpec.from_string("rationals") == QQ
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rref_example():
    R, piv = rref(Matrix([[1, 2, 3], [2, 4, 7]], QQ))
    assert piv == [0, 2]
    assert R.rows == [[1, 2, 0], [0, 0, 1]]


def test_invert_and_solve():
    M = Matrix([[2, 1], [1, 1]], QQ)
    assert invert(M) == Matrix([[1, -1], [-1, 2]], QQ)
    assert invert(Matrix([[1, 2], [2, 4]], QQ)) is None
    assert solve(Matrix([[1, 2], [2, 4]], QQ), [1, 3]) is None
    assert solve(M, [3, 2]) == [1, 1]


def test_block_diag():
    B = block_diag([Matrix([[1]], QQ), Matrix([[2, 3], [4, 5]], QQ)], QQ)
    assert B.rows == [[1, 0, 0], [0, 2, 3], [0, 4, 5]]


@given(matrices())
def test_rank_nullity(M):
    K = kernel_basis(M)
    assert rank(M) + len(K) == M.ncols
    for v in K:
        assert not any(M.apply(v))


@given(matrices(field=GF(7)).map(lambda M: Matrix(M.rows, GF(7))))
def test_rank_nullity_mod_p(M):
    assert rank(M) + len(kernel_basis(M)) == M.ncols


@given(matrices(), st.data())
def test_solve_consistent(M, data):
    x = data.draw(st.lists(small, min_size=M.ncols, max_size=M.ncols))
    b = M.apply([Fraction(v) for v in x])
    sol = solve(M, b)
    assert sol is not None and M.apply(sol) == b


@given(matrices(n=st.just(3), m=st.just(3)))
def test_inverse_roundtrip(M):
    X = invert(M)
    if rank(M) == 3:
        assert X is not None and M @ X == Matrix.identity(3, QQ) and X @ M == Matrix.identity(3, QQ)
    else:
        assert X is None


@given(matrices(n=st.just(3)), matrices(m=st.just(2)))
def test_solve_many_matches_columns(A, B):
    if B.nrows != A.nrows:
        B = Matrix(B.rows[:1] * A.nrows, QQ)
    X = solve_many(A, B)
    cols = [solve(A, B.column(j)) for j in range(B.ncols)]
    assert (X is None) == any(c is None for c in cols)
    if X is not None:
        assert A @ X == B


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=6), st.lists(small, min_size=4, max_size=4))
def test_echelon_membership(vectors, v):
    E = span(vectors, 4, QQ)
    assert E.rank == rank(Matrix(vectors, QQ, 4)) if vectors else E.rank == 0
    assert all(E.contains(w) for w in vectors)
    assert E.contains(v) == (span(vectors + [v], 4, QQ).rank == E.rank)
    q = E.quotient_coords(v)
    assert len(q) == 4 - E.rank


def test_echelon_free_columns():
    E = Echelon(3, QQ)
    E.add([1, 1, 0])
    assert E.pivots == [0]
    assert E.free_columns() == [1, 2]
    assert len(E.null_space()) == 2
