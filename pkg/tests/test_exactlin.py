from fractions import Fraction

import pytest
import sympy
from sympy import GF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, strategies as st

from fatpoints import exactlin
from fatpoints.exactlin import EchelonBasis, ExactMatrix, FieldSpec

QQ = FieldSpec.rational()
GF7 = FieldSpec.prime(7)
BIG = FieldSpec.prime(2147483647)

small_ints = st.integers(min_value=-5, max_value=5)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_field_validation():
    with pytest.raises(ValueError):
        FieldSpec.prime(15)
    with pytest.raises(ValueError):
        FieldSpec("rational", 5)
    assert FieldSpec.from_json({"kind": "prime", "p": 7}) == GF7
    assert GF7.to_json() == {"kind": "prime", "p": 7}
    assert QQ.to_json() == {"kind": "rational"}


def test_element_coercion():
    assert QQ.element("3/4") == Fraction(3, 4)
    assert GF7.element("1/2") == 4
    assert GF7.element(-1) == 6
    assert GF7.inv(3) == 5
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))


def test_rank_examples():
    M = ExactMatrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert exactlin.rank(M) == 2
    assert exactlin.rank(ExactMatrix.from_rows(GF7, [[1, 2], [4, 1]])) == 1  # 4*[1,2] = [4,1] mod 7
    assert exactlin.rank(ExactMatrix.zeros(QQ, 3, 4)) == 0
    assert exactlin.rank(ExactMatrix.identity(BIG, 5)) == 5


@given(matrices())
def test_rank_matches_sympy(rows):
    assert exactlin.rank(ExactMatrix.from_rows(QQ, rows)) == sympy.Matrix(rows).rank()


@given(matrices())
def test_rank_mod_p_matches_sympy_over_gf(rows):
    # independent oracle: sympy's rank over GF(7)
    dm = DomainMatrix([[GF(7)(x) for x in row] for row in rows], (len(rows), len(rows[0])), GF(7))
    assert exactlin.rank(ExactMatrix.from_rows(GF7, rows)) == dm.rank()


@given(matrices(), st.sampled_from([QQ, GF7, BIG]))
def test_nullspace_is_kernel_of_right_size(rows, field):
    M = ExactMatrix.from_rows(field, rows)
    basis = exactlin.nullspace_basis(M)
    assert len(basis) == M.ncols - exactlin.rank(M)
    for v in basis:
        assert all(x == 0 for x in M.apply(v))
    if basis:
        assert exactlin.rank(ExactMatrix(field, tuple(basis), M.ncols)) == len(basis)


@given(matrices(), st.lists(small_ints, min_size=6, max_size=6))
def test_solve_consistent(rows, coeffs):
    M = ExactMatrix.from_rows(QQ, rows)
    x = [QQ.element(c) for c in coeffs[:M.ncols]]
    b = M.apply(x)
    sol = exactlin.solve(M, b)
    assert sol is not None and M.apply(sol) == b


def test_solve_inconsistent():
    M = ExactMatrix.from_rows(QQ, [[1, 1], [2, 2]])
    assert exactlin.solve(M, [1, 3]) is None


@given(matrices(), st.sampled_from([QQ, GF7]))
def test_echelon_basis_tracks_rank(rows, field):
    eb = EchelonBasis(field, len(rows[0]))
    added = [eb.add([field.element(x) for x in row]) for row in rows]
    M = ExactMatrix.from_rows(field, rows)
    assert len(eb) == exactlin.rank(M) == sum(added)
    for row in rows:
        assert eb.contains([field.element(x) for x in row])
        assert exactlin.in_row_span(M, [field.element(x) for x in row])


def test_rref_pivots_deterministic():
    M = ExactMatrix.from_rows(QQ, [[0, 2, 4], [0, 1, 2], [1, 0, 0]])
    rows, piv = exactlin.rref(M)
    assert piv == [0, 1]
    assert rows == [[1, 0, 0], [0, 1, 2]]
