from fractions import Fraction

import pytest

from ginbetti.exactla import (
    ColumnSpace,
    DenseMatrix,
    FieldSpec,
    hstack,
    kernel_basis,
    rank,
    row_echelon,
    solve_membership,
)
from ginbetti.exceptions import InvalidFieldError, NotInvertibleError, PreconditionError


@pytest.fixture
def rationals():
    return FieldSpec.rationals()


@pytest.mark.parametrize(
    "text, expected",
    [
        ("Q", FieldSpec.rationals()),
        ("QQ", FieldSpec.rationals()),
        ("Fp:32003", FieldSpec.prime(32003)),
        ("GF(7)", FieldSpec.prime(7)),
    ],
)
def test_field_parse(text, expected):
    assert FieldSpec.parse(text) == expected


@pytest.mark.parametrize("text", ["R", "Fp:9", "Fp:2", "GF(x)"])
def test_field_parse_rejects(text):
    with pytest.raises(InvalidFieldError):
        FieldSpec.parse(text)


def test_field_str():
    assert str(FieldSpec.rationals()) == "Q"
    assert str(FieldSpec.prime(7)) == "Fp:7"


def test_prime_field_convert():
    field = FieldSpec.prime(7)
    assert field.convert(Fraction(1, 2)) == 4
    assert field.convert(-1) == 6
    with pytest.raises(NotInvertibleError, match="vanishes modulo 7"):
        field.convert(Fraction(1, 7))


def test_inverse_of_zero():
    with pytest.raises(NotInvertibleError):
        FieldSpec.prime(7).inverse(0)


def test_rank_depends_on_field():
    rows = [[1, 2], [2, 1]]
    assert rank(DenseMatrix.from_rows(FieldSpec.rationals(), rows)) == 2
    assert rank(DenseMatrix.from_rows(FieldSpec.prime(3), rows)) == 1


def test_kernel_basis(rationals):
    m = DenseMatrix.from_rows(rationals, [[1, 2, 3]])
    kernel = kernel_basis(m)
    assert kernel.cols == 2
    for column in kernel.columns():
        assert m.apply(column) == (0,)


def test_inverse(rationals):
    m = DenseMatrix.from_rows(rationals, [[2, 1], [1, 1]])
    inverse = m.inverse()
    assert inverse.to_rows() == [[1, -1], [-1, 2]]
    assert (m @ inverse) == DenseMatrix.identity(rationals, 2)


def test_singular_inverse(rationals):
    with pytest.raises(NotInvertibleError, match="singular"):
        DenseMatrix.from_rows(rationals, [[1, 2], [2, 4]]).inverse()


def test_solve_membership(rationals):
    m = DenseMatrix.from_rows(rationals, [[1, 0], [0, 1], [1, 1]])
    assert solve_membership(m, [2, 3, 5]) == (2, 3)
    assert solve_membership(m, [2, 3, 4]) is None


def test_column_space_extended_dimension(rationals):
    space = ColumnSpace(DenseMatrix.from_rows(rationals, [[1], [0], [0]]))
    assert space.dimension == 1
    assert space.contains([Fraction(5), 0, 0])
    assert space.extended_dimension([[0, 1, 0], [1, 1, 0]]) == 2
    assert space.dimension == 1


def test_hstack(rationals):
    a = DenseMatrix.from_rows(rationals, [[1], [2]])
    b = DenseMatrix.from_rows(rationals, [[3, 4], [5, 6]])
    assert hstack(a, b).to_rows() == [[1, 3, 4], [2, 5, 6]]
    with pytest.raises(PreconditionError):
        hstack(a, DenseMatrix.from_rows(rationals, [[1]]))


def test_wrong_entry_count(rationals):
    with pytest.raises(PreconditionError, match="Expected 4 entries"):
        DenseMatrix(rationals, 2, 2, (1, 2, 3))


def test_to_python():
    assert FieldSpec.prime(7).to_python(Fraction(1, 2)) == 4
    assert isinstance(FieldSpec.prime(7).to_python(3), int)
    assert FieldSpec.rationals().to_python(Fraction(-3, 4)) == Fraction(-3, 4)
    assert FieldSpec.rationals().format(Fraction(-3, 4)) == "-3/4"


def test_row_echelon(rationals):
    m = DenseMatrix.from_rows(rationals, [[2, 4, 2], [1, 2, 3]], 3)
    echelon, pivots = row_echelon(m)
    assert pivots == (0, 2)
    assert echelon.to_rows() == [[1, 2, 0], [0, 0, 1]]


def test_convert_rejects_unreadable_values(rationals):
    with pytest.raises(PreconditionError, match="Cannot read"):
        rationals.convert("1/2")
