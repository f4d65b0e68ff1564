from fractions import Fraction

import pytest

from ginbetti.exactla import FieldSpec
from ginbetti.exceptions import (
    ExponentOverflowError,
    InvalidRingError,
    NotInvertibleError,
    PreconditionError,
)
from ginbetti.parser import parse_poly
from ginbetti.ring import (
    LinearChange,
    Polynomial,
    RingCtx,
    TermOrder,
    apply_change,
    compare,
    linear_coefficients,
    linear_form,
    max_index,
    monomials_of_degree,
)


def test_term_order_parse():
    assert TermOrder.parse(" DegRevLex ") == TermOrder.DEGREVLEX
    assert TermOrder.parse("pure_lex") == TermOrder.LEX
    with pytest.raises(PreconditionError, match="Unknown term order"):
        TermOrder.parse("weighted")


@pytest.mark.parametrize(
    "order, expected",
    [(TermOrder.DEGREVLEX, 1), (TermOrder.DEGLEX, -1), (TermOrder.LEX, -1)],
)
def test_compare_square_against_mixed(order, expected):
    # x2^2 against x1*x3
    assert compare(order, (0, 2, 0), (1, 0, 1)) == expected


def test_lower_degree_wins_only_in_lex():
    assert compare(TermOrder.LEX, (1, 0), (0, 3)) == 1
    assert compare(TermOrder.DEGREVLEX, (1, 0), (0, 3)) == -1


def test_monomials_of_degree():
    quadrics = monomials_of_degree(3, 2)
    assert len(quadrics) == 6
    assert quadrics[0] == (2, 0, 0)
    assert quadrics[-1] == (0, 0, 2)


def test_max_index():
    assert max_index((0, 1, 0)) == 2
    assert max_index((1, 0, 2)) == 3
    assert max_index((0, 0, 0)) == 0


def test_ring_defaults():
    ctx = RingCtx(3)
    assert ctx.var_names == ("x1", "x2", "x3")
    assert ctx.order == TermOrder.DEGREVLEX
    assert ctx.format_monomial((2, 0, 1)) == "x1^2*x3"
    assert ctx.format_monomial((0, 0, 0)) == "1"


@pytest.mark.parametrize(
    "kwargs, message",
    [
        ({"n": 0}, "at least one variable"),
        ({"n": 2, "var_names": ("x", "x")}, "distinct"),
        ({"n": 2, "var_names": ("x",)}, "Expected 2 variable names"),
        ({"n": 1, "var_names": ("1x",)}, "not a valid variable name"),
    ],
)
def test_ring_rejects(kwargs, message):
    with pytest.raises(InvalidRingError, match=message):
        RingCtx(**kwargs)


def test_polynomial_arithmetic(ring2):
    x, y = Polynomial.variable(ring2, 0), Polynomial.variable(ring2, 1)
    assert str((x + y) ** 2) == "x1^2 + 2*x1*x2 + x2^2"
    assert (x - x).is_zero
    assert str(2 - x * y) == "-x1*x2 + 2"
    assert ((x + y) ** 2).is_homogeneous()
    assert not (x * y + 1).is_homogeneous()


def test_field_elements_scale_polynomials():
    ctx = RingCtx(2, FieldSpec.prime(7))
    half = ctx.field.convert(Fraction(1, 2))
    x = Polynomial.variable(ctx, 0)
    assert str(half * x) == "4*x1"
    assert str(x + half) == "x1 + 4"


def test_leading_monomial_follows_order(ring3):
    f = Polynomial.from_dict(ring3, {(0, 2, 0): 1, (1, 0, 1): 1})
    assert f.leading_monomial() == (0, 2, 0)
    assert f.leading_monomial(TermOrder.LEX) == (1, 0, 1)


def test_exponent_guard():
    ctx = RingCtx(1, max_exponent=4)
    with pytest.raises(ExponentOverflowError, match="exceeds the limit 4"):
        Polynomial.variable(ctx, 0) ** 5


def test_polynomials_from_other_rings(ring2, ring3):
    with pytest.raises(PreconditionError, match="different rings"):
        Polynomial.variable(ring2, 0) + Polynomial.variable(ring3, 0)


def test_linear_change(ring2):
    swap = LinearChange.from_rows(ring2, [[0, 1], [1, 0]])
    square = Polynomial.monomial(ring2, (2, 0))
    assert swap.apply(square) == Polynomial.monomial(ring2, (0, 2))
    assert swap.inverse().apply(swap.apply(square)) == square


def test_singular_change(ring2):
    with pytest.raises(NotInvertibleError):
        LinearChange.from_rows(ring2, [[1, 1], [2, 2]])


def test_linear_form_round_trip(ring3):
    form = linear_form(ring3, [1, 0, -2])
    assert str(form) == "x1 - 2*x3"
    assert linear_coefficients(form) == (1, 0, -2)
    with pytest.raises(PreconditionError, match="not a linear form"):
        linear_coefficients(form * form)


def test_apply_change_round_trip(ring2):
    shear = LinearChange.from_rows(ring2, [[1, 1], [0, 1]])
    f = parse_poly(ring2, "x1^2 + 3*x1*x2 - x2^2")
    moved = apply_change(f, shear)
    assert moved != f
    assert moved.is_homogeneous()
    assert apply_change(moved, shear.inverse()) == f
