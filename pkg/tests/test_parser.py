import pytest

from ginbetti.exactla import FieldSpec
from ginbetti.exceptions import (
    ExponentOverflowError,
    ParseError,
    UnknownVariableError,
    ZeroDenominatorError,
)
from ginbetti.parser import parse_many, parse_poly, tokenize
from ginbetti.ring import RingCtx


def test_parse_rational_coefficients(ring3):
    assert str(parse_poly(ring3, "x1^2 - 3/4*x2*x3")) == "x1^2 - 3/4*x2*x3"


def test_parse_parentheses_and_signs(ring2):
    assert str(parse_poly(ring2, "2*(x1 + x2)")) == "2*x1 + 2*x2"
    assert str(parse_poly(ring2, "-(x1 - x2)^2")) == "-x1^2 + 2*x1*x2 - x2^2"


def test_parse_custom_names():
    ctx = RingCtx(3, var_names=("x", "y", "z"))
    assert str(parse_poly(ctx, "y^2 - x*z")) == "y^2 - x*z"


def test_parse_over_prime_field():
    ctx = RingCtx(1, FieldSpec.prime(7))
    assert str(parse_poly(ctx, "1/2*x1")) == "4*x1"


def test_unknown_variable(ring2):
    with pytest.raises(UnknownVariableError, match="position 5: Unknown variable 'y'") as info:
        parse_poly(ring2, "x1 + y")
    assert info.value.position == 5


def test_zero_denominator(ring2):
    with pytest.raises(ZeroDenominatorError):
        parse_poly(ring2, "1/0*x1")


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "Empty expression"),
        ("x1 +", "end of input"),
        ("x1 $ x2", "Unexpected character"),
        ("(x1 + x2", "Expected"),
        ("x1 x2", "Unexpected 'x2'"),
        ("x1/x2", "Expected an integer after '/', found 'x2'"),
        ("x1^x2", "Expected an integer after '\\^'"),
        ("x1^2^3", "Unexpected '\\^'"),
        ("x1)", "Unexpected '\\)'"),
    ],
)
def test_parse_errors(ring2, text, message):
    with pytest.raises(ParseError, match=message):
        parse_poly(ring2, text)


def test_tokenize_positions():
    tokens = tokenize("x1^2 + 3")
    assert [t.kind for t in tokens] == ["name", "^", "int", "+", "int", "end"]
    assert tokens[3].position == 5


def test_parse_many(ring2):
    assert [str(f) for f in parse_many(ring2, ["x1", "x2^3"])] == ["x1", "x2^3"]


def test_exponent_limit(ring2):
    with pytest.raises(ExponentOverflowError, match="Exponent 65 exceeds the limit 64"):
        parse_poly(ring2, "x1^65")


def test_integer_powers_are_coefficients(ring2):
    assert str(parse_poly(ring2, "2^70*x1 - 2^70*x1 + x2")) == "x2"


def test_parse_error_position(ring2):
    with pytest.raises(ParseError) as info:
        parse_poly(ring2, "x1 + 3/x2")
    assert info.value.position == 7
