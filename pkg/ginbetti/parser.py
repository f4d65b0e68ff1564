"""Reading polynomial expressions.

Accepted syntax::

    expr   := ["+" | "-"] term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := atom ["^" INT]
    atom   := INT | NAME | "(" expr ")"

Only integers may follow ``/``. A token scan checks this shape, so every
error carries a position; sympy's ``parse_expr`` then builds the expression,
which is read into the ring over ``QQ`` and mapped to the ring's field.
"""

import re
from tokenize import TokenError
from typing import List, NamedTuple

from sympy import Integer
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from ginbetti.exceptions import (
    ExponentOverflowError,
    ParseError,
    UnknownVariableError,
    ZeroDenominatorError,
)
from ginbetti.ring import Polynomial, RingCtx

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_TRANSFORMATIONS = standard_transformations + (convert_xor,)
_OPERAND_START = ("int", "name", "(")


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            break
        if match.group(1) is not None:
            tokens.append(Token("int", match.group(1), match.start(1)))
        elif match.group(2) is not None:
            tokens.append(Token("name", match.group(2), match.start(2)))
        elif match.group(3) is not None:
            symbol = match.group(3)
            if symbol not in "+-*^/()":
                raise ParseError(f"Unexpected character {symbol!r}", position=match.start(3))
            tokens.append(Token(symbol, symbol, match.start(3)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def _found(token: Token) -> str:
    return token.text or "end of input"


def check_tokens(ctx: RingCtx, tokens: List[Token]) -> None:
    """
    Validate the token sequence against the accepted syntax.

    :raises ParseError: at the position of the first offending token
    """
    if tokens[0].kind == "end":
        raise ParseError("Empty expression", position=0)
    depth = 0
    expect_operand = True
    for k, token in enumerate(tokens):
        previous = tokens[k - 1].kind if k else "start"
        if expect_operand:
            if token.kind in ("+", "-") and previous in ("start", "("):
                continue
            if previous in ("^", "/") and token.kind != "int":
                raise ParseError(
                    f"Expected an integer after {previous!r}, found {_found(token)!r}",
                    position=token.position,
                )
            if token.kind not in _OPERAND_START:
                raise ParseError(f"Unexpected {_found(token)!r}", position=token.position)
            if token.kind == "(":
                depth += 1
                continue
            expect_operand = False
            if token.kind == "name" and ctx.variable_index(token.text) is None:
                raise UnknownVariableError(
                    f"Unknown variable {token.text!r}", position=token.position
                )
            if previous == "/" and int(token.text) == 0:
                raise ZeroDenominatorError(
                    "Fraction with zero denominator", position=token.position
                )
            # powers of plain integers are coefficients, not exponents of the ring
            if previous == "^" and tokens[k - 2].kind != "int":
                if int(token.text) > ctx.max_exponent:
                    raise ExponentOverflowError(
                        f"Exponent {token.text} exceeds the limit {ctx.max_exponent}"
                    )
        elif token.kind == ")":
            if depth == 0:
                raise ParseError("Unexpected ')'", position=token.position)
            depth -= 1
        elif token.kind == "end":
            if depth:
                raise ParseError("Expected ')', found 'end of input'", position=token.position)
        elif token.kind in ("+", "-", "*", "/", "^"):
            if token.kind == "^" and k >= 2 and tokens[k - 2].kind == "^":
                raise ParseError("Unexpected '^'", position=token.position)
            expect_operand = True
        else:
            raise ParseError(f"Unexpected {token.text!r}", position=token.position)


def parse_poly(ctx: RingCtx, text: str) -> Polynomial:
    """
    Read a polynomial of ``ctx`` from text.

    :param ctx: ring the polynomial lives in
    :param text: expression such as ``"x1^2 - 3/4*x2*x3"``
    """
    check_tokens(ctx, tokenize(text))
    rational = ctx.rational_ring
    names = dict(zip(ctx.var_names, rational.symbols))
    try:
        expr = parse_expr(
            text,
            local_dict=names,
            global_dict={"Integer": Integer},
            transformations=_TRANSFORMATIONS,
        )
        element = rational.from_expr(expr)
    except (SyntaxError, TokenError, TypeError, ValueError) as exc:
        raise ParseError(f"Cannot read {text!r} as a polynomial: {exc}", position=0) from exc
    return Polynomial.from_dict(ctx, dict(element))


def parse_many(ctx: RingCtx, texts: List[str]) -> List[Polynomial]:
    return [parse_poly(ctx, text) for text in texts]
