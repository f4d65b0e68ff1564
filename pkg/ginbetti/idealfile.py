"""Line-oriented ideal files.

::

    # comments run to the end of the line
    ring: n=3 field=Q vars=x,y,z
    order: degrevlex
    gens:
    x^2
    y^2 - x*z

``field`` defaults to ``Q``, ``vars`` to ``x1..xn`` and ``order`` to degrevlex.
Every line after ``gens:`` holds one homogeneous generator.
"""

import logging
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ginbetti.exactla import FieldSpec
from ginbetti.exceptions import (
    IdealFileError,
    InputError,
    NotHomogeneousError,
    ParseError,
)
from ginbetti.groebner import GradedIdeal
from ginbetti.monideal import MonomialIdeal
from ginbetti.parser import parse_poly
from ginbetti.ring import DEFAULT_MAX_EXPONENT, Polynomial, RingCtx, TermOrder

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"(?P<key>[A-Za-z_]+)\s*:\s*(?P<value>.*)")
_RING_KEYS = ("n", "field", "vars")


@dataclass(frozen=True)
class IdealFile:
    ctx: RingCtx
    generators: Tuple[Polynomial, ...]
    path: Optional[str] = None

    @property
    def ideal(self) -> GradedIdeal:
        return GradedIdeal.from_polynomials(self.ctx, self.generators)

    @property
    def is_monomial(self) -> bool:
        return self.ideal.is_monomial

    def monomial_ideal(self) -> MonomialIdeal:
        return self.ideal.to_monomial_ideal()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "path": self.path,
            "n": self.ctx.n,
            "field": str(self.ctx.field),
            "order": self.ctx.order.value,
            "variables": list(self.ctx.var_names),
            "generators": [str(g) for g in self.generators],
        }


def _parse_ring(
    value: str, line: int, column: int
) -> Tuple[int, FieldSpec, Optional[List[str]]]:
    settings: Dict[str, Tuple[str, int]] = {}
    for match in re.finditer(r"\S+", value):
        token, where = match.group(), column + match.start()
        key, sep, text = token.partition("=")
        if not sep or not text:
            raise IdealFileError(f"Expected key=value, found {token!r}", line=line, column=where)
        if key not in _RING_KEYS:
            raise IdealFileError(
                f"Unknown ring setting {key!r}; use n, field or vars", line=line, column=where
            )
        settings[key] = (text, where)

    if "n" not in settings:
        raise IdealFileError("The ring header needs n=<int>", line=line, column=column)
    text, where = settings["n"]
    if not text.isdigit() or int(text) < 1:
        raise IdealFileError(
            f"n must be a positive integer, found {text!r}", line=line, column=where
        )
    n = int(text)

    field_ = FieldSpec.rationals()
    if "field" in settings:
        text, where = settings["field"]
        try:
            field_ = FieldSpec.parse(text)
        except InputError as exc:
            raise IdealFileError(str(exc), line=line, column=where) from exc

    names = None
    if "vars" in settings:
        text, where = settings["vars"]
        names = text.split(",")
        if len(names) != n:
            raise IdealFileError(
                f"Expected {n} variable names, found {len(names)}", line=line, column=where
            )
    return n, field_, names


def _parse_generator(ctx: RingCtx, text: str, line: int, column: int) -> Polynomial:
    # a single trailing comma separates generators written as a list
    if text.endswith(","):
        text = text[:-1].rstrip()
    try:
        poly = parse_poly(ctx, text)
    except ParseError as exc:
        offset = exc.position if exc.position is not None else 0
        raise type(exc)(exc.detail, line=line, column=column + offset) from exc
    if not poly.is_homogeneous():
        raise NotHomogeneousError(
            f"Generator {text!r} is not homogeneous", line=line, column=column
        )
    return poly


def parse_ideal_file(
    text: str,
    field: Optional[FieldSpec] = None,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
    path: Optional[str] = None,
) -> IdealFile:
    """
    Read an ideal file.

    :param text: file contents
    :param field: overrides the field of the ``ring:`` header
    :param max_exponent: exponent guard of the ring
    :param path: recorded in the result for reports
    """
    ring: Optional[Tuple[int, FieldSpec, Optional[List[str]]]] = None
    ring_line = 0
    order = TermOrder.DEGREVLEX
    pending: List[Tuple[int, int, str]] = []
    in_gens = False

    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if not stripped:
            continue
        column = len(body) - len(stripped) + 1
        if in_gens:
            pending.append((number, column, stripped))
            continue
        match = _HEADER.fullmatch(stripped)
        if match is None:
            raise IdealFileError(
                f"Expected 'ring:', 'order:' or 'gens:', found {stripped!r}",
                line=number,
                column=column,
            )
        key, value = match.group("key").lower(), match.group("value").strip()
        value_column = column + match.start("value")
        if key == "ring":
            ring, ring_line = _parse_ring(value, number, value_column), number
        elif key == "order":
            try:
                order = TermOrder.parse(value)
            except InputError as exc:
                raise IdealFileError(str(exc), line=number, column=value_column) from exc
        elif key == "gens":
            in_gens = True
            if value:
                pending.append((number, value_column, value))
        else:
            raise IdealFileError(f"Unknown header {key!r}", line=number, column=column)

    if ring is None:
        raise IdealFileError("Missing 'ring:' header", line=1, column=1)
    if not in_gens:
        raise IdealFileError("Missing 'gens:' section", line=ring_line, column=1)

    n, field_, names = ring
    try:
        ctx = RingCtx(n, field if field is not None else field_, names, order, max_exponent)
    except InputError as exc:
        raise IdealFileError(str(exc), line=ring_line, column=1) from exc
    generators = tuple(_parse_generator(ctx, t, line, col) for line, col, t in pending)
    logger.debug("read %d generators in %d variables", len(generators), n)
    return IdealFile(ctx, generators, path)


def load_ideal_file(
    path: str,
    field: Optional[FieldSpec] = None,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
) -> IdealFile:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise IdealFileError(f"Cannot read {path}: {exc.strerror}") from exc
    return parse_ideal_file(text, field, max_exponent, path)


def load_ideal_files(
    paths: Sequence[str],
    field: Optional[FieldSpec] = None,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
) -> List[IdealFile]:
    return [load_ideal_file(path, field, max_exponent) for path in paths]
