"""Monomials, term orders, polynomials and linear coordinate changes.

A monomial is a tuple of ``n`` nonnegative exponents. Polynomials wrap sympy
``PolyElement`` values of a ``PolyRing`` whose domain is the field of the
ring and whose order is the ring's term order.
"""

import keyword
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.monomials import monomial_deg
from sympy.polys.orderings import MonomialOrder, grevlex, grlex, lex
from sympy.polys.rings import PolyElement, PolyRing, ring

from ginbetti.exactla import DenseMatrix, FieldSpec, Scalar, rank
from ginbetti.exceptions import (
    ExponentOverflowError,
    InvalidRingError,
    NotInvertibleError,
    PreconditionError,
)

Monomial = Tuple[int, ...]

DEFAULT_MAX_EXPONENT = 64


class TermOrder(Enum):
    DEGREVLEX: str = "degrevlex"
    DEGLEX: str = "deglex"
    LEX: str = "lex"

    @classmethod
    def parse(cls, text: str) -> "TermOrder":
        value = text.strip().lower()
        if value == "pure_lex":
            value = "lex"
        try:
            return cls(value)
        except ValueError:
            raise PreconditionError(
                f"Unknown term order {text!r}; use degrevlex, deglex or lex"
            ) from None

    @property
    def monomial_order(self) -> MonomialOrder:
        return _MONOMIAL_ORDERS[self]

    def key(self, m: Monomial) -> tuple:
        """
        Sort key: ``a > b`` in this order iff ``key(a) > key(b)``.
        """
        return self.monomial_order(m)


_MONOMIAL_ORDERS = {
    TermOrder.DEGREVLEX: grevlex,
    TermOrder.DEGLEX: grlex,
    TermOrder.LEX: lex,
}


def compare(order: TermOrder, a: Monomial, b: Monomial) -> int:
    """
    Three-way comparison: ``1`` when ``a > b``, ``0`` when equal, ``-1`` otherwise.
    """
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def max_index(u: Monomial) -> int:
    """
    Largest 1-based index of a variable dividing ``u``; 0 for the constant monomial.
    """
    for i in range(len(u) - 1, -1, -1):
        if u[i]:
            return i + 1
    return 0


@lru_cache(maxsize=4096)
def monomials_of_degree(n: int, d: int) -> Tuple[Monomial, ...]:
    """All degree-``d`` monomials in ``n`` variables, descending in lex order."""
    if d < 0:
        return ()
    if n == 1:
        return ((d,),)
    result: List[Monomial] = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            result.append((first,) + rest)
    return tuple(result)


def unit_vector(n: int, i: int) -> Monomial:
    return tuple(1 if k == i else 0 for k in range(n))


@lru_cache(maxsize=256)
def _poly_ring(names: Tuple[str, ...], field_: FieldSpec, order: TermOrder) -> PolyRing:
    return ring(names, field_.domain, order.monomial_order)[0]


@dataclass(frozen=True)
class RingCtx:
    n: int
    field: FieldSpec = field(default_factory=FieldSpec.rationals)
    var_names: Optional[Tuple[str, ...]] = None
    order: TermOrder = TermOrder.DEGREVLEX
    max_exponent: int = DEFAULT_MAX_EXPONENT

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidRingError("A ring needs at least one variable")
        if self.var_names is None:
            object.__setattr__(
                self, "var_names", tuple(f"x{i}" for i in range(1, self.n + 1))
            )
        else:
            object.__setattr__(self, "var_names", tuple(self.var_names))
        if len(self.var_names) != self.n:
            raise InvalidRingError(
                f"Expected {self.n} variable names, got {len(self.var_names)}"
            )
        if len(set(self.var_names)) != self.n:
            raise InvalidRingError("Variable names must be distinct")
        for name in self.var_names:
            if not name.isidentifier() or keyword.iskeyword(name):
                raise InvalidRingError(f"{name!r} is not a valid variable name")
        if self.max_exponent < 1:
            raise InvalidRingError("max_exponent must be positive")

    @property
    def poly_ring(self) -> PolyRing:
        return _poly_ring(self.var_names, self.field, self.order)

    @property
    def rational_ring(self) -> PolyRing:
        """Same variables and order over ``QQ``; input is read there first."""
        return _poly_ring(self.var_names, FieldSpec.rationals(), self.order)

    def with_order(self, order: TermOrder) -> "RingCtx":
        return RingCtx(self.n, self.field, self.var_names, order, self.max_exponent)

    def with_field(self, field_: FieldSpec) -> "RingCtx":
        return RingCtx(self.n, field_, self.var_names, self.order, self.max_exponent)

    def variable_index(self, name: str) -> Optional[int]:
        try:
            return self.var_names.index(name)
        except ValueError:
            return None

    def one(self) -> Monomial:
        return (0,) * self.n

    def variable(self, i: int) -> Monomial:
        return unit_vector(self.n, i)

    def format_monomial(self, m: Monomial) -> str:
        factors = []
        for name, e in zip(self.var_names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors) if factors else "1"

    def check_exponents(self, m: Monomial) -> None:
        if m and max(m) > self.max_exponent:
            raise ExponentOverflowError(
                f"Exponent {max(m)} exceeds the limit {self.max_exponent}"
            )


@dataclass(frozen=True)
class Polynomial:
    ctx: RingCtx
    element: PolyElement

    @classmethod
    def from_element(cls, ctx: RingCtx, element: PolyElement) -> "Polynomial":
        """Wrap an element of ``ctx.poly_ring`` after the exponent guard."""
        for m in element.itermonoms():
            ctx.check_exponents(m)
        return cls(ctx, element)

    @classmethod
    def from_dict(cls, ctx: RingCtx, terms: Dict[Monomial, Union[int, Fraction, Scalar]]) -> "Polynomial":
        converted = {}
        for m, c in terms.items():
            if len(m) != ctx.n:
                raise PreconditionError(
                    f"Monomial {m} does not belong to a ring with {ctx.n} variables"
                )
            value = ctx.field.convert(c)
            if value:
                converted[tuple(m)] = value
        return cls.from_element(ctx, ctx.poly_ring.from_dict(converted))

    @classmethod
    def zero(cls, ctx: RingCtx) -> "Polynomial":
        return cls(ctx, ctx.poly_ring.zero)

    @classmethod
    def constant(cls, ctx: RingCtx, c: Union[int, Fraction, Scalar]) -> "Polynomial":
        return cls.from_dict(ctx, {ctx.one(): c})

    @classmethod
    def monomial(cls, ctx: RingCtx, m: Monomial, c: Union[int, Fraction, Scalar] = 1) -> "Polynomial":
        return cls.from_dict(ctx, {tuple(m): c})

    @classmethod
    def variable(cls, ctx: RingCtx, i: int) -> "Polynomial":
        return cls(ctx, ctx.poly_ring.gens[i])

    @property
    def terms(self) -> Tuple[Tuple[Monomial, Scalar], ...]:
        """Terms descending in the ring's order."""
        return tuple(self.element.terms())

    def as_dict(self) -> Dict[Monomial, Scalar]:
        return dict(self.element)

    @property
    def is_zero(self) -> bool:
        return not self.element

    @property
    def degree(self) -> int:
        if self.is_zero:
            raise PreconditionError("The zero polynomial has no degree")
        return max(monomial_deg(m) for m in self.element.itermonoms())

    def is_homogeneous(self) -> bool:
        return len({monomial_deg(m) for m in self.element.itermonoms()}) <= 1

    def monomials(self) -> List[Monomial]:
        return self.element.monoms()

    def leading_monomial(self, order: Optional[TermOrder] = None) -> Monomial:
        if self.is_zero:
            raise PreconditionError("The zero polynomial has no leading monomial")
        if order is None or order == self.ctx.order:
            return self.element.LM
        return max(self.element.itermonoms(), key=order.key)

    def leading_coefficient(self, order: Optional[TermOrder] = None) -> Scalar:
        return self.element[self.leading_monomial(order)]

    def monic(self, order: Optional[TermOrder] = None) -> "Polynomial":
        return self.scale(self.ctx.field.inverse(self.leading_coefficient(order)))

    def scale(self, c: Union[int, Fraction, Scalar]) -> "Polynomial":
        return Polynomial(self.ctx, self.element.mul_ground(self.ctx.field.convert(c)))

    def with_ctx(self, ctx: RingCtx) -> "Polynomial":
        if ctx.n != self.ctx.n:
            raise PreconditionError("Cannot move a polynomial to a ring of other size")
        return Polynomial.from_dict(ctx, self.as_dict())

    def _is_scalar(self, other: object) -> bool:
        return isinstance(other, (int, Fraction)) or self.ctx.field.domain.of_type(other)

    def _coerce(self, other: object) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx.n != self.ctx.n or other.ctx.field != self.ctx.field:
                raise PreconditionError("Polynomials live in different rings")
            if other.ctx != self.ctx:
                return other.with_ctx(self.ctx)
            return other
        if self._is_scalar(other):
            return Polynomial.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other: object) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ctx, self.element + other.element)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ctx, -self.element)

    def __sub__(self, other: object) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ctx, self.element - other.element)

    def __rsub__(self, other: object) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: object) -> "Polynomial":
        if self._is_scalar(other):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial.from_element(self.ctx, self.element * other.element)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise PreconditionError("Only nonnegative integer powers are supported")
        # the lex-leading power of each variable survives in f^k
        top = max((max(m) for m in self.element.itermonoms()), default=0)
        if top * k > self.ctx.max_exponent:
            raise ExponentOverflowError(
                f"Exponent {top * k} exceeds the limit {self.ctx.max_exponent}"
            )
        return Polynomial(self.ctx, self.element**k)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        f = self.ctx.field
        parts: List[str] = []
        for m, c in self.terms:
            negative = not f.is_prime_field and c < 0
            magnitude = f.format(-c if negative else c)
            mono = self.ctx.format_monomial(m)
            if mono == "1":
                body = magnitude
            elif magnitude == "1":
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)


def linear_form(ctx: RingCtx, coefficients: Sequence[Union[int, Fraction, Scalar]]) -> Polynomial:
    if len(coefficients) != ctx.n:
        raise PreconditionError(f"A linear form needs {ctx.n} coefficients")
    return Polynomial.from_dict(
        ctx, {ctx.variable(i): c for i, c in enumerate(coefficients)}
    )


def linear_coefficients(f: Polynomial) -> Tuple[Scalar, ...]:
    """Coefficient vector of a linear form."""
    coefficients = [f.ctx.field.zero] * f.ctx.n
    for m, c in f.element.items():
        if monomial_deg(m) != 1:
            raise PreconditionError(f"{f} is not a linear form")
        coefficients[m.index(1)] = c
    return tuple(coefficients)


@dataclass(frozen=True)
class LinearChange:
    """``x_i`` is sent to the linear form whose coefficients are row ``i``."""

    matrix: DenseMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if m.rows != m.cols or m.rows == 0:
            raise NotInvertibleError("A coordinate change needs a square matrix")
        if rank(m) != m.rows:
            raise NotInvertibleError("The coordinate change is not invertible")

    @classmethod
    def identity(cls, ctx: RingCtx) -> "LinearChange":
        return cls(DenseMatrix.identity(ctx.field, ctx.n))

    @classmethod
    def from_rows(cls, ctx: RingCtx, rows: Sequence[Sequence[Union[int, Fraction]]]) -> "LinearChange":
        return cls(DenseMatrix.from_rows(ctx.field, rows, ctx.n))

    @property
    def n(self) -> int:
        return self.matrix.rows

    def inverse(self) -> "LinearChange":
        return LinearChange(self.matrix.inverse())

    def forms(self, ctx: RingCtx) -> List[Polynomial]:
        return [linear_form(ctx, self.matrix.row(i)) for i in range(self.n)]

    def apply(self, f: Polynomial) -> Polynomial:
        return apply_change(f, self)


def apply_change(f: Polynomial, g: LinearChange) -> Polynomial:
    ctx = f.ctx
    if g.n != ctx.n:
        raise PreconditionError("Coordinate change and ring have different sizes")
    if g.matrix.field != ctx.field:
        raise PreconditionError("Coordinate change and ring use different fields")
    images = [form.element for form in g.forms(ctx)]
    substituted = f.element.compose(list(zip(ctx.poly_ring.gens, images)))
    return Polynomial.from_element(ctx, substituted)
