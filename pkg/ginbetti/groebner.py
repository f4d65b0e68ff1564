"""Buchberger's algorithm, normal forms and Hilbert data of monomial quotients.

Arithmetic runs on sympy ``PolyElement`` values; the pair bookkeeping and the
degree guard are ours.
"""

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.polys.monomials import (
    monomial_deg,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)
from sympy.polys.rings import PolyElement

from ginbetti.exactla import DenseMatrix, FieldSpec, solve_membership
from ginbetti.exceptions import (
    DegreeGuardError,
    InterpolationError,
    NotHomogeneousError,
    PreconditionError,
)
from ginbetti.monideal import MonomialIdeal, is_stable, minimalize
from ginbetti.parser import parse_poly
from ginbetti.ring import (
    LinearChange,
    Monomial,
    Polynomial,
    RingCtx,
    TermOrder,
    apply_change,
    monomials_of_degree,
)

logger = logging.getLogger(__name__)

DEFAULT_DEGREE_GUARD = 40

_degree_guard: ContextVar[int] = ContextVar("degree_guard", default=DEFAULT_DEGREE_GUARD)


@contextmanager
def degree_guard(limit: int) -> Iterator[int]:
    """
    Bound the degree of S-pairs that ``buchberger`` may process inside the block.
    """
    if limit < 1:
        raise PreconditionError("The degree guard must be positive")
    token = _degree_guard.set(limit)
    try:
        yield limit
    finally:
        _degree_guard.reset(token)


def active_degree_guard() -> int:
    return _degree_guard.get()


@dataclass(frozen=True)
class GradedIdeal:
    ctx: RingCtx
    generators: Tuple[Polynomial, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        for f in self.generators:
            if f.ctx.n != self.ctx.n or f.ctx.field != self.ctx.field:
                raise PreconditionError(f"Generator {f} lives in another ring")
            if f.is_zero:
                raise PreconditionError("Generators must be nonzero")
            if not f.is_homogeneous():
                raise NotHomogeneousError(f"Generator {f} is not homogeneous")

    @classmethod
    def from_polynomials(cls, ctx: RingCtx, polys: Iterable[Polynomial]) -> "GradedIdeal":
        """Drops zero polynomials."""
        return cls(ctx, tuple(f for f in polys if not f.is_zero))

    @classmethod
    def from_strings(cls, ctx: RingCtx, texts: Iterable[str]) -> "GradedIdeal":
        return cls.from_polynomials(ctx, (parse_poly(ctx, t) for t in texts))

    @classmethod
    def from_monomial_ideal(cls, ideal: MonomialIdeal) -> "GradedIdeal":
        return cls(ideal.ctx, tuple(Polynomial.monomial(ideal.ctx, g) for g in ideal.gens))

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_monomial(self) -> bool:
        return all(len(f.terms) == 1 for f in self.generators)

    def to_monomial_ideal(self) -> MonomialIdeal:
        if not self.is_monomial:
            raise PreconditionError("The ideal is not generated by monomials")
        return minimalize((f.terms[0][0] for f in self.generators), self.ctx)

    @property
    def degrees(self) -> List[int]:
        return [f.degree for f in self.generators]

    @property
    def min_degree(self) -> int:
        if self.is_zero:
            raise PreconditionError("The zero ideal has no generator degrees")
        return min(self.degrees)

    @property
    def max_degree(self) -> int:
        if self.is_zero:
            raise PreconditionError("The zero ideal has no generator degrees")
        return max(self.degrees)

    def __add__(self, other: "GradedIdeal") -> "GradedIdeal":
        return GradedIdeal(self.ctx, self.generators + other.generators)

    def with_forms(self, forms: Sequence[Polynomial]) -> "GradedIdeal":
        return GradedIdeal.from_polynomials(self.ctx, self.generators + tuple(forms))

    def apply_change(self, g: LinearChange) -> "GradedIdeal":
        return GradedIdeal.from_polynomials(
            self.ctx, (apply_change(f, g) for f in self.generators)
        )

    def generator_strings(self) -> List[str]:
        return [str(f) for f in self.generators]

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(self.generator_strings()) + ")"


def _by_degree_then_order(elements: Iterable[PolyElement], order: TermOrder) -> List[PolyElement]:
    """Ascending degree of the leading monomial, descending order within a degree."""
    ordered = sorted(elements, key=lambda f: order.key(f.LM), reverse=True)
    return sorted(ordered, key=lambda f: monomial_deg(f.LM))


@dataclass(frozen=True)
class GroebnerBasis:
    ctx: RingCtx
    order: TermOrder
    elements: Tuple[Polynomial, ...]
    source: Tuple[Polynomial, ...] = ()

    @cached_property
    def _reducers(self) -> List[PolyElement]:
        return [f.element for f in self.elements]

    @property
    def leading_monomials(self) -> List[Monomial]:
        return [f.LM for f in self._reducers]

    @property
    def is_unit(self) -> bool:
        return any(monomial_deg(lead) == 0 for lead in self.leading_monomials)

    def _lift(self, f: Polynomial) -> PolyElement:
        if f.ctx != self.ctx:
            f = f.with_ctx(self.ctx)
        return f.element

    def normal_form(self, f: Polynomial) -> Polynomial:
        remainder = self._lift(f).rem(self._reducers) if self._reducers else self._lift(f)
        return Polynomial(self.ctx, remainder)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero

    def contains_ideal(self, ideal: GradedIdeal) -> bool:
        return all(self.contains(f) for f in ideal.generators)

    def reduce_all(self, fs: Iterable[Polynomial]) -> List[Polynomial]:
        return [self.normal_form(f) for f in fs]

    @cached_property
    def initial_ideal(self) -> MonomialIdeal:
        return minimalize(self.leading_monomials, self.ctx)

    def degree_basis(self, d: int) -> List[Polynomial]:
        """
        Basis of the degree ``d`` part of the ideal: ``u - NF(u)`` for every
        monomial ``u`` of degree ``d`` in the initial ideal.
        """
        basis = []
        for u in self.initial_ideal.degree_part(d):
            monomial = Polynomial.monomial(self.ctx, u)
            basis.append(monomial - self.normal_form(monomial))
        return basis

    def __str__(self) -> str:
        return "{" + ", ".join(str(f) for f in self.elements) + "}"


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


class _PairQueue:
    """Critical pairs with Gebauer-Moeller pruning and the normal selection."""

    def __init__(self, order: TermOrder) -> None:
        self._order = order
        self.polys: List[PolyElement] = []
        self.basis: List[int] = []
        self.pairs: List[Tuple[int, int]] = []

    def lead(self, i: int) -> Monomial:
        return self.polys[i].LM

    def lcm(self, pair: Tuple[int, int]) -> Monomial:
        return monomial_lcm(self.lead(pair[0]), self.lead(pair[1]))

    def reducers(self) -> List[PolyElement]:
        return [self.polys[k] for k in self.basis]

    def select(self) -> Tuple[int, int]:
        key = self._order.key
        best = min(
            self.pairs,
            key=lambda pr: (monomial_deg(self.lcm(pr)), key(self.lcm(pr)), pr),
        )
        self.pairs.remove(best)
        return best

    def add(self, h: PolyElement) -> None:
        ih = len(self.polys)
        self.polys.append(h)
        mh = h.LM

        candidates = list(self.basis)
        kept: List[Tuple[int, int]] = []
        while candidates:
            ig = candidates.pop()
            mg = self.lead(ig)
            lcm_hg = monomial_lcm(mh, mg)

            def lcm_divides(ip: int) -> bool:
                return monomial_divides(monomial_lcm(mh, self.lead(ip)), lcm_hg)

            if monomial_mul(mh, mg) == lcm_hg or (
                not any(lcm_divides(ip) for ip in candidates)
                and not any(lcm_divides(pr[1]) for pr in kept)
            ):
                kept.append((ih, ig))

        # coprime leading monomials reduce to zero
        fresh = [
            pr
            for pr in kept
            if monomial_mul(mh, self.lead(pr[1])) != monomial_lcm(mh, self.lead(pr[1]))
        ]

        old = []
        for ig1, ig2 in self.pairs:
            lcm12 = monomial_lcm(self.lead(ig1), self.lead(ig2))
            if (
                not monomial_divides(mh, lcm12)
                or monomial_lcm(self.lead(ig1), mh) == lcm12
                or monomial_lcm(self.lead(ig2), mh) == lcm12
            ):
                old.append((ig1, ig2))
        self.pairs = old + fresh

        self.basis = [ig for ig in self.basis if not monomial_divides(mh, self.lead(ig))]
        self.basis.append(ih)


def _s_polynomial(f: PolyElement, g: PolyElement) -> PolyElement:
    """S-polynomial of two monic polynomials."""
    lcm = monomial_lcm(f.LM, g.LM)
    return f.mul_monom(monomial_div(lcm, f.LM)) - g.mul_monom(monomial_div(lcm, g.LM))


def _reduce(f: PolyElement, reducers: List[PolyElement]) -> PolyElement:
    return f.rem(reducers) if reducers else f


def buchberger(
    ideal: GradedIdeal,
    order: Optional[TermOrder] = None,
    degree_limit: Optional[int] = None,
) -> GroebnerBasis:
    """
    Reduced Groebner basis of a graded ideal.

    :param ideal: homogeneous generators
    :param order: term order, defaults to the ring's order
    :param degree_limit: largest S-pair degree allowed, defaults to the active degree guard
    """
    order = ideal.ctx.order if order is None else order
    limit = active_degree_guard() if degree_limit is None else degree_limit
    ctx = ideal.ctx.with_order(order)

    if ideal.is_monomial:
        mono = ideal.to_monomial_ideal()
        elements = _by_degree_then_order(
            (Polynomial.monomial(ctx, g).element for g in mono.gens), order
        )
        return GroebnerBasis(
            ctx, order, tuple(Polynomial(ctx, f) for f in elements), ideal.generators
        )

    queue = _PairQueue(order)
    inputs = _by_degree_then_order(
        (f.with_ctx(ctx).element for f in ideal.generators), order
    )
    for f in inputs:
        h = _reduce(f, queue.reducers())
        if h:
            queue.add(h.monic())

    processed = 0
    while queue.pairs:
        i, j = queue.select()
        lcm_degree = monomial_deg(queue.lcm((i, j)))
        if lcm_degree > limit:
            raise DegreeGuardError(
                f"S-pair of degree {lcm_degree} exceeds the degree guard {limit}"
            )
        h = _reduce(_s_polynomial(queue.polys[i], queue.polys[j]), queue.reducers())
        processed += 1
        if h:
            queue.add(h.monic())
            logger.debug("new basis element in degree %d", lcm_degree)

    minimal = _by_degree_then_order(queue.reducers(), order)
    reduced = []
    for k, f in enumerate(minimal):
        # leading monomials of a minimal basis divide no other, so only tails move
        reduced.append(_reduce(f, minimal[:k] + minimal[k + 1 :]))
    logger.debug(
        "buchberger: %d pairs reduced, %d basis elements", processed, len(reduced)
    )
    return GroebnerBasis(
        ctx, order, tuple(Polynomial.from_element(ctx, f) for f in reduced), ideal.generators
    )


def initial_ideal(ideal: GradedIdeal, order: Optional[TermOrder] = None) -> MonomialIdeal:
    return buchberger(ideal, order).initial_ideal


def std_monomials(ideal: MonomialIdeal, d: int) -> List[Monomial]:
    """Degree ``d`` monomials outside the ideal, descending in the ring's order."""
    if d < 0:
        raise PreconditionError("Degree must be nonnegative")
    outside = [m for m in monomials_of_degree(ideal.n, d) if not ideal.contains_monomial(m)]
    outside.sort(key=ideal.ctx.order.key, reverse=True)
    return outside


def hilbert_function(ideal: MonomialIdeal, d_max: int) -> List[int]:
    """``dim (S/J)_d`` for ``d = 0..d_max``."""
    return [
        sum(1 for m in monomials_of_degree(ideal.n, d) if not ideal.contains_monomial(m))
        for d in range(d_max + 1)
    ]


def ideal_dimensions(hf: Sequence[int], n: int) -> List[int]:
    """Turn a quotient Hilbert function into ``dim I_d``."""
    return [comb(n - 1 + d, n - 1) - h for d, h in enumerate(hf)]


@dataclass(frozen=True)
class HilbertPolynomial:
    """Coefficients in the power basis: ``coefficients[k]`` multiplies ``d^k``."""

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coefficients = [Fraction(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    def __call__(self, d: int) -> Fraction:
        return sum((c * d**k for k, c in enumerate(self.coefficients)), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                power = "d" if k == 1 else f"d^{k}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)


def _interpolate(points: Sequence[int], values: Sequence[int]) -> HilbertPolynomial:
    field_ = FieldSpec.rationals()
    vandermonde = DenseMatrix.from_rows(
        field_, [[x**k for k in range(len(points))] for x in points]
    )
    solution = solve_membership(vandermonde, values)
    if solution is None:
        raise InterpolationError("Interpolation points are not distinct")
    return HilbertPolynomial(tuple(field_.to_python(c) for c in solution))


def hilbert_polynomial(ideal: MonomialIdeal, reg: Optional[int] = None) -> HilbertPolynomial:
    """
    Hilbert polynomial of ``S/J`` interpolated past the regularity ``reg``.

    Without ``reg`` the bound is the top generator degree for stable ideals
    and the degree of the lcm of all generators otherwise.
    """
    if reg is None:
        if ideal.is_zero:
            reg = 0
        elif is_stable(ideal):
            reg = ideal.max_degree
        else:
            reg = ideal.lcm_degree()
    n = ideal.n
    points = list(range(reg + 1, reg + n + 1))
    hf = hilbert_function(ideal, reg + n + 1)
    polynomial = _interpolate(points, [hf[d] for d in points])
    check = reg + n + 1
    if polynomial(check) != hf[check]:
        raise InterpolationError(
            f"Hilbert polynomial disagrees with the Hilbert function in degree {check}"
        )
    return polynomial
