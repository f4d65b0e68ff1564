"""Seeded random ideals for property runs and experiments."""

import logging
import random
from typing import List, Optional, Set, Union

from ginbetti.exceptions import GenericityError, PreconditionError
from ginbetti.gin import require_seed
from ginbetti.groebner import GradedIdeal, hilbert_function, initial_ideal
from ginbetti.monideal import MonomialIdeal, minimalize
from ginbetti.ring import Monomial, Polynomial, RingCtx, max_index, monomials_of_degree
from ginbetti.types import IdealShape, IdealSpec

logger = logging.getLogger(__name__)

COEFFICIENT_BOUND = 9
_CI_ATTEMPTS = 20


def _random_monomial(rng: random.Random, n: int, d: int) -> Monomial:
    return rng.choice(monomials_of_degree(n, d))


def _random_form(ctx: RingCtx, rng: random.Random, d: int) -> Polynomial:
    terms = {}
    for m in monomials_of_degree(ctx.n, d):
        terms[m] = rng.randint(-COEFFICIENT_BOUND, COEFFICIENT_BOUND)
    form = Polynomial.from_dict(ctx, terms)
    if form.is_zero:
        return Polynomial.monomial(ctx, monomials_of_degree(ctx.n, d)[0])
    return form


def stable_closure(mons: Set[Monomial]) -> Set[Monomial]:
    """Close under ``u -> x_i * u / x_{m(u)}`` for ``i < m(u)``."""
    closed = set(mons)
    frontier = list(mons)
    while frontier:
        u = frontier.pop()
        m = max_index(u)
        for i in range(m - 1):
            v = list(u)
            v[m - 1] -= 1
            v[i] += 1
            v = tuple(v)
            if v not in closed:
                closed.add(v)
                frontier.append(v)
    return closed


def borel_closure(mons: Set[Monomial]) -> Set[Monomial]:
    """Close under ``u -> x_i * u / x_j`` for every ``i < j`` with ``x_j | u``."""
    closed = set(mons)
    frontier = list(mons)
    while frontier:
        u = frontier.pop()
        for j, e in enumerate(u):
            if not e:
                continue
            for i in range(j):
                v = list(u)
                v[j] -= 1
                v[i] += 1
                v = tuple(v)
                if v not in closed:
                    closed.add(v)
                    frontier.append(v)
    return closed


def complete_intersection_hf(n: int, degrees: List[int], top: int) -> List[int]:
    """Coefficients of ``prod (1 - t^d_i) / (1 - t)^n`` up to ``t^top``."""
    series = [1] + [0] * top
    for d in degrees:
        series = [series[k] - (series[k - d] if k >= d else 0) for k in range(top + 1)]
    for _ in range(n):
        running, total = [], 0
        for value in series:
            total += value
            running.append(total)
        series = running
    return series


def random_complete_intersection(
    ctx: RingCtx, degrees: List[int], rng: random.Random
) -> GradedIdeal:
    """
    Random forms of the given degrees, redrawn until their Hilbert function
    is that of a complete intersection.
    """
    top = sum(d - 1 for d in degrees) + 1
    expected = complete_intersection_hf(ctx.n, degrees, top)
    for attempt in range(_CI_ATTEMPTS):
        ideal = GradedIdeal(ctx, tuple(_random_form(ctx, rng, d) for d in degrees))
        if hilbert_function(initial_ideal(ideal), top) == expected:
            return ideal
        logger.debug("attempt %d did not give a complete intersection", attempt)
    raise GenericityError(
        f"No complete intersection found in {_CI_ATTEMPTS} attempts; change the seed"
    )


def regular_sequence_in(ideal: GradedIdeal, rng: random.Random) -> GradedIdeal:
    """
    ``n`` random combinations of the generators of an ideal generated in one
    degree, redrawn until they form a regular sequence.
    """
    ctx, n = ideal.ctx, ideal.n
    d = ideal.max_degree
    if ideal.min_degree != d:
        raise PreconditionError("The ideal must be generated in a single degree")
    top = n * (d - 1) + 1
    expected = complete_intersection_hf(n, [d] * n, top)
    for attempt in range(_CI_ATTEMPTS):
        forms = []
        for _ in range(n):
            f = Polynomial.zero(ctx)
            for g in ideal.generators:
                f = f + g.scale(rng.randint(-COEFFICIENT_BOUND, COEFFICIENT_BOUND))
            forms.append(f)
        if any(f.is_zero for f in forms):
            continue
        candidate = GradedIdeal(ctx, tuple(forms))
        if hilbert_function(initial_ideal(candidate), top) == expected:
            return candidate
        logger.debug("attempt %d did not give a regular sequence", attempt)
    raise GenericityError(
        f"No regular sequence found in {_CI_ATTEMPTS} attempts; change the seed"
    )


def random_ideal(
    spec: IdealSpec, seed: Optional[int]
) -> Union[GradedIdeal, MonomialIdeal]:
    """
    Deterministic per seed. Monomial shapes return a ``MonomialIdeal``.
    """
    rng = random.Random(require_seed(seed))
    ctx = RingCtx(spec.n, spec.field)
    degrees = [rng.randint(spec.min_degree, spec.max_degree) for _ in range(spec.generators)]

    if spec.shape == IdealShape.DENSE_RANDOM:
        return GradedIdeal(ctx, tuple(_random_form(ctx, rng, d) for d in degrees))
    if spec.shape == IdealShape.COMPLETE_INTERSECTION:
        ci_degrees = [rng.randint(spec.min_degree, spec.max_degree) for _ in range(spec.n)]
        return random_complete_intersection(ctx, ci_degrees, rng)

    mons = {_random_monomial(rng, spec.n, d) for d in degrees}
    if spec.shape == IdealShape.STABLE_RANDOM:
        mons = stable_closure(mons)
    elif spec.shape == IdealShape.STRONGLY_STABLE_RANDOM:
        mons = borel_closure(mons)
    return minimalize(mons, ctx)


def monomial_complete_intersection(ctx: RingCtx, d: int) -> MonomialIdeal:
    return minimalize(
        (tuple(d if k == i else 0 for k in range(ctx.n)) for i in range(ctx.n)), ctx
    )
