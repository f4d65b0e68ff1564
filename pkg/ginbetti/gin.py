"""Generic initial ideals through seeded random coordinate changes."""

import logging
import random
from typing import List, Optional, Sequence

from ginbetti.exactla import DenseMatrix, rank
from ginbetti.exceptions import GenericityError, MissingSeedError, PreconditionError
from ginbetti.groebner import GradedIdeal, initial_ideal
from ginbetti.monideal import MonomialIdeal, is_strongly_stable
from ginbetti.ring import LinearChange, Polynomial, RingCtx, TermOrder, linear_form
from ginbetti.types import GinResult

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 3
DEFAULT_ENTRY_BOUND = 1000
_SEED_SPACE = 2**63


def require_seed(seed: Optional[int]) -> int:
    if seed is None:
        raise MissingSeedError("A seed is required for randomized computations")
    return seed


def trial_seeds(seed: int, trials: int) -> List[int]:
    """One sub-seed per trial, derived deterministically from ``seed``."""
    rng = random.Random(seed)
    return [rng.randrange(_SEED_SPACE) for _ in range(trials)]


def derive_seed(seed: int, label: str) -> int:
    """Independent, reproducible seed for the sub-computation named ``label``."""
    return random.Random(f"{seed}:{label}").randrange(_SEED_SPACE)


def random_matrix(
    ctx: RingCtx, rng: random.Random, entry_bound: int = DEFAULT_ENTRY_BOUND
) -> DenseMatrix:
    """Random invertible ``n x n`` matrix with entries in ``[-B, B]``."""
    if entry_bound < 1:
        raise PreconditionError("The entry bound must be positive")
    n = ctx.n
    while True:
        rows = [[rng.randint(-entry_bound, entry_bound) for _ in range(n)] for _ in range(n)]
        matrix = DenseMatrix.from_rows(ctx.field, rows, n)
        if rank(matrix) == n:
            return matrix
        logger.debug("rejected a singular random matrix")


def random_change(
    ctx: RingCtx, rng: random.Random, entry_bound: int = DEFAULT_ENTRY_BOUND
) -> LinearChange:
    return LinearChange(random_matrix(ctx, rng, entry_bound))


def generic_linear_forms(
    ctx: RingCtx,
    count: int,
    seed: Optional[int],
    entry_bound: int = DEFAULT_ENTRY_BOUND,
) -> List[Polynomial]:
    """
    First ``count`` rows of a seeded random invertible matrix, as linear forms.
    """
    if not 0 <= count <= ctx.n:
        raise PreconditionError(f"Cannot draw {count} independent forms in {ctx.n} variables")
    rng = random.Random(require_seed(seed))
    matrix = random_matrix(ctx, rng, entry_bound)
    return [linear_form(ctx, matrix.row(i)) for i in range(count)]


def gin_trial(
    ideal: GradedIdeal,
    order: TermOrder,
    sub_seed: int,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
) -> MonomialIdeal:
    """Initial ideal after one random coordinate change."""
    change = random_change(ideal.ctx, random.Random(sub_seed), entry_bound)
    return initial_ideal(ideal.apply_change(change), order)


def assemble_gin(
    ideal: GradedIdeal,
    order: TermOrder,
    seed: int,
    candidates: Sequence[MonomialIdeal],
    entry_bound: int = DEFAULT_ENTRY_BOUND,
    strict: bool = True,
) -> GinResult:
    """
    Combine trial outcomes, in trial order, into a ``GinResult``.
    """
    if not candidates:
        raise PreconditionError("At least one trial is needed")
    agreed = all(c == candidates[0] for c in candidates)
    warnings = []
    if not agreed:
        message = (
            f"{len(set(candidates))} distinct initial ideals in {len(candidates)} trials "
            f"(seed {seed}); re-seed or raise the entry bound"
        )
        if strict:
            raise GenericityError(message)
        logger.warning(message)
        warnings.append(message)
    result = candidates[0]
    strongly_stable = is_strongly_stable(result)
    if ideal.ctx.field.is_prime_field:
        warnings.append(
            f"computed over {ideal.ctx.field}; characteristic-0 statements are not certified"
        )
    elif not strongly_stable:
        message = f"gin {result} is not strongly stable in characteristic 0"
        logger.warning(message)
        warnings.append(message)
    logger.info("gin of %s has %d generators", ideal, len(result))
    return GinResult(
        ideal=result,
        order=order,
        trials=len(candidates),
        seed=seed,
        agreed=agreed,
        entry_bound=entry_bound,
        strongly_stable=strongly_stable,
        warnings=tuple(warnings),
        candidates=tuple(candidates),
    )


def generic_initial_ideal(
    ideal: GradedIdeal,
    order: Optional[TermOrder] = None,
    seed: Optional[int] = None,
    trials: int = DEFAULT_TRIALS,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
    strict: bool = True,
) -> GinResult:
    """
    Generic initial ideal certified by agreement of ``trials`` random changes.

    :param ideal: graded ideal
    :param order: term order, defaults to degrevlex
    :param seed: required; every trial uses a sub-seed derived from it
    :param trials: number of independent coordinate changes
    :param entry_bound: matrix entries are drawn from ``[-entry_bound, entry_bound]``
    :param strict: raise ``GenericityError`` on disagreement instead of flagging it
    """
    seed = require_seed(seed)
    if trials < 1:
        raise PreconditionError("At least one trial is needed")
    order = TermOrder.DEGREVLEX if order is None else order
    candidates = [
        gin_trial(ideal, order, sub_seed, entry_bound)
        for sub_seed in trial_seeds(seed, trials)
    ]
    return assemble_gin(ideal, order, seed, candidates, entry_bound, strict)
