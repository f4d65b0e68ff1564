"""Theorem checkers.

Each checker computes both sides of a statement independently and records one
verdict per condition in a ``TheoremReport``, together with the operations
that produced it. Instances violating a hypothesis come back as reports with
``applicable=False`` instead of passing vacuously.
"""

import logging
import random
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

from ginbetti.exactla import FieldSpec
from ginbetti.exceptions import (
    DegreeGuardError,
    PreconditionError,
    WindowTooShortError,
)
from ginbetti.gin import (
    DEFAULT_ENTRY_BOUND,
    DEFAULT_TRIALS,
    derive_seed,
    generic_initial_ideal,
    generic_linear_forms,
    require_seed,
)
from ginbetti.groebner import (
    GradedIdeal,
    active_degree_guard,
    buchberger,
    hilbert_function,
    hilbert_polynomial,
)
from ginbetti.koszul import (
    annihilator_numbers,
    graded_betti,
    is_componentwise_linear,
    is_proper_sequence,
    koszul_report,
    subset_homology_annihilation,
)
from ginbetti.monideal import (
    BettiTable,
    MonomialIdeal,
    ek_graded_betti,
    ideal_dims_from_monomials,
    is_stable,
    is_strongly_stable,
    lex_segment_ideal,
    m_profile_dominates,
)
from ginbetti.ring import RingCtx, TermOrder
from ginbetti.sampling import (
    monomial_complete_intersection,
    random_complete_intersection,
    regular_sequence_in,
)
from ginbetti.types import Convention, GinResult, TheoremId, TheoremReport

logger = logging.getLogger(__name__)

Ideal = Union[GradedIdeal, MonomialIdeal]

CHAR_P_CAVEAT = "characteristic-0 theorems used at your own risk: computed over {field}"

_ARITY = {
    TheoremId.BOUND: 1,
    TheoremId.MAXIMAL: 1,
    TheoremId.RIGIDITY: 1,
    TheoremId.LEX: 1,
    TheoremId.LOWERBOUND: 2,
    TheoremId.STRANGE: 1,
    TheoremId.CI: 0,
    TheoremId.CI_BOUND: 1,
    TheoremId.REMARK: 2,
}


def as_graded(ideal: Ideal) -> GradedIdeal:
    if isinstance(ideal, MonomialIdeal):
        return GradedIdeal.from_monomial_ideal(ideal)
    return ideal


def betti_numbers(ideal: Ideal) -> BettiTable:
    """
    Betti table of ``I`` itself: Eliahou-Kervaire for stable monomial ideals,
    Koszul homology otherwise.
    """
    graded = as_graded(ideal)
    if graded.is_monomial:
        monomial = graded.to_monomial_ideal()
        if is_stable(monomial):
            return ek_graded_betti(monomial)
    return graded_betti(graded, Convention.FOR_IDEAL)


def describe(ideal: Ideal) -> Dict[str, Any]:
    ctx = ideal.ctx
    return {
        "n": ctx.n,
        "field": str(ctx.field),
        "variables": list(ctx.var_names),
        "generators": ideal.generator_strings(),
    }


def certified_lex_ideal(reference: MonomialIdeal) -> MonomialIdeal:
    """
    Lex-segment ideal with the Hilbert function of ``reference``.

    The degree window grows from two past the top generator of ``reference``
    until the construction settles, the Hilbert polynomials agree, and the
    Hilbert functions agree up to the degree where both are polynomial.
    """
    if reference.is_zero:
        return reference
    settled = reference.max_degree
    target = hilbert_polynomial(reference)
    polynomial_from = settled if is_stable(reference) else reference.lcm_degree()
    guard = active_degree_guard()
    for top in range(settled + 2, guard + 1):
        dims = ideal_dims_from_monomials(reference, top)
        try:
            lex = lex_segment_ideal(dims, reference.ctx, settled_after=settled)
        except WindowTooShortError:
            continue
        check = max(lex.max_degree, polynomial_from) + 1
        if hilbert_polynomial(lex) == target and hilbert_function(
            lex, check
        ) == hilbert_function(reference, check):
            return lex
        logger.debug("lex construction up to degree %d is not settled yet", top)
    raise DegreeGuardError(
        f"The lex-segment ideal of {reference} does not settle below degree {guard}"
    )


def _first_equal_index(left: Sequence[int], right: Sequence[int]) -> Optional[int]:
    """Smallest index where ``left`` and ``right`` agree, ``None`` if nowhere."""
    return next((i for i, (a, b) in enumerate(zip(left, right)) if a == b), None)


def _rigid(left: Sequence[int], right: Sequence[int]) -> bool:
    first = _first_equal_index(left, right)
    return first is None or all(a == b for a, b in zip(left[first:], right[first:]))


class TheoremVerifier:
    """
    Runs the theorem checks with one seed. Sub-computations that need their
    own randomness draw sub-seeds derived from it.
    """

    def __init__(
        self,
        seed: Optional[int],
        trials: int = DEFAULT_TRIALS,
        entry_bound: int = DEFAULT_ENTRY_BOUND,
        field: Optional[FieldSpec] = None,
    ) -> None:
        self.seed = require_seed(seed)
        self.trials = trials
        self.entry_bound = entry_bound
        self.field = field

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}(seed={self.seed}, trials={self.trials}, "
            f"entry_bound={self.entry_bound})"
        )

    @property
    def checkers(self) -> Dict[TheoremId, Callable[..., TheoremReport]]:
        return {
            TheoremId.BOUND: self.bound_check,
            TheoremId.MAXIMAL: self.maximal_equivalences,
            TheoremId.RIGIDITY: self.rigidity_check,
            TheoremId.LEX: self.lex_comparison,
            TheoremId.LOWERBOUND: self.lowerbound_check,
            TheoremId.STRANGE: self.strange_check,
            TheoremId.CI: self.ci_experiment,
            TheoremId.CI_BOUND: self.ci_bound_check,
            TheoremId.REMARK: self.remark_check,
        }

    def run(self, theorem: TheoremId, *ideals: Ideal, **params: Any) -> TheoremReport:
        expected = _ARITY[theorem]
        if len(ideals) != expected:
            raise PreconditionError(
                f"Check '{theorem.value}' takes {expected} ideal(s), got {len(ideals)}"
            )
        return self.checkers[theorem](*ideals, **params)

    def gin(self, ideal: Ideal, order: Optional[TermOrder] = None) -> GinResult:
        return generic_initial_ideal(
            as_graded(ideal), order, self.seed, self.trials, self.entry_bound
        )

    def _report(
        self, theorem: TheoremId, ctx: RingCtx, ideals: Sequence[Ideal], **extra: Any
    ) -> TheoremReport:
        instance = {
            "seed": self.seed,
            "trials": self.trials,
            "entry_bound": self.entry_bound,
            "field": str(ctx.field),
            "ideals": [describe(ideal) for ideal in ideals],
        }
        instance.update(extra)
        report = TheoremReport(theorem, instance)
        if ctx.field.is_prime_field:
            report.notes.append(CHAR_P_CAVEAT.format(field=ctx.field))
        return report

    @staticmethod
    def _preconditions(report: TheoremReport, preconditions: Dict[str, bool]) -> bool:
        report.witnesses["preconditions"] = preconditions
        failed = [name for name, value in preconditions.items() if not value]
        if failed:
            report.applicable = False
            report.notes.append("not applicable: " + ", ".join(failed) + " fails")
            logger.info("%s check not applicable: %s", report.theorem.value, failed)
        return not failed

    def _hyperplane_sections_agree(self, first: GradedIdeal, second: GradedIdeal) -> bool:
        """Do ``I + (y)`` and ``J + (y)`` coincide for one seeded generic ``y``."""
        y = generic_linear_forms(
            first.ctx, 1, derive_seed(self.seed, "hyperplane"), self.entry_bound
        )
        left = buchberger(first.with_forms(y), TermOrder.DEGREVLEX)
        right = buchberger(second.with_forms(y), TermOrder.DEGREVLEX)
        return left.elements == right.elements

    def bound_check(self, ideal: Ideal) -> TheoremReport:
        graded = as_graded(ideal)
        n = graded.n
        report = self._report(TheoremId.BOUND, graded.ctx, [ideal])
        koszul = koszul_report(graded, self.seed)
        tor = graded_betti(graded, Convention.FOR_QUOTIENT)
        betti = tuple(tor.total(i) for i in range(1, n + 1))
        bounds = tuple(koszul.bound(i) for i in range(1, n + 1))
        prefixes = [(i, b) for b in range(1, n + 1) for i in range(1, b + 1)]

        report.record(
            "homology_is_tor", koszul.totals() == betti, "koszul_homology", "graded_betti"
        )
        report.record(
            "bound",
            all(koszul.h(i, b) <= koszul.bound(i, b) for i, b in prefixes),
            "koszul_homology",
        )
        report.record(
            "identity",
            all(koszul.h(i, b) == koszul.identity_value(i, b) for i, b in prefixes),
            "koszul_homology",
        )
        consistent = []
        for i in range(1, n + 1):
            pairs = koszul.correction_pairs(i)
            equal = koszul.h(i) == koszul.bound(i)
            quiet = all(koszul.phi_image.get(pair, 0) == 0 for pair in pairs)
            killed = all(koszul.annihilated.get(pair, True) for pair in pairs)
            consistent.append(equal == quiet == killed)
        report.record("equality_iff_annihilation", all(consistent), "koszul_homology")
        fresh = annihilator_numbers(graded, self.seed)
        report.record(
            "alpha_consistent",
            fresh.alpha == koszul.alpha,
            "koszul_homology",
            "annihilator_numbers",
        )
        report.witnesses.update(
            {
                "betti": list(betti),
                "bounds": list(bounds),
                "alpha": list(koszul.alpha),
                "equal_indices": [i for i in range(1, n + 1) if betti[i - 1] == bounds[i - 1]],
                "window": koszul.window,
            }
        )
        return report

    def maximal_equivalences(self, ideal: Ideal) -> TheoremReport:
        graded = as_graded(ideal)
        n = graded.n
        report = self._report(TheoremId.MAXIMAL, graded.ctx, [ideal])
        koszul = koszul_report(graded, self.seed)
        gin = self.gin(graded)
        conditions = {
            "maximal_betti": all(koszul.h(i) == koszul.bound(i) for i in range(1, n + 1)),
            "proper_sequence": is_proper_sequence(graded, self.seed, koszul),
            "componentwise_linear": is_componentwise_linear(graded),
            "gin_betti": betti_numbers(graded) == betti_numbers(gin.ideal),
        }
        report.witnesses["conditions"] = conditions
        report.witnesses["gin"] = gin.ideal.generator_strings()
        report.record(
            "conditions_agree",
            len(set(conditions.values())) == 1,
            "koszul_homology",
            "is_proper_sequence",
            "is_componentwise_linear",
            "generic_initial_ideal",
            "graded_betti",
        )
        report.record("linear_part", None)
        report.notes.append("the linear-part condition is not computed")
        return report

    def rigidity_check(self, ideal: Ideal) -> TheoremReport:
        graded = as_graded(ideal)
        n = graded.n
        report = self._report(TheoremId.RIGIDITY, graded.ctx, [ideal])
        mine = betti_numbers(graded).padded_totals(n)
        gin = self.gin(graded)
        theirs = betti_numbers(gin.ideal).padded_totals(n)
        koszul = koszul_report(graded, self.seed)
        meets = [i for i in range(1, n + 1) if koszul.h(i) == koszul.bound(i)]

        report.record(
            "ordering",
            all(a <= b for a, b in zip(mine, theirs)),
            "graded_betti",
            "generic_initial_ideal",
        )
        report.record("rigidity", _rigid(mine, theirs), "graded_betti", "generic_initial_ideal")
        report.record(
            "bound_rigidity",
            all(k in meets for i in meets for k in range(i, n + 1)),
            "koszul_homology",
        )
        report.witnesses.update(
            {
                "betti": list(mine),
                "gin_betti": list(theirs),
                "gin": gin.ideal.generator_strings(),
                "minimal_index": _first_equal_index(mine, theirs),
                "bound_equal_indices": meets,
            }
        )
        return report

    def lex_comparison(
        self, ideal: Ideal, order: Optional[TermOrder] = None
    ) -> TheoremReport:
        """
        Compare ``I`` with its lex-segment ideal, or with its generic initial
        ideal for ``order`` when one is given.
        """
        graded = as_graded(ideal)
        n = graded.n
        target_name = "lex" if order is None else f"gin_{order.value}"
        report = self._report(TheoremId.LEX, graded.ctx, [ideal], target=target_name)
        gin = self.gin(graded)
        if order is None:
            target = certified_lex_ideal(gin.ideal)
        else:
            target = self.gin(graded, order).ideal
        mine = betti_numbers(graded).padded_totals(n)
        middle = betti_numbers(gin.ideal).padded_totals(n)
        theirs = betti_numbers(target).padded_totals(n)

        report.record(
            "bounded", all(a <= c for a, c in zip(mine, theirs)), "graded_betti", "ek_graded_betti"
        )
        if order is None:
            report.record(
                "chain",
                all(a <= b <= c for a, b, c in zip(mine, middle, theirs)),
                "graded_betti",
                "generic_initial_ideal",
                "lex_segment_ideal",
            )
        report.record("rigidity", _rigid(mine, theirs), "graded_betti", "ek_graded_betti")
        report.witnesses.update(
            {
                "betti": list(mine),
                "gin_betti": list(middle),
                "target_betti": list(theirs),
                "target": target.generator_strings(),
                "minimal_index": _first_equal_index(mine, theirs),
            }
        )
        return report

    def lowerbound_check(self, first: Ideal, second: Ideal) -> TheoremReport:
        """
        ``I`` inside ``J``, both componentwise linear with the same Hilbert
        polynomial: Betti numbers drop from ``I`` to ``J``, one equality below
        ``n`` forces all of them, and that happens exactly when ``I`` and
        ``J`` agree modulo a generic linear form.
        """
        small, large = as_graded(first), as_graded(second)
        if small.ctx.with_order(TermOrder.DEGREVLEX) != large.ctx.with_order(
            TermOrder.DEGREVLEX
        ):
            raise PreconditionError("Both ideals must live in the same ring")
        n = small.n
        report = self._report(TheoremId.LOWERBOUND, small.ctx, [first, second])
        gin_small, gin_large = self.gin(small), self.gin(large)
        preconditions = {
            "contained": buchberger(large, TermOrder.DEGREVLEX).contains_ideal(small),
            "componentwise_linear": is_componentwise_linear(small)
            and is_componentwise_linear(large),
            "same_hilbert_polynomial": hilbert_polynomial(gin_small.ideal)
            == hilbert_polynomial(gin_large.ideal),
        }
        if not self._preconditions(report, preconditions):
            return report

        beta_small = betti_numbers(small).padded_totals(n)
        beta_large = betti_numbers(large).padded_totals(n)
        equal = [i for i in range(n) if beta_small[i] == beta_large[i]]
        same_sections = self._hyperplane_sections_agree(small, large)

        report.record(
            "betti_decrease",
            all(b <= a for a, b in zip(beta_small, beta_large)),
            "graded_betti",
        )
        report.record("rigidity", not equal or beta_small == beta_large, "graded_betti")
        report.record(
            "hyperplane_section",
            bool(equal) == same_sections,
            "graded_betti",
            "generic_linear_forms",
            "buchberger",
        )
        report.witnesses.update(
            {
                "betti_small": list(beta_small),
                "betti_large": list(beta_large),
                "equal_indices": equal,
                "sections_agree": same_sections,
            }
        )
        return report

    def strange_check(self, ideal: Ideal, d: Optional[int] = None) -> TheoremReport:
        """
        An m-primary ideal inside ``m^d`` has a gin with at least
        ``C(n + d - 1, d)`` generators, with equality exactly when the ideal
        agrees with ``m^d`` modulo a generic linear form.
        """
        graded = as_graded(ideal)
        n = graded.n
        d = graded.min_degree if d is None else d
        report = self._report(TheoremId.STRANGE, graded.ctx, [ideal], d=d)
        gin = self.gin(graded)
        preconditions = {
            "m_primary": hilbert_polynomial(gin.ideal).is_zero,
            "inside_power": graded.min_degree >= d,
        }
        if not self._preconditions(report, preconditions):
            return report

        bound = comb(n + d - 1, d)
        generators = len(gin.ideal)
        power = GradedIdeal.from_monomial_ideal(MonomialIdeal.maximal_power(graded.ctx, d))
        same_sections = self._hyperplane_sections_agree(graded, power)
        report.record("generator_bound", generators >= bound, "generic_initial_ideal")
        report.record(
            "equality_case",
            (generators == bound) == same_sections,
            "generic_initial_ideal",
            "generic_linear_forms",
            "buchberger",
        )
        report.witnesses.update(
            {
                "gin_generators": generators,
                "bound": bound,
                "sections_agree": same_sections,
                "gin": gin.ideal.generator_strings(),
            }
        )
        return report

    def ci_experiment(self, n: int, d: int) -> TheoremReport:
        """
        Gin of the monomial complete intersection ``(x1^d, ..., xn^d)`` against
        the gin of a sampled complete intersection of ``n`` forms of degree ``d``.
        """
        if n < 1 or d < 1:
            raise PreconditionError("The experiment needs n >= 1 and d >= 1")
        ctx = RingCtx(n, self.field if self.field is not None else FieldSpec.rationals())
        report = self._report(TheoremId.CI, ctx, [], n=n, d=d)
        report.notes.append("the sampled complete intersection is not certified generic")
        monomial = monomial_complete_intersection(ctx, d)
        try:
            generic = random_complete_intersection(
                ctx, [d] * n, random.Random(derive_seed(self.seed, "complete-intersection"))
            )
            gin_monomial = self.gin(monomial).ideal
            gin_generic = self.gin(generic).ideal
            same_betti = betti_numbers(monomial) == betti_numbers(generic)
        except DegreeGuardError as exc:
            logger.warning("complete intersection experiment aborted: %s", exc)
            report.notes.append(f"aborted: {exc}")
            report.record("generators", None)
            report.record("graded", None)
            return report

        betti_monomial = betti_numbers(gin_monomial)
        betti_generic = betti_numbers(gin_generic)
        report.record(
            "generators",
            len(gin_generic) <= len(gin_monomial),
            "random_complete_intersection",
            "generic_initial_ideal",
        )
        report.record(
            "graded",
            betti_generic.graded_dominated_by(betti_monomial),
            "generic_initial_ideal",
            "ek_graded_betti",
        )
        report.witnesses.update(
            {
                "generic": generic.generator_strings(),
                "monomial_gin_generators": len(gin_monomial),
                "generic_gin_generators": len(gin_generic),
                "distinct_gins": gin_monomial != gin_generic,
                "same_betti": same_betti,
                "monomial_gin_betti": betti_monomial.to_dict(),
                "generic_gin_betti": betti_generic.to_dict(),
            }
        )
        return report

    def ci_bound_check(self, ideal: Ideal) -> TheoremReport:
        """
        For an m-primary ideal generated in one degree, a regular sequence of
        ``n`` of its elements has a gin with at least as many generators.
        """
        graded = as_graded(ideal)
        report = self._report(TheoremId.CI_BOUND, graded.ctx, [ideal])
        gin = self.gin(graded)
        preconditions = {
            "m_primary": hilbert_polynomial(gin.ideal).is_zero,
            "single_degree": len(set(graded.degrees)) == 1,
        }
        if not self._preconditions(report, preconditions):
            return report

        sequence = regular_sequence_in(
            graded, random.Random(derive_seed(self.seed, "regular-sequence"))
        )
        gin_sequence = self.gin(sequence)
        report.record(
            "generators",
            len(gin.ideal) <= len(gin_sequence.ideal),
            "regular_sequence_in",
            "generic_initial_ideal",
        )
        report.witnesses.update(
            {
                "sequence": sequence.generator_strings(),
                "gin_generators": len(gin.ideal),
                "sequence_gin_generators": len(gin_sequence.ideal),
            }
        )
        return report

    def remark_check(self, first: Ideal, second: Ideal) -> TheoremReport:
        """
        Strongly stable ``I`` and ``J`` with equal Hilbert polynomial: a
        dominated m-profile forces the Betti numbers of ``J`` below those of
        ``I``, and pointwise domination of the counts ``m_i`` makes one
        equality spread to all indices.
        """
        small, large = as_graded(first), as_graded(second)
        n = small.n
        report = self._report(TheoremId.REMARK, small.ctx, [first, second])
        preconditions = {"monomial": small.is_monomial and large.is_monomial}
        if preconditions["monomial"]:
            a, b = small.to_monomial_ideal(), large.to_monomial_ideal()
            preconditions["strongly_stable"] = is_strongly_stable(a) and is_strongly_stable(b)
            preconditions["same_hilbert_polynomial"] = hilbert_polynomial(
                a
            ) == hilbert_polynomial(b)
        if not self._preconditions(report, preconditions):
            return report

        beta_a = ek_graded_betti(a).padded_totals(n)
        beta_b = ek_graded_betti(b).padded_totals(n)
        cumulative = m_profile_dominates(a, b)
        pointwise = m_profile_dominates(a, b, cumulative=False)
        decrease = all(y <= x for x, y in zip(beta_a, beta_b))
        equal = [i for i in range(n) if beta_a[i] == beta_b[i]]
        report.record(
            "dominance_implies_decrease",
            not cumulative or decrease,
            "m_profile_dominates",
            "ek_graded_betti",
        )
        report.record(
            "pointwise_dominance_implies_rigidity",
            not pointwise or not equal or beta_a == beta_b,
            "m_profile_dominates",
            "ek_graded_betti",
        )
        report.witnesses.update(
            {
                "profile_dominates": cumulative,
                "counts_dominate": pointwise,
                "betti_small": list(beta_a),
                "betti_large": list(beta_b),
            }
        )
        return report


def annihilation_propagates(
    ideal: Ideal, seed: Optional[int], window: Optional[int] = None
) -> bool:
    """
    If the maximal ideal kills ``H_i(y_A)`` for every subset ``A`` of generic
    forms, it kills every ``H_{i+1}(y_A)`` as well.
    """
    graded = as_graded(ideal)
    forms = generic_linear_forms(graded.ctx, graded.n, seed)
    levels: List[bool] = [
        all(subset_homology_annihilation(graded, forms, i, window).values())
        for i in range(1, graded.n + 1)
    ]
    return all(levels[k + 1] for k in range(len(levels) - 1) if levels[k])


def alpha_matches_gin(ideal: Ideal, seed: Optional[int], trials: int = DEFAULT_TRIALS) -> bool:
    """Annihilator numbers of ``S/I`` and ``S/Gin(I)`` agree."""
    graded = as_graded(ideal)
    gin = generic_initial_ideal(graded, seed=seed, trials=trials)
    mine = annihilator_numbers(graded, seed)
    theirs = annihilator_numbers(GradedIdeal.from_monomial_ideal(gin.ideal), seed)
    return mine.alpha == theirs.alpha


def bound_check(ideal: Ideal, seed: Optional[int]) -> TheoremReport:
    return TheoremVerifier(seed).bound_check(ideal)


def maximal_equivalences(ideal: Ideal, seed: Optional[int]) -> TheoremReport:
    return TheoremVerifier(seed).maximal_equivalences(ideal)


def rigidity_check(ideal: Ideal, seed: Optional[int]) -> TheoremReport:
    return TheoremVerifier(seed).rigidity_check(ideal)


def lex_comparison(
    ideal: Ideal, tau: Optional[TermOrder] = None, seed: Optional[int] = None
) -> TheoremReport:
    return TheoremVerifier(seed).lex_comparison(ideal, tau)


def lowerbound_check(first: Ideal, second: Ideal, seed: Optional[int]) -> TheoremReport:
    return TheoremVerifier(seed).lowerbound_check(first, second)


def strange_check(ideal: Ideal, d: Optional[int], seed: Optional[int]) -> TheoremReport:
    return TheoremVerifier(seed).strange_check(ideal, d)


def ci_experiment(
    n: int, d: int, seed: Optional[int], field: Optional[FieldSpec] = None
) -> TheoremReport:
    return TheoremVerifier(seed, field=field).ci_experiment(n, d)


def ci_bound_check(ideal: Ideal, seed: Optional[int]) -> TheoremReport:
    return TheoremVerifier(seed).ci_bound_check(ideal)


def remark_check(first: Ideal, second: Ideal, seed: Optional[int] = None) -> TheoremReport:
    """Needs no randomness; the seed only labels the report."""
    return TheoremVerifier(0 if seed is None else seed).remark_check(first, second)
