import pytest

from ginbetti.exactla import FieldSpec
from ginbetti.exceptions import MissingSeedError, PreconditionError
from ginbetti.groebner import GradedIdeal
from ginbetti.monideal import MonomialIdeal, ek_graded_betti
from ginbetti.ring import RingCtx, TermOrder
from ginbetti.types import TheoremId
from ginbetti.verifier import (
    CHAR_P_CAVEAT,
    TheoremVerifier,
    alpha_matches_gin,
    annihilation_propagates,
    betti_numbers,
    bound_check,
    certified_lex_ideal,
    ci_experiment,
    lowerbound_check,
    remark_check,
    strange_check,
)
from tests.utils import load_ideal, monomials


@pytest.fixture
def verifier():
    return TheoremVerifier(seed=11)


@pytest.fixture
def square3(ring3):
    return MonomialIdeal.maximal_power(ring3, 2)


def test_verifier_needs_seed():
    with pytest.raises(MissingSeedError):
        TheoremVerifier(seed=None)


def test_run_checks_arity(verifier, two_squares):
    with pytest.raises(PreconditionError, match="takes 2 ideal"):
        verifier.run(TheoremId.LOWERBOUND, two_squares)


def test_betti_numbers_picks_method(two_squares, square3):
    assert betti_numbers(square3).totals() == (6, 8, 3)
    assert betti_numbers(two_squares).totals() == (2, 1)


def test_bound_check(squares_plus_cube):
    report = bound_check(squares_plus_cube, seed=11)
    assert report.passed
    assert report.witnesses["betti"] == [6, 9, 4]
    assert report.witnesses["bounds"] == [7, 10, 4]
    assert report.witnesses["alpha"] == [4, 2, 1]
    assert report.witnesses["equal_indices"] == [3]
    assert report.sources["identity"] == ["koszul_homology"]


def test_maximal_equivalences_all_hold(verifier, square3):
    report = verifier.maximal_equivalences(square3)
    assert report.passed
    assert set(report.witnesses["conditions"].values()) == {True}
    assert report.verdicts["linear_part"] is None


def test_maximal_equivalences_all_fail_together(verifier, two_squares):
    report = verifier.maximal_equivalences(two_squares)
    assert report.passed
    assert set(report.witnesses["conditions"].values()) == {False}


def test_rigidity_check(verifier, squares_plus_cube):
    report = verifier.rigidity_check(squares_plus_cube)
    assert report.passed
    assert report.witnesses["betti"] == [6, 9, 4]
    assert report.witnesses["gin_betti"] == [7, 10, 4]
    assert report.witnesses["minimal_index"] == 2
    assert report.witnesses["bound_equal_indices"] == [3]


def test_lex_comparison_in_two_variables(verifier, two_squares):
    report = verifier.lex_comparison(two_squares)
    assert report.passed
    assert report.instance["target"] == "lex"
    assert report.witnesses["target"] == ["x1^2", "x1*x2", "x2^3"]
    assert report.witnesses["target_betti"] == [3, 2]
    assert report.witnesses["minimal_index"] is None


def test_lex_comparison_against_other_gin(verifier, two_squares):
    report = verifier.lex_comparison(two_squares, TermOrder.LEX)
    assert report.passed
    assert report.instance["target"] == "gin_lex"
    assert "chain" not in report.verdicts


@pytest.mark.slow
def test_lex_comparison_in_four_variables(verifier, stable_four):
    report = verifier.lex_comparison(stable_four)
    assert report.passed
    assert report.witnesses["betti"] == [5, 7, 4, 1]
    assert report.witnesses["target_betti"] == [6, 9, 5, 1]
    assert report.witnesses["minimal_index"] == 3


def test_certified_lex_ideal(stable_four):
    lex = certified_lex_ideal(stable_four.to_monomial_ideal())
    assert lex.generator_strings() == [
        "x1^2",
        "x1*x2",
        "x1*x3",
        "x1*x4^2",
        "x2^3",
        "x2^2*x3",
    ]


def test_graded_betti_of_stable_four_and_its_lex_ideal(stable_four):
    reference = stable_four.to_monomial_ideal()
    assert ek_graded_betti(reference).entries == {
        (0, 2): 3,
        (0, 3): 2,
        (1, 3): 2,
        (1, 4): 5,
        (2, 5): 4,
        (3, 6): 1,
    }
    lex = certified_lex_ideal(reference)
    assert ek_graded_betti(lex).entries == {
        (0, 2): 3,
        (0, 3): 3,
        (1, 3): 3,
        (1, 4): 6,
        (2, 4): 1,
        (2, 5): 4,
        (3, 6): 1,
    }


@pytest.mark.parametrize(
    "small, large, expected_small, expected_large, equal, sections",
    [
        ("n2_strict_small", "n2_strict_large", [4, 3], [2, 1], [], False),
        ("n2_equal_small", "n2_equal_large", [4, 3], [4, 3], [0, 1], True),
        ("n3_strict_small", "n3_strict_large", [6, 8, 3], [4, 5, 2], [], False),
        ("n3_equal_small", "n3_equal_large", [6, 8, 3], [6, 8, 3], [0, 1, 2], True),
    ],
)
def test_lowerbound_pairs(small, large, expected_small, expected_large, equal, sections):
    report = lowerbound_check(
        load_ideal(f"{small}.ideal"), load_ideal(f"{large}.ideal"), seed=13
    )
    assert report.applicable
    assert report.passed
    assert report.witnesses["betti_small"] == expected_small
    assert report.witnesses["betti_large"] == expected_large
    assert report.witnesses["equal_indices"] == equal
    assert report.witnesses["sections_agree"] is sections


def test_lowerbound_requires_containment(verifier):
    report = verifier.lowerbound_check(
        load_ideal("n2_strict_large.ideal"), load_ideal("n2_strict_small.ideal")
    )
    assert not report.applicable
    assert not report.passed
    assert report.witnesses["preconditions"]["contained"] is False
    assert "contained" in report.notes[-1]


def test_lowerbound_requires_same_ring(verifier, two_squares, ring3):
    other = GradedIdeal.from_strings(ring3, ["x1^2"])
    with pytest.raises(PreconditionError, match="same ring"):
        verifier.lowerbound_check(two_squares, other)


def test_strange_check_equality_case(ring3):
    squares = GradedIdeal.from_strings(ring3, ["x1^2", "x2^2", "x3^2"])
    report = strange_check(squares, 2, seed=17)
    assert report.passed
    assert report.witnesses["gin_generators"] == 6
    assert report.witnesses["bound"] == 6
    assert report.witnesses["sections_agree"] is True


def test_strange_check_defaults_to_lowest_degree(verifier, two_squares):
    report = verifier.strange_check(two_squares)
    assert report.passed
    assert report.instance["d"] == 2
    assert report.witnesses["gin_generators"] == 3


def test_strange_check_not_applicable(verifier):
    report = verifier.strange_check(load_ideal("principal_square.ideal"))
    assert not report.applicable
    assert report.witnesses["preconditions"] == {"m_primary": False, "inside_power": True}


def test_ci_experiment_in_two_variables():
    report = ci_experiment(2, 2, seed=19)
    assert report.passed
    assert report.witnesses["distinct_gins"] is False
    assert report.witnesses["same_betti"] is True
    assert report.witnesses["monomial_gin_generators"] == 3


@pytest.mark.slow
def test_ci_experiment_distinct_gins():
    report = ci_experiment(4, 3, seed=19)
    assert report.passed
    assert report.witnesses["distinct_gins"] is True
    assert report.witnesses["same_betti"] is True


def test_ci_bound_check(verifier, ring2):
    report = verifier.ci_bound_check(MonomialIdeal.maximal_power(ring2, 2))
    assert report.passed
    assert report.witnesses["gin_generators"] == 3
    assert report.witnesses["sequence_gin_generators"] == 3


def test_ci_bound_check_needs_single_degree(verifier, ring2):
    report = verifier.ci_bound_check(monomials(ring2, "x1^2", "x2^3"))
    assert not report.applicable
    assert report.witnesses["preconditions"]["single_degree"] is False


def test_remark_check(ring2):
    report = remark_check(
        MonomialIdeal.maximal_power(ring2, 3), monomials(ring2, "x1", "x2^3")
    )
    assert report.passed
    assert report.instance["seed"] == 0
    assert report.witnesses["profile_dominates"] is True
    assert report.witnesses["counts_dominate"] is True
    assert report.witnesses["betti_small"] == [4, 3]
    assert report.witnesses["betti_large"] == [2, 1]


def test_remark_check_needs_monomial_ideals(verifier, ring2):
    mixed = GradedIdeal.from_strings(ring2, ["x1^2", "x1*x2 + x2^2"])
    report = verifier.remark_check(mixed, mixed)
    assert not report.applicable
    assert report.witnesses["preconditions"] == {"monomial": False}


def test_prime_field_reports_carry_caveat():
    ctx = RingCtx(2, FieldSpec.prime(32003))
    ideal = GradedIdeal.from_strings(ctx, ["x1^2", "x2^2"])
    report = TheoremVerifier(seed=3).bound_check(ideal)
    assert report.passed
    assert CHAR_P_CAVEAT.format(field="Fp:32003") in report.notes
    assert report.instance["field"] == "Fp:32003"


def test_annihilation_propagates(ring2, two_squares):
    assert annihilation_propagates(two_squares, seed=4)
    assert annihilation_propagates(MonomialIdeal.maximal_power(ring2, 2), seed=4)


def test_alpha_matches_gin(two_squares, squares_plus_cube):
    assert alpha_matches_gin(two_squares, seed=6)
    assert alpha_matches_gin(squares_plus_cube, seed=6)


def test_report_serializes(verifier, two_squares):
    data = verifier.run(TheoremId.BOUND, two_squares).to_dict()
    assert data["theorem"] == "bound"
    assert data["passed"] is True
    assert data["instance"]["ideals"][0]["generators"] == ["x1^2", "x2^2"]
