import pytest

from ginbetti.exceptions import (
    NotAnOSequenceError,
    NotStableError,
    PreconditionError,
    WindowTooShortError,
)
from ginbetti.monideal import (
    BettiTable,
    MonomialIdeal,
    alpha_from_stable,
    component_ideal,
    cwl_graded_betti,
    ek_graded_betti,
    ideal_dims_from_monomials,
    is_stable,
    is_strongly_stable,
    lex_segment_ideal,
    m_profile_dominates,
    minimalize,
    times_maxideal,
    wonderful_delta,
)
from ginbetti.types import Convention
from tests.utils import load_ideal, monomials


@pytest.fixture
def gin_two_squares(ring2):
    return monomials(ring2, "x1^2", "x1*x2", "x2^3")


def test_minimalize_drops_multiples(ring2):
    ideal = minimalize([(2, 1), (2, 0), (0, 3), (1, 3)], ring2)
    assert ideal.gens == ((2, 0), (0, 3))


def test_constructor_requires_minimal_generators(ring2):
    with pytest.raises(PreconditionError, match="minimalize"):
        MonomialIdeal(ring2, ((2, 0), (2, 1)))


def test_maximal_power(ring3):
    cube = MonomialIdeal.maximal_power(ring3, 3)
    assert len(cube) == 10
    assert cube.is_artinian()
    assert not monomials(ring3, "x1^2", "x2^2").is_artinian()


def test_stats(ring3):
    square = MonomialIdeal.maximal_power(ring3, 2)
    assert square.stats.m == (1, 2, 3)
    assert square.stats.m_le == (1, 3, 6)
    assert square.stats.m_le_i(0) == 0


def test_stability(ring2, ring3, gin_two_squares):
    assert is_strongly_stable(gin_two_squares)
    assert not is_stable(monomials(ring2, "x1^2", "x2^2"))
    stable_only = monomials(ring3, "x1^2", "x1*x2", "x2^2", "x2*x3")
    assert is_stable(stable_only)
    assert not is_strongly_stable(stable_only)


def test_ek_numbers(ring3, gin_two_squares):
    table = ek_graded_betti(gin_two_squares)
    assert table.totals() == (3, 2)
    assert table.degrees(0) == {2: 2, 3: 1}
    assert table.degrees(1) == {3: 1, 4: 1}
    assert table.regularity() == 3
    assert ek_graded_betti(MonomialIdeal.maximal_power(ring3, 2)).totals() == (6, 8, 3)


def test_ek_numbers_of_stable_ideal(ring3):
    table = ek_graded_betti(monomials(ring3, "x1^2", "x1*x2", "x2^2", "x2*x3"))
    assert table.totals() == (4, 4, 1)
    assert table.is_linear(2)


def test_ek_requires_stable(ring2):
    with pytest.raises(NotStableError):
        ek_graded_betti(monomials(ring2, "x1^2", "x2^2"))


def test_betti_table_conventions(ring3):
    table = ek_graded_betti(MonomialIdeal.maximal_power(ring3, 2))
    quotient = table.to_quotient()
    assert quotient.convention == Convention.FOR_QUOTIENT
    assert quotient.totals() == (1, 6, 8, 3)
    assert quotient.to_ideal() == table
    assert quotient.regularity() == 1


def test_betti_table_drops_zeros():
    table = BettiTable({(0, 2): 3, (1, 3): 0})
    assert table.entries == {(0, 2): 3}
    assert table.length == 0
    with pytest.raises(PreconditionError, match="Negative"):
        BettiTable({(0, 2): -1})


def test_betti_table_domination():
    small = BettiTable({(0, 2): 2, (1, 4): 1})
    large = BettiTable({(0, 2): 2, (0, 3): 1, (1, 3): 1, (1, 4): 1})
    assert small.dominated_by(large)
    assert not large.dominated_by(small)
    assert small.graded_dominated_by(large)
    assert small.padded_totals(3) == (2, 1, 0)


def test_betti_table_render(gin_two_squares):
    lines = ek_graded_betti(gin_two_squares).render().splitlines()
    assert lines == [
        "       0 1",
        "total: 3 2",
        "    2: 2 1",
        "    3: 1 1",
    ]


def test_betti_table_records_round_trip(gin_two_squares):
    table = ek_graded_betti(gin_two_squares)
    assert BettiTable.from_records(table.to_records(), table.convention) == table
    assert table.to_dict()["totals"] == [3, 2]


def test_component_ideal(ring2):
    squares = monomials(ring2, "x1^2", "x2^2")
    assert component_ideal(squares, 3) == MonomialIdeal.maximal_power(ring2, 3)
    assert component_ideal(squares, 1).is_zero
    assert times_maxideal(squares).generator_strings() == ["x1^3", "x1^2*x2", "x1*x2^2", "x2^3"]


def test_componentwise_assembly_matches_ek(ring3, gin_two_squares):
    assert cwl_graded_betti(gin_two_squares) == ek_graded_betti(gin_two_squares)
    gin_cube = monomials(
        ring3, "x1^2", "x1*x2", "x1*x3^2", "x2^3", "x2^2*x3", "x2*x3^2", "x3^3"
    )
    assert cwl_graded_betti(gin_cube) == ek_graded_betti(gin_cube)


def test_wonderful_delta_counts_truncation_growth(ring2):
    square = MonomialIdeal.maximal_power(ring2, 2)
    cube = MonomialIdeal.maximal_power(ring2, 3)
    growth = [
        a - b
        for a, b in zip(ek_graded_betti(cube).totals(), ek_graded_betti(square).totals())
    ]
    assert [wonderful_delta(square, i, 2, 2) for i in (0, 1)] == growth == [1, 1]


def test_wonderful_delta_window(ring2):
    with pytest.raises(PreconditionError, match="window"):
        wonderful_delta(MonomialIdeal.maximal_power(ring2, 3), 0, 2, 2)


def test_lex_segment_ideal(ring2):
    lex = lex_segment_ideal([0, 0, 2, 4, 5, 6], ring2)
    assert lex.generator_strings() == ["x1^2", "x1*x2", "x2^3"]


def test_lex_segment_window_too_short(ring2):
    with pytest.raises(WindowTooShortError):
        lex_segment_ideal([0, 0, 2, 4, 5], ring2)
    with pytest.raises(WindowTooShortError):
        lex_segment_ideal([0, 0, 2, 4, 5, 6], ring2, settled_after=4)


@pytest.mark.parametrize("dims", [[0, 0, 1, 0], [0, 0, 4]])
def test_lex_segment_rejects_impossible_dimensions(ring2, dims):
    with pytest.raises(NotAnOSequenceError):
        lex_segment_ideal(dims, ring2)


def test_lex_segment_of_stable_four(stable_four):
    reference = stable_four.to_monomial_ideal()
    lex = lex_segment_ideal(ideal_dims_from_monomials(reference, 6), reference.ctx)
    assert lex.generator_strings() == [
        "x1^2",
        "x1*x2",
        "x1*x3",
        "x1*x4^2",
        "x2^3",
        "x2^2*x3",
    ]
    assert ek_graded_betti(lex).totals() == (6, 9, 5, 1)


def test_alpha_from_stable(ring3, gin_two_squares):
    assert alpha_from_stable(gin_two_squares).alpha == (2, 1)
    profile = alpha_from_stable(MonomialIdeal.maximal_power(ring3, 2))
    assert profile.alpha == (3, 2, 1)
    assert profile.source == "stable"


def test_m_profile_domination(ring2):
    cube = MonomialIdeal.maximal_power(ring2, 3)
    larger = monomials(ring2, "x1", "x2^3")
    assert m_profile_dominates(cube, larger)
    assert m_profile_dominates(cube, larger, cumulative=False)
    assert not m_profile_dominates(larger, cube)


def test_redundant_cubic_reading_is_not_stable():
    ideal = load_ideal("four_vars_redundant_cubic.ideal").to_monomial_ideal()
    assert ideal.generator_strings() == ["x1^2", "x1*x2", "x2^2", "x1*x3*x4"]
    assert not is_stable(ideal)
    with pytest.raises(NotStableError):
        ek_graded_betti(ideal)
