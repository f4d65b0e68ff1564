import pytest

from ginbetti.exceptions import PreconditionError
from ginbetti.types import (
    AnnihilatorProfile,
    IdealShape,
    IdealSpec,
    KoszulReport,
    TheoremId,
    TheoremReport,
    alpha_bound,
)


@pytest.fixture
def report_two_squares():
    # generic forms on S/(x1^2, x2^2)
    return KoszulReport(
        p=2,
        window=7,
        homology={(1, 1, 2): 1, (1, 2, 2): 2, (2, 2, 4): 1},
        phi_image={(1, 1): 1},
        annihilated={(1, 1): True, (1, 2): True, (2, 2): True},
        alpha=(2, 1),
        certified=True,
    )


def test_alpha_bound():
    alpha = (4, 2, 1)
    assert [alpha_bound(alpha, i, 3) for i in (1, 2, 3)] == [7, 10, 4]


def test_annihilator_profile_bound():
    profile = AnnihilatorProfile((3, 2, 1))
    assert profile.n == 3
    assert profile.bound(1) == 6
    assert profile.bound(1, p=2) == 5


def test_annihilator_profile_rejects_negative():
    with pytest.raises(PreconditionError):
        AnnihilatorProfile((1, -1))


def test_koszul_report_totals(report_two_squares):
    assert report_two_squares.totals() == (2, 1)
    assert report_two_squares.h(1, b=1) == 1
    assert report_two_squares.h_graded(2, 4) == 1
    assert report_two_squares.h_graded(2, 3) == 0


def test_koszul_report_identity(report_two_squares):
    assert report_two_squares.bound(1) == 3
    assert report_two_squares.bound(2) == 2
    assert report_two_squares.correction_pairs(2) == [(1, 1), (2, 1)]
    assert report_two_squares.identity_value(1) == 2
    assert report_two_squares.identity_value(2) == 1


def test_koszul_report_to_dict(report_two_squares):
    data = report_two_squares.to_dict()
    assert data["alpha"] == [2, 1]
    assert {"i": 2, "b": 2, "d": 4, "value": 1} in data["homology"]


def test_theorem_report_passed():
    report = TheoremReport(TheoremId.BOUND, {})
    report.record("bound", True, "koszul_homology")
    report.record("linear_part", None)
    assert report.passed
    report.record("identity", False)
    assert not report.passed
    assert report.failed_conditions == ["identity"]
    assert report.sources["bound"] == ["koszul_homology"]


def test_inapplicable_report_does_not_pass():
    report = TheoremReport(TheoremId.STRANGE, {}, applicable=False)
    assert not report.passed
    assert report.to_dict()["theorem"] == "strange"


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n": 0},
        {"n": 2, "generators": 0},
        {"n": 2, "min_degree": 3, "max_degree": 2},
        {"n": 2, "max_degree": 50},
        {"n": 2, "shape": "dense_random"},
    ],
)
def test_ideal_spec_rejects(kwargs):
    with pytest.raises(PreconditionError):
        IdealSpec(**kwargs)


def test_enum_values():
    assert TheoremId("ci-bound") == TheoremId.CI_BOUND
    assert IdealShape("stable_random") == IdealShape.STABLE_RANDOM
