import pytest

from ginbetti.groebner import GradedIdeal
from ginbetti.ring import RingCtx
from tests.utils import load_ideal


@pytest.fixture
def ring2():
    return RingCtx(2)


@pytest.fixture
def ring3():
    return RingCtx(3)


@pytest.fixture
def two_squares(ring2):
    return GradedIdeal.from_strings(ring2, ["x1^2", "x2^2"])


@pytest.fixture
def squares_plus_cube():
    return load_ideal("two_squares_plus_cube.ideal")


@pytest.fixture
def stable_four():
    return load_ideal("stable_four_vars.ideal")
