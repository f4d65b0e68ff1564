import random

import pytest

from ginbetti.exceptions import MissingSeedError, PreconditionError
from ginbetti.groebner import GradedIdeal, hilbert_function, initial_ideal
from ginbetti.monideal import MonomialIdeal, is_stable, is_strongly_stable
from ginbetti.sampling import (
    borel_closure,
    complete_intersection_hf,
    monomial_complete_intersection,
    random_complete_intersection,
    random_ideal,
    regular_sequence_in,
    stable_closure,
)
from ginbetti.types import IdealShape, IdealSpec


def test_complete_intersection_hf():
    assert complete_intersection_hf(2, [2, 2], 3) == [1, 2, 1, 0]
    assert complete_intersection_hf(3, [2, 2, 2], 4) == [1, 3, 3, 1, 0]


def test_closures():
    assert stable_closure({(0, 0, 1)}) == {(0, 0, 1), (1, 0, 0), (0, 1, 0)}
    assert stable_closure({(0, 1, 1)}) == {(0, 1, 1), (1, 1, 0), (0, 2, 0), (2, 0, 0)}
    assert (1, 0, 1) in borel_closure({(0, 1, 1)})
    assert (1, 0, 1) not in stable_closure({(0, 1, 1)})


def test_random_complete_intersection(ring2):
    ideal = random_complete_intersection(ring2, [2, 2], random.Random(4))
    assert len(ideal.generators) == 2
    assert hilbert_function(initial_ideal(ideal), 3) == [1, 2, 1, 0]


def test_regular_sequence_in_square(ring2):
    square = GradedIdeal.from_monomial_ideal(MonomialIdeal.maximal_power(ring2, 2))
    sequence = regular_sequence_in(square, random.Random(8))
    assert sequence.degrees == [2, 2]
    assert hilbert_function(initial_ideal(sequence), 3) == [1, 2, 1, 0]


def test_regular_sequence_needs_single_degree(ring2):
    mixed = GradedIdeal.from_strings(ring2, ["x1^2", "x2^3"])
    with pytest.raises(PreconditionError, match="single degree"):
        regular_sequence_in(mixed, random.Random(8))


def test_monomial_complete_intersection(ring3):
    assert monomial_complete_intersection(ring3, 2).generator_strings() == [
        "x1^2",
        "x2^2",
        "x3^2",
    ]


@pytest.mark.parametrize(
    "shape, check",
    [
        (IdealShape.STABLE_RANDOM, is_stable),
        (IdealShape.STRONGLY_STABLE_RANDOM, is_strongly_stable),
        (IdealShape.MONOMIAL_RANDOM, lambda ideal: isinstance(ideal, MonomialIdeal)),
    ],
)
def test_random_monomial_shapes(shape, check):
    spec = IdealSpec(n=3, generators=4, min_degree=2, max_degree=3, shape=shape)
    ideal = random_ideal(spec, seed=21)
    assert isinstance(ideal, MonomialIdeal)
    assert check(ideal)
    assert ideal == random_ideal(spec, seed=21)


def test_random_dense_ideal():
    spec = IdealSpec(n=3, generators=2, min_degree=2, max_degree=2)
    ideal = random_ideal(spec, seed=5)
    assert isinstance(ideal, GradedIdeal)
    assert ideal.degrees == [2, 2]
    assert ideal == random_ideal(spec, seed=5)
    assert ideal != random_ideal(spec, seed=6)


def test_random_complete_intersection_shape():
    spec = IdealSpec(n=2, min_degree=2, max_degree=2, shape=IdealShape.COMPLETE_INTERSECTION)
    ideal = random_ideal(spec, seed=3)
    assert len(ideal.generators) == 2
    assert hilbert_function(initial_ideal(ideal), 3) == [1, 2, 1, 0]


def test_random_ideal_needs_seed():
    with pytest.raises(MissingSeedError):
        random_ideal(IdealSpec(n=2), seed=None)
