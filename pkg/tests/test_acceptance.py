"""Randomized runs over many sampled ideals. Deselected unless ``-m slow``."""

import pytest

from ginbetti.exactla import FieldSpec
from ginbetti.groebner import GradedIdeal
from ginbetti.koszul import annihilator_numbers, graded_betti
from ginbetti.monideal import alpha_from_stable, ek_graded_betti
from ginbetti.sampling import random_ideal
from ginbetti.types import Convention, IdealShape, IdealSpec
from ginbetti.verifier import (
    TheoremVerifier,
    alpha_matches_gin,
    annihilation_propagates,
    ci_experiment,
)

pytestmark = pytest.mark.slow


def stable_spec(seed: int) -> IdealSpec:
    return IdealSpec(
        n=2 + seed % 3,
        generators=2 + seed % 3,
        min_degree=2,
        max_degree=3 + seed % 3,
        shape=IdealShape.STABLE_RANDOM,
    )


def dense_spec(seed: int) -> IdealSpec:
    return IdealSpec(n=2 + seed % 2, generators=2 + seed % 2, min_degree=2, max_degree=3)


def test_ek_matches_koszul():
    for seed in range(200):
        ideal = random_ideal(stable_spec(seed), seed)
        koszul = graded_betti(GradedIdeal.from_monomial_ideal(ideal), Convention.FOR_IDEAL)
        assert ek_graded_betti(ideal) == koszul, ideal


def test_annihilator_numbers_of_stable_ideals():
    for seed in range(50):
        ideal = random_ideal(stable_spec(seed), seed)
        graded = GradedIdeal.from_monomial_ideal(ideal)
        assert annihilator_numbers(graded, seed).alpha == alpha_from_stable(ideal).alpha, ideal


def test_annihilator_numbers_survive_gin():
    for seed in range(50):
        ideal = random_ideal(dense_spec(seed), seed)
        assert alpha_matches_gin(ideal, seed), ideal


@pytest.mark.parametrize("shape", [IdealShape.DENSE_RANDOM, IdealShape.STABLE_RANDOM])
def test_bound_and_equivalences_on_random_ideals(shape):
    for seed in range(50):
        spec = dense_spec(seed) if shape == IdealShape.DENSE_RANDOM else stable_spec(seed)
        spec = IdealSpec(
            n=min(spec.n, 3),
            generators=spec.generators,
            min_degree=spec.min_degree,
            max_degree=min(spec.max_degree, 4),
            shape=shape,
        )
        ideal = random_ideal(spec, seed)
        verifier = TheoremVerifier(seed)
        assert verifier.bound_check(ideal).passed, ideal
        assert verifier.maximal_equivalences(ideal).passed, ideal
        assert verifier.rigidity_check(ideal).passed, ideal


def test_annihilation_propagates_on_random_ideals():
    for seed in range(30):
        ideal = random_ideal(dense_spec(seed), seed)
        assert annihilation_propagates(ideal, seed), ideal


def test_cubes_in_five_variables():
    report = ci_experiment(5, 3, seed=1, field=FieldSpec.prime(32003))
    assert report.passed
    assert report.witnesses["monomial_gin_generators"] == 77
    assert report.witnesses["generic_gin_generators"] == 76
    assert any("Fp:32003" in note for note in report.notes)
