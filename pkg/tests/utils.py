from pathlib import Path

from ginbetti.groebner import GradedIdeal
from ginbetti.idealfile import load_ideal_file
from ginbetti.monideal import MonomialIdeal
from ginbetti.ring import RingCtx

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def load_ideal(name: str) -> GradedIdeal:
    return load_ideal_file(fixture_path(name)).ideal


def monomials(ctx: RingCtx, *texts: str) -> MonomialIdeal:
    return GradedIdeal.from_strings(ctx, texts).to_monomial_ideal()
