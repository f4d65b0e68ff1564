from ginbetti.client import CheckJob, Workbench
from ginbetti.config import RunConfig
from ginbetti.exactla import FieldSpec
from ginbetti.groebner import GradedIdeal
from ginbetti.monideal import BettiTable, MonomialIdeal
from ginbetti.ring import RingCtx, TermOrder
from ginbetti.types import BettiMethod, Convention, IdealShape, IdealSpec, TheoremId

__all__ = [
    "Workbench",
    "CheckJob",
    "RunConfig",
    "FieldSpec",
    "RingCtx",
    "TermOrder",
    "GradedIdeal",
    "MonomialIdeal",
    "BettiTable",
    "BettiMethod",
    "Convention",
    "IdealShape",
    "IdealSpec",
    "TheoremId",
]
