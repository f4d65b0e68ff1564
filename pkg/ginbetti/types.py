from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple

from ginbetti.exactla import FieldSpec
from ginbetti.exceptions import PreconditionError

if TYPE_CHECKING:
    from ginbetti.monideal import MonomialIdeal
    from ginbetti.ring import TermOrder


def alpha_bound(alpha: Tuple[int, ...], i: int, p: int) -> int:
    return sum(comb(p - j, i - 1) * alpha[j - 1] for j in range(1, p - i + 2))


class Convention(Enum):
    FOR_IDEAL: str = "ideal"
    FOR_QUOTIENT: str = "quotient"


class IdealShape(Enum):
    DENSE_RANDOM: str = "dense_random"
    MONOMIAL_RANDOM: str = "monomial_random"
    STABLE_RANDOM: str = "stable_random"
    STRONGLY_STABLE_RANDOM: str = "strongly_stable_random"
    COMPLETE_INTERSECTION: str = "complete_intersection"


class TheoremId(Enum):
    BOUND: str = "bound"
    MAXIMAL: str = "maximal"
    RIGIDITY: str = "rigidity"
    LEX: str = "lex"
    LOWERBOUND: str = "lowerbound"
    STRANGE: str = "strange"
    CI: str = "ci"
    CI_BOUND: str = "ci-bound"
    REMARK: str = "remark"


class BettiMethod(Enum):
    KOSZUL: str = "koszul"
    EK: str = "ek"


@dataclass(frozen=True)
class AnnihilatorProfile:
    alpha: Tuple[int, ...]
    window: Optional[Tuple[int, int]] = None
    certified: bool = True
    source: str = "koszul"

    def __post_init__(self) -> None:
        if any(a < 0 for a in self.alpha):
            raise PreconditionError("Annihilator numbers are nonnegative")

    @property
    def n(self) -> int:
        return len(self.alpha)

    def bound(self, i: int, p: Optional[int] = None) -> int:
        """
        Upper bound for the ``i``-th Koszul homology along the first ``p`` forms:
        ``sum_j C(p - j, i - 1) * alpha_j``.
        """
        return alpha_bound(self.alpha, i, self.n if p is None else p)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": list(self.alpha),
            "window": list(self.window) if self.window is not None else None,
            "certified": self.certified,
            "source": self.source,
        }


@dataclass(frozen=True)
class KoszulReport:
    """
    Koszul homology of ``S/I`` along every prefix ``y_1..y_b`` (``b <= p``) of
    a sequence of linear forms, computed in the degree window ``[0, window]``.

    ``homology`` maps ``(i, b, d)`` to ``dim H_i(b)_d`` (nonzero entries only),
    ``phi_image`` maps ``(i, b)`` to the rank of multiplication by ``y_{b+1}``
    on ``H_i(b)``, ``annihilated`` maps ``(i, b)`` to whether the maximal ideal
    kills ``H_i(b)``.
    """

    p: int
    window: int
    homology: Dict[Tuple[int, int, int], int]
    phi_image: Dict[Tuple[int, int], int]
    annihilated: Dict[Tuple[int, int], bool]
    alpha: Tuple[int, ...]
    certified: bool

    def h(self, i: int, b: Optional[int] = None) -> int:
        b = self.p if b is None else b
        return sum(v for (a, c, _), v in self.homology.items() if a == i and c == b)

    def h_graded(self, i: int, d: int, b: Optional[int] = None) -> int:
        b = self.p if b is None else b
        return self.homology.get((i, b, d), 0)

    def totals(self, b: Optional[int] = None) -> Tuple[int, ...]:
        b = self.p if b is None else b
        return tuple(self.h(i, b) for i in range(1, b + 1))

    def bound(self, i: int, b: Optional[int] = None) -> int:
        return alpha_bound(self.alpha, i, self.p if b is None else b)

    def correction_pairs(self, i: int, b: Optional[int] = None) -> List[Tuple[int, int]]:
        """Pairs ``(a, c)`` whose multiplication maps correct the bound at ``(i, b)``."""
        b = self.p if b is None else b
        return [
            (a, c)
            for c in range(1, b)
            for a in range(max(i - b + c, 1), i + 1)
        ]

    def identity_value(self, i: int, b: Optional[int] = None) -> int:
        b = self.p if b is None else b
        correction = sum(
            comb(b - c, i - a) * self.phi_image.get((a, c), 0)
            for a, c in self.correction_pairs(i, b)
        )
        return self.bound(i, b) - correction

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "window": self.window,
            "certified": self.certified,
            "alpha": list(self.alpha),
            "homology": [
                {"i": i, "b": b, "d": d, "value": v}
                for (i, b, d), v in sorted(self.homology.items())
            ],
            "phi_image": [
                {"i": i, "b": b, "value": v} for (i, b), v in sorted(self.phi_image.items())
            ],
            "annihilated": [
                {"i": i, "b": b, "value": v}
                for (i, b), v in sorted(self.annihilated.items())
            ],
        }


@dataclass(frozen=True)
class GinResult:
    ideal: "MonomialIdeal"
    order: "TermOrder"
    trials: int
    seed: int
    agreed: bool
    entry_bound: int = 1000
    strongly_stable: Optional[bool] = None
    warnings: Tuple[str, ...] = ()
    candidates: Tuple["MonomialIdeal", ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ideal": self.ideal.generator_strings(),
            "order": self.order.value,
            "trials": self.trials,
            "seed": self.seed,
            "entry_bound": self.entry_bound,
            "agreed": self.agreed,
            "strongly_stable": self.strongly_stable,
            "warnings": list(self.warnings),
        }


@dataclass
class TheoremReport:
    theorem: TheoremId
    instance: Dict[str, Any]
    verdicts: Dict[str, Optional[bool]] = field(default_factory=dict)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    sources: Dict[str, List[str]] = field(default_factory=dict)
    applicable: bool = True
    notes: List[str] = field(default_factory=list)

    def record(self, name: str, verdict: Optional[bool], *sources: str) -> None:
        """
        Store a verdict. ``None`` marks a condition that was not computed.
        """
        self.verdicts[name] = verdict
        self.sources[name] = list(sources)

    @property
    def passed(self) -> bool:
        if not self.applicable:
            return False
        return all(v is not False for v in self.verdicts.values())

    @property
    def failed_conditions(self) -> List[str]:
        return [k for k, v in self.verdicts.items() if v is False]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem.value,
            "instance": self.instance,
            "applicable": self.applicable,
            "passed": self.passed,
            "verdicts": self.verdicts,
            "sources": self.sources,
            "witnesses": self.witnesses,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class IdealSpec:
    n: int
    field: FieldSpec = field(default_factory=FieldSpec.rationals)
    generators: int = 3
    min_degree: int = 2
    max_degree: int = 3
    shape: IdealShape = IdealShape.DENSE_RANDOM
    degree_guard: int = 40

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PreconditionError("An ideal spec needs at least one variable")
        if self.generators < 1:
            raise PreconditionError("An ideal spec needs at least one generator")
        if not 1 <= self.min_degree <= self.max_degree:
            raise PreconditionError("Degree range must satisfy 1 <= min <= max")
        if self.max_degree > self.degree_guard:
            raise PreconditionError(
                f"Degree {self.max_degree} exceeds the degree guard {self.degree_guard}"
            )
        if not isinstance(self.shape, IdealShape):
            raise PreconditionError("Use IdealShape for the shape")
