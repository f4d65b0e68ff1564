import asyncio
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, Union

from ginbetti.config import RunConfig
from ginbetti.exactla import FieldSpec
from ginbetti.gin import assemble_gin, generic_initial_ideal, gin_trial, trial_seeds
from ginbetti.groebner import (
    GradedIdeal,
    HilbertPolynomial,
    hilbert_function,
    hilbert_polynomial,
    initial_ideal,
)
from ginbetti.idealfile import IdealFile, load_ideal_file, parse_ideal_file
from ginbetti.koszul import annihilator_numbers, graded_betti, koszul_report
from ginbetti.monideal import BettiTable, MonomialIdeal, ek_graded_betti, is_stable
from ginbetti.ring import RingCtx, TermOrder
from ginbetti.sampling import random_ideal
from ginbetti.types import (
    AnnihilatorProfile,
    BettiMethod,
    Convention,
    GinResult,
    IdealSpec,
    KoszulReport,
    TheoremId,
    TheoremReport,
)
from ginbetti.verifier import Ideal, TheoremVerifier, as_graded, certified_lex_ideal

T = TypeVar("T")


@dataclass(frozen=True)
class CheckJob:
    theorem: TheoremId
    ideals: Tuple[Ideal, ...] = ()
    params: Dict[str, Any] = field(default_factory=dict)


class WorkbenchAbstract:
    pass


class BaseWorkbench(WorkbenchAbstract):
    def __init__(self, config: Optional[RunConfig] = None) -> None:
        self._config = config if config is not None else RunConfig.from_env()
        self._verifier: Optional[TheoremVerifier] = None

    def _init_verifier(self) -> TheoremVerifier:
        return TheoremVerifier(
            seed=self._config.require_seed(),
            trials=self._config.trials,
            entry_bound=self._config.entry_bound,
            field=self._config.field,
        )

    def _init_ctx(self, n: int, var_names: Optional[Sequence[str]] = None) -> RingCtx:
        field_ = self._config.field
        return RingCtx(
            n,
            field_ if field_ is not None else FieldSpec.rationals(),
            tuple(var_names) if var_names is not None else None,
            max_exponent=self._config.max_exponent,
        )

    def _guarded(self, function: Callable[..., T], *args: Any, **kwargs: Any) -> T:
        with self._config.guard():
            return function(*args, **kwargs)

    @property
    def config(self) -> RunConfig:
        return self._config

    @property
    def seed(self) -> Optional[int]:
        return self._config.seed

    @property
    def verifier(self) -> TheoremVerifier:
        if self._verifier is None:
            self._verifier = self._init_verifier()
        return self._verifier

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(seed={self.seed}, field={self._config.field})"


class Workbench(BaseWorkbench):
    def __init__(self, config: Optional[RunConfig] = None) -> None:
        super().__init__(config=config)

    def load(self, path: str) -> IdealFile:
        return load_ideal_file(path, self._config.field, self._config.max_exponent)

    def parse(self, text: str) -> IdealFile:
        return parse_ideal_file(text, self._config.field, self._config.max_exponent)

    def ideal(
        self, generators: Sequence[str], n: int, var_names: Optional[Sequence[str]] = None
    ) -> GradedIdeal:
        return GradedIdeal.from_strings(self._init_ctx(n, var_names), generators)

    def sample(self, spec: IdealSpec) -> Union[GradedIdeal, MonomialIdeal]:
        return random_ideal(spec, self._config.require_seed())

    def betti(
        self,
        ideal: Ideal,
        method: BettiMethod = BettiMethod.KOSZUL,
        convention: Convention = Convention.FOR_IDEAL,
    ) -> BettiTable:
        """
        Graded Betti numbers through Koszul homology, or through the
        Eliahou-Kervaire formula for stable monomial ideals.
        """
        if method == BettiMethod.EK:
            monomial = ideal if isinstance(ideal, MonomialIdeal) else ideal.to_monomial_ideal()
            table = ek_graded_betti(monomial)
            return table.to_quotient() if convention == Convention.FOR_QUOTIENT else table
        return self._guarded(graded_betti, as_graded(ideal), convention)

    def gin(
        self, ideal: Ideal, order: Optional[TermOrder] = None, strict: bool = True
    ) -> GinResult:
        return self._guarded(
            generic_initial_ideal,
            as_graded(ideal),
            order,
            self._config.require_seed(),
            self._config.trials,
            self._config.entry_bound,
            strict,
        )

    def lex(self, ideal: Ideal) -> MonomialIdeal:
        """Lex-segment ideal with the Hilbert function of ``ideal``; needs no seed."""
        with self._config.guard():
            return certified_lex_ideal(initial_ideal(as_graded(ideal), TermOrder.DEGREVLEX))

    def alpha(self, ideal: Ideal, window: Optional[int] = None) -> AnnihilatorProfile:
        return self._guarded(
            annihilator_numbers, as_graded(ideal), self._config.require_seed(), window
        )

    def koszul(self, ideal: Ideal, window: Optional[int] = None) -> KoszulReport:
        return self._guarded(
            koszul_report, as_graded(ideal), self._config.require_seed(), window
        )

    def hilbert(
        self, ideal: Ideal, top: Optional[int] = None
    ) -> Tuple[List[int], HilbertPolynomial]:
        """
        Hilbert function of ``S/I`` up to ``top`` and its Hilbert polynomial.
        Without ``top`` the function runs ``n`` degrees past the point where
        it is known to be polynomial.
        """
        with self._config.guard():
            initial = initial_ideal(as_graded(ideal), TermOrder.DEGREVLEX)
            polynomial = hilbert_polynomial(initial)
            if top is None:
                settled = 0
                if not initial.is_zero:
                    settled = initial.max_degree if is_stable(initial) else initial.lcm_degree()
                top = settled + initial.n
            return hilbert_function(initial, top), polynomial

    def check(self, theorem: TheoremId, *ideals: Ideal, **params: Any) -> TheoremReport:
        return self._guarded(self.verifier.run, theorem, *ideals, **params)

    async def gin_async(
        self, ideal: Ideal, order: Optional[TermOrder] = None, strict: bool = True
    ) -> GinResult:
        """
        ``gin`` with the trials running in worker threads. Trials keep their
        sub-seeds and their order, so the result equals the one of ``gin``.
        """
        seed = self._config.require_seed()
        graded = as_graded(ideal)
        order = TermOrder.DEGREVLEX if order is None else order
        bound = self._config.entry_bound
        candidates = await asyncio.gather(
            *(
                asyncio.to_thread(self._guarded, gin_trial, graded, order, sub_seed, bound)
                for sub_seed in trial_seeds(seed, self._config.trials)
            )
        )
        return assemble_gin(graded, order, seed, candidates, bound, strict)

    async def check_many(self, jobs: Sequence[CheckJob]) -> List[TheoremReport]:
        """Run independent checks concurrently, each with a verifier of its own."""

        def run(job: CheckJob) -> TheoremReport:
            verifier = self._init_verifier()
            return self._guarded(verifier.run, job.theorem, *job.ideals, **job.params)

        return list(await asyncio.gather(*(asyncio.to_thread(run, job) for job in jobs)))
