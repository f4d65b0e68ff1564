import os
from contextlib import AbstractContextManager
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Mapping, Optional

from ginbetti.exactla import FieldSpec
from ginbetti.exceptions import PreconditionError
from ginbetti.gin import DEFAULT_ENTRY_BOUND, DEFAULT_TRIALS, derive_seed, require_seed
from ginbetti.groebner import DEFAULT_DEGREE_GUARD, degree_guard
from ginbetti.ring import DEFAULT_MAX_EXPONENT

ENV_DEGREE_GUARD = "GINBETTI_DEGREE_GUARD"


@dataclass(frozen=True)
class RunConfig:
    """
    Settings shared by every computation of one run. ``seed`` stays ``None``
    until a randomized operation needs it; then ``require_seed`` complains.
    """

    seed: Optional[int] = None
    field: Optional[FieldSpec] = None
    trials: int = DEFAULT_TRIALS
    entry_bound: int = DEFAULT_ENTRY_BOUND
    degree_guard: int = DEFAULT_DEGREE_GUARD
    max_exponent: int = DEFAULT_MAX_EXPONENT

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise PreconditionError("At least one gin trial is needed")
        if self.entry_bound < 1:
            raise PreconditionError("The entry bound must be positive")
        if self.degree_guard < 1:
            raise PreconditionError("The degree guard must be positive")
        if self.max_exponent < 1:
            raise PreconditionError("The exponent guard must be positive")

    @classmethod
    def from_env(
        cls, environ: Optional[Mapping[str, str]] = None, **overrides: Any
    ) -> "RunConfig":
        """
        Defaults, then ``GINBETTI_DEGREE_GUARD``, then explicit overrides.
        Overrides equal to ``None`` are ignored.
        """
        environ = os.environ if environ is None else environ
        values: Dict[str, Any] = {}
        raw = environ.get(ENV_DEGREE_GUARD)
        if raw:
            try:
                values["degree_guard"] = int(raw)
            except ValueError:
                raise PreconditionError(
                    f"{ENV_DEGREE_GUARD} must be an integer, got {raw!r}"
                ) from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def require_seed(self) -> int:
        return require_seed(self.seed)

    def sub_seed(self, label: str) -> int:
        return derive_seed(self.require_seed(), label)

    def with_seed(self, seed: int) -> "RunConfig":
        return replace(self, seed=seed)

    def guard(self) -> AbstractContextManager:
        return degree_guard(self.degree_guard)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["field"] = str(self.field) if self.field is not None else None
        return data
