"""Monomial ideal combinatorics.

Minimal generators, stability tests, Eliahou-Kervaire Betti numbers of stable
ideals, component ideals, lex-segment ideals and Betti tables.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.monomials import monomial_divides, monomial_lcm

from ginbetti.exceptions import (
    NotAnOSequenceError,
    NotStableError,
    PreconditionError,
    WindowTooShortError,
)
from ginbetti.ring import Monomial, RingCtx, max_index, monomials_of_degree
from ginbetti.types import AnnihilatorProfile, Convention

logger = logging.getLogger(__name__)


def _canonical_key(m: Monomial) -> Tuple[int, ...]:
    return (sum(m),) + tuple(-e for e in m)


def _minimal(mons: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    ordered = sorted(set(mons), key=_canonical_key)
    kept: List[Monomial] = []
    for m in ordered:
        if not any(monomial_divides(g, m) for g in kept):
            kept.append(m)
    return tuple(kept)


@dataclass(frozen=True)
class MStats:
    m: Tuple[int, ...]
    m_le: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.m) != len(self.m_le):
            raise PreconditionError("m and m_le must have the same length")

    def m_i(self, i: int) -> int:
        """Generators with largest variable index ``i`` (1-based)."""
        return self.m[i - 1] if i >= 1 else 0

    def m_le_i(self, i: int) -> int:
        return self.m_le[i - 1] if i >= 1 else 0


@dataclass(frozen=True)
class MonomialIdeal:
    ctx: RingCtx
    gens: Tuple[Monomial, ...] = ()

    def __post_init__(self) -> None:
        for g in self.gens:
            if len(g) != self.ctx.n:
                raise PreconditionError(f"Monomial {g} has the wrong number of variables")
            self.ctx.check_exponents(g)
        if self.gens != _minimal(self.gens):
            raise PreconditionError(
                "Generators must be minimal and canonically sorted; use minimalize()"
            )

    @classmethod
    def zero(cls, ctx: RingCtx) -> "MonomialIdeal":
        return cls(ctx, ())

    @classmethod
    def maximal_power(cls, ctx: RingCtx, d: int) -> "MonomialIdeal":
        return cls(ctx, _minimal(monomials_of_degree(ctx.n, d)))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def n(self) -> int:
        return self.ctx.n

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    @cached_property
    def stats(self) -> MStats:
        counts = Counter(max_index(u) for u in self.gens)
        m = tuple(counts.get(i, 0) for i in range(1, self.n + 1))
        m_le, running = [], 0
        for value in m:
            running += value
            m_le.append(running)
        return MStats(m, tuple(m_le))

    @property
    def degrees(self) -> List[int]:
        return [sum(g) for g in self.gens]

    @property
    def min_degree(self) -> int:
        if self.is_zero:
            raise PreconditionError("The zero ideal has no generator degrees")
        return min(self.degrees)

    @property
    def max_degree(self) -> int:
        if self.is_zero:
            raise PreconditionError("The zero ideal has no generator degrees")
        return max(self.degrees)

    def lcm_degree(self) -> int:
        if self.is_zero:
            return 0
        total = self.ctx.one()
        for g in self.gens:
            total = monomial_lcm(total, g)
        return sum(total)

    def contains_monomial(self, m: Monomial) -> bool:
        return any(monomial_divides(g, m) for g in self.gens)

    def contains(self, other: "MonomialIdeal") -> bool:
        return all(self.contains_monomial(g) for g in other.gens)

    def degree_part(self, d: int) -> List[Monomial]:
        """Monomials of degree ``d`` lying in the ideal, descending in lex order."""
        return [m for m in monomials_of_degree(self.n, d) if self.contains_monomial(m)]

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_ring(other)
        return minimalize(self.gens + other.gens, self.ctx)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_ring(other)
        return minimalize(
            (tuple(a + b for a, b in zip(u, v)) for u in self.gens for v in other.gens),
            self.ctx,
        )

    def _check_ring(self, other: "MonomialIdeal") -> None:
        if other.ctx.n != self.ctx.n:
            raise PreconditionError("Monomial ideals live in different rings")

    def is_artinian(self) -> bool:
        pure = {u.index(sum(u)) for u in self.gens if max(u) == sum(u) and sum(u) > 0}
        return len(pure) == self.n

    def generator_strings(self) -> List[str]:
        return [self.ctx.format_monomial(g) for g in self.gens]

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(self.generator_strings()) + ")"


def minimalize(mons: Iterable[Monomial], ctx: RingCtx) -> MonomialIdeal:
    return MonomialIdeal(ctx, _minimal(tuple(m) for m in mons))


def _exchange(u: Monomial, j: int, i: int) -> Monomial:
    """``x_i * u / x_j`` with 0-based indices."""
    v = list(u)
    v[j] -= 1
    v[i] += 1
    return tuple(v)


def is_stable(ideal: MonomialIdeal) -> bool:
    for u in ideal.gens:
        m = max_index(u)
        for i in range(m - 1):
            if not ideal.contains_monomial(_exchange(u, m - 1, i)):
                return False
    return True


def is_strongly_stable(ideal: MonomialIdeal) -> bool:
    for u in ideal.gens:
        for j, e in enumerate(u):
            if not e:
                continue
            for i in range(j):
                if not ideal.contains_monomial(_exchange(u, j, i)):
                    return False
    return True


@dataclass(frozen=True)
class BettiTable:
    """
    Graded Betti numbers ``beta_{i,j}``. Zero entries are never stored.
    """

    entries: Mapping[Tuple[int, int], int] = field(default_factory=dict)
    convention: Convention = Convention.FOR_IDEAL

    def __post_init__(self) -> None:
        cleaned = {}
        for (i, j), value in self.entries.items():
            if value < 0:
                raise PreconditionError(f"Negative Betti number at ({i}, {j})")
            if value:
                cleaned[(i, j)] = value
        object.__setattr__(self, "entries", cleaned)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.convention == other.convention and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.convention, tuple(sorted(self.entries.items()))))

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    @property
    def length(self) -> int:
        """Largest homological index with a nonzero entry, -1 when empty."""
        return max((i for i, _ in self.entries), default=-1)

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def totals(self) -> Tuple[int, ...]:
        return tuple(self.total(i) for i in range(self.length + 1))

    def degrees(self, i: int) -> Dict[int, int]:
        return {j: v for (a, j), v in sorted(self.entries.items()) if a == i}

    def regularity(self) -> int:
        """``max(j - i)`` over nonzero entries of this table's own module."""
        if not self.entries:
            raise PreconditionError("An empty Betti table has no regularity")
        return max(j - i for i, j in self.entries)

    def is_linear(self, d: int) -> bool:
        return all(j - i == d for i, j in self.entries)

    def to_ideal(self) -> "BettiTable":
        if self.convention == Convention.FOR_IDEAL:
            return self
        shifted = {(i - 1, j): v for (i, j), v in self.entries.items() if i >= 1}
        return BettiTable(shifted, Convention.FOR_IDEAL)

    def to_quotient(self) -> "BettiTable":
        if self.convention == Convention.FOR_QUOTIENT:
            return self
        shifted = {(i + 1, j): v for (i, j), v in self.entries.items()}
        shifted[(0, 0)] = 1
        return BettiTable(shifted, Convention.FOR_QUOTIENT)

    def padded_totals(self, size: int) -> Tuple[int, ...]:
        totals = self.totals()
        return totals + (0,) * (size - len(totals))

    def dominated_by(self, other: "BettiTable") -> bool:
        """Entrywise ``beta_i(self) <= beta_i(other)`` on total Betti numbers."""
        mine, theirs = self.to_ideal(), other.to_ideal()
        size = max(mine.length, theirs.length) + 1
        mine, theirs = mine.padded_totals(size), theirs.padded_totals(size)
        return all(a <= b for a, b in zip(mine, theirs))

    def graded_dominated_by(self, other: "BettiTable") -> bool:
        mine, theirs = self.to_ideal(), other.to_ideal()
        return all(v <= theirs.get(i, j) for (i, j), v in mine.entries.items())

    def to_records(self) -> List[Dict[str, int]]:
        return [{"i": i, "j": j, "value": v} for (i, j), v in sorted(self.entries.items())]

    def to_dict(self) -> dict:
        return {
            "convention": self.convention.value,
            "totals": list(self.totals()),
            "entries": self.to_records(),
        }

    @classmethod
    def from_records(
        cls, records: Iterable[Mapping[str, int]], convention: Convention
    ) -> "BettiTable":
        return cls({(r["i"], r["j"]): r["value"] for r in records}, convention)

    def render(self) -> str:
        """Macaulay-style grid: column ``i``, row ``j - i``, dots for zeros."""
        if not self.entries:
            return "(zero table)"
        columns = range(self.length + 1)
        rows = range(
            min(j - i for i, j in self.entries), max(j - i for i, j in self.entries) + 1
        )
        cells = [[str(i) for i in columns], [str(v) for v in self.totals()]]
        for r in rows:
            cells.append([str(self.get(i, i + r)) if self.get(i, i + r) else "." for i in columns])
        width = max(len(c) for row in cells for c in row)
        labels = [""] + ["total:"] + [f"{r}:" for r in rows]
        label_width = max(len(label) for label in labels)
        lines = []
        for label, row in zip(labels, cells):
            body = " ".join(c.rjust(width) for c in row)
            lines.append(f"{label.rjust(label_width)} {body}".rstrip())
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render()


def ek_graded_betti(ideal: MonomialIdeal) -> BettiTable:
    """
    Eliahou-Kervaire numbers of a stable ideal: every generator ``u`` adds
    ``C(m(u) - 1, i)`` to ``beta_{i, deg(u) + i}``.
    """
    if not is_stable(ideal):
        raise NotStableError(f"{ideal} is not stable")
    entries: Dict[Tuple[int, int], int] = {}
    for u in ideal.gens:
        m, d = max_index(u), sum(u)
        for i in range(m):
            key = (i, d + i)
            entries[key] = entries.get(key, 0) + comb(m - 1, i)
    return BettiTable(entries, Convention.FOR_IDEAL)


def component_ideal(ideal: MonomialIdeal, j: int) -> MonomialIdeal:
    if j < 0:
        raise PreconditionError("Component degree must be nonnegative")
    mons = set()
    for u in ideal.gens:
        d = sum(u)
        if d > j:
            continue
        for v in monomials_of_degree(ideal.n, j - d):
            mons.add(tuple(a + b for a, b in zip(u, v)))
    return minimalize(mons, ideal.ctx)


def times_maxideal(ideal: MonomialIdeal) -> MonomialIdeal:
    n = ideal.n
    return minimalize(
        (
            tuple(e + (1 if k == t else 0) for k, e in enumerate(u))
            for u in ideal.gens
            for t in range(n)
        ),
        ideal.ctx,
    )


def _component_range(ideal: MonomialIdeal) -> range:
    return range(ideal.min_degree, ideal.max_degree + 1)


def cwl_graded_betti(ideal: MonomialIdeal) -> BettiTable:
    """
    Graded Betti numbers assembled degree by degree from the component ideals:
    ``beta_{i,i+j}(I) = beta_i(I_<j>) - beta_i(m I_<j-1>)``.
    """
    if ideal.is_zero:
        return BettiTable({}, Convention.FOR_IDEAL)
    components = {j: component_ideal(ideal, j) for j in _component_range(ideal)}
    for j, comp in components.items():
        if not is_stable(comp):
            raise NotStableError(f"Component of degree {j} of {ideal} is not stable")
    entries: Dict[Tuple[int, int], int] = {}
    for j, comp in components.items():
        current = ek_graded_betti(comp).totals()
        below = components.get(j - 1)
        previous = ek_graded_betti(times_maxideal(below)).totals() if below else ()
        for i, value in enumerate(current):
            delta = value - (previous[i] if i < len(previous) else 0)
            if delta:
                entries[(i, i + j)] = delta
    return BettiTable(entries, Convention.FOR_IDEAL)


def wonderful_delta(ideal: MonomialIdeal, i: int, d: int, big_n: int) -> int:
    """
    ``sum_{j=d}^{N} sum_{k=i+1}^{n} m_{<=k-1}(I_<j>) C(k-1, i)``, the growth of
    ``beta_i`` when the ideal is truncated at degree ``N + 1``.
    """
    if not is_strongly_stable(ideal):
        raise NotStableError(f"{ideal} is not strongly stable")
    if ideal.is_zero or not (d <= ideal.min_degree and ideal.max_degree <= big_n):
        raise PreconditionError(
            f"Generator degrees of {ideal} must lie in the window [{d}, {big_n}]"
        )
    total = 0
    for j in range(d, big_n + 1):
        stats = component_ideal(ideal, j).stats
        for k in range(i + 1, ideal.n + 1):
            total += stats.m_le_i(k - 1) * comb(k - 1, i)
    return total


def lex_segment_ideal(
    ideal_dims: Sequence[int], ctx: RingCtx, settled_after: Optional[int] = None
) -> MonomialIdeal:
    """
    Lex-segment ideal whose degree ``d`` piece has dimension ``ideal_dims[d]``.

    The last two degrees of the window must bring no new generator, and the
    window must reach past ``settled_after`` by two degrees.

    :param ideal_dims: ``dim I_d`` for ``d = 0..D``
    :param ctx: ring of the result
    :param settled_after: degree past which no generator is expected
    """
    n = ctx.n
    top = len(ideal_dims) - 1
    previous: List[Monomial] = []
    gens: List[Monomial] = []
    newest = -1
    for d, dim in enumerate(ideal_dims):
        segment = monomials_of_degree(n, d)
        if dim < 0 or dim > len(segment):
            raise NotAnOSequenceError(
                f"dim I_{d} = {dim} is impossible: S_{d} has dimension {len(segment)}"
            )
        current = segment[:dim]
        current_set = set(current)
        shadow = {
            tuple(e + (1 if k == t else 0) for k, e in enumerate(u))
            for u in previous
            for t in range(n)
        }
        if not shadow <= current_set:
            raise NotAnOSequenceError(
                f"The degree {d - 1} lex segment does not multiply into degree {d}"
            )
        fresh = [m for m in current if m not in shadow]
        if fresh:
            gens.extend(fresh)
            newest = d
        previous = list(current)
    if top - newest < 2:
        raise WindowTooShortError(
            f"New generators appear in degree {newest}, window ends at {top}"
        )
    if settled_after is not None and top - settled_after < 2:
        raise WindowTooShortError(
            f"Window ends at {top}, expected it to pass degree {settled_after} by two"
        )
    logger.debug("lex segment ideal has %d generators up to degree %d", len(gens), newest)
    return minimalize(gens, ctx)


def alpha_from_stable(ideal: MonomialIdeal) -> AnnihilatorProfile:
    if not is_stable(ideal):
        raise NotStableError(f"{ideal} is not stable")
    stats = ideal.stats
    n = ideal.n
    alpha = tuple(stats.m_i(n - i + 1) for i in range(1, n + 1))
    window = (0, ideal.max_degree) if not ideal.is_zero else (0, 0)
    return AnnihilatorProfile(alpha, window, True, "stable")


def m_profile_dominates(
    smaller: MonomialIdeal, larger: MonomialIdeal, cumulative: bool = True
) -> bool:
    """
    ``m_{<=i}(smaller_<j>) <= m_{<=i}(larger_<j>)`` for every ``i`` and every
    degree ``j`` up to the largest generator degree of either ideal. With
    ``cumulative=False`` the counts ``m_i`` are compared instead.
    """
    if smaller.is_zero or larger.is_zero:
        return smaller.is_zero
    low = min(smaller.min_degree, larger.min_degree)
    high = max(smaller.max_degree, larger.max_degree)
    for j in range(low, high + 1):
        a, b = component_ideal(smaller, j).stats, component_ideal(larger, j).stats
        a, b = (a.m_le, b.m_le) if cumulative else (a.m, b.m)
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def ideal_dims_from_monomials(ideal: MonomialIdeal, top: int) -> List[int]:
    """``dim I_d`` for ``d = 0..top`` by direct enumeration."""
    return [len(ideal.degree_part(d)) for d in range(top + 1)]
