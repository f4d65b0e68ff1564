"""Graded Koszul homology of S/I along sequences of linear forms.

Every graded piece of ``S/I`` is written in the standard-monomial basis of the
degrevlex initial ideal; multiplication by a variable is a matrix between
consecutive pieces, and the Koszul differentials are assembled from those
matrices block by block. Ranks, kernels and spans are sympy ``DomainMatrix``
computations over the field of the ring.
"""

import logging
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from ginbetti.exactla import (
    ColumnSpace,
    DenseMatrix,
    Scalar,
    kernel_basis,
    rank,
)
from ginbetti.exceptions import (
    GenericityError,
    PreconditionError,
    WindowTooSmallError,
)
from ginbetti.gin import generic_linear_forms
from ginbetti.groebner import GradedIdeal, GroebnerBasis, buchberger, std_monomials
from ginbetti.monideal import BettiTable, is_stable
from ginbetti.ring import (
    Monomial,
    Polynomial,
    TermOrder,
    linear_coefficients,
    unit_vector,
)
from ginbetti.types import AnnihilatorProfile, Convention, KoszulReport

logger = logging.getLogger(__name__)

Vector = Tuple[Scalar, ...]


class QuotientRing:
    """Graded pieces of ``S/I`` with cached variable multiplication maps."""

    def __init__(self, ideal: GradedIdeal, gb: Optional[GroebnerBasis] = None) -> None:
        self.ideal = ideal
        self.ctx = ideal.ctx
        self.field = ideal.ctx.field
        self.gb = gb if gb is not None else buchberger(ideal, TermOrder.DEGREVLEX)
        self.initial = self.gb.initial_ideal
        self._bases: Dict[int, List[Monomial]] = {}
        self._positions: Dict[int, Dict[Monomial, int]] = {}
        self._variable_maps: Dict[Tuple[int, int], List[Dict[int, Scalar]]] = {}
        self._matrices: Dict[Tuple[Vector, int], DenseMatrix] = {}

    def basis(self, d: int) -> List[Monomial]:
        if d < 0:
            return []
        if d not in self._bases:
            self._bases[d] = std_monomials(self.initial, d)
            self._positions[d] = {m: k for k, m in enumerate(self._bases[d])}
        return self._bases[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def _variable_map(self, t: int, d: int) -> List[Dict[int, Scalar]]:
        key = (t, d)
        if key not in self._variable_maps:
            self.basis(d + 1)
            positions = self._positions.get(d + 1, {})
            x = Polynomial.variable(self.gb.ctx, t)
            images = []
            for m in self.basis(d):
                reduced = self.gb.normal_form(x * Polynomial.monomial(self.gb.ctx, m))
                images.append({positions[u]: c for u, c in reduced.as_dict().items()})
            self._variable_maps[key] = images
        return self._variable_maps[key]

    def multiplication_matrix(self, coefficients: Sequence[Scalar], d: int) -> DenseMatrix:
        """Matrix of multiplication by ``sum_t c_t x_t`` from degree ``d`` to ``d + 1``."""
        coefficients = tuple(self.field.convert(c) for c in coefficients)
        key = (coefficients, d)
        if key not in self._matrices:
            rows, cols = self.dim(d + 1), self.dim(d)
            entries = [self.field.zero] * (rows * cols)
            for t, c in enumerate(coefficients):
                if not c:
                    continue
                for col, image in enumerate(self._variable_map(t, d)):
                    for row, value in image.items():
                        entries[row * cols + col] += c * value
            self._matrices[key] = DenseMatrix(self.field, rows, cols, tuple(entries))
        return self._matrices[key]


def quotient_multiplication_matrix(ideal: GradedIdeal, y: Polynomial, d: int) -> DenseMatrix:
    return QuotientRing(ideal).multiplication_matrix(linear_coefficients(y), d)


class KoszulComplex:
    """
    Koszul complex of ``S/I`` on the forms ``y_1..y_b``. In total degree ``d``
    the module ``K_i`` is one copy of ``(S/I)_{d-i}`` per ``i``-subset.
    """

    def __init__(self, quotient: QuotientRing, forms: Sequence[Vector]) -> None:
        self.quotient = quotient
        self.forms = [tuple(quotient.field.convert(c) for c in f) for f in forms]
        self.b = len(self.forms)
        self._subsets = {i: list(combinations(range(self.b), i)) for i in range(self.b + 1)}
        self._index = {
            i: {s: k for k, s in enumerate(subsets)} for i, subsets in self._subsets.items()
        }
        self._differentials: Dict[Tuple[int, int], DenseMatrix] = {}
        self._ranks: Dict[Tuple[int, int], int] = {}
        self._boundaries: Dict[Tuple[int, int], ColumnSpace] = {}
        self._cycles: Dict[Tuple[int, int], List[Vector]] = {}

    def dim(self, i: int, d: int) -> int:
        if i < 0 or i > self.b:
            return 0
        return len(self._subsets[i]) * self.quotient.dim(d - i)

    def differential(self, i: int, d: int) -> DenseMatrix:
        """``K_{i,d} -> K_{i-1,d}``."""
        key = (i, d)
        if key in self._differentials:
            return self._differentials[key]
        field = self.quotient.field
        rows, cols = self.dim(i - 1, d), self.dim(i, d)
        entries = [field.zero] * (rows * cols)
        if rows and cols:
            source, target = self.quotient.dim(d - i), self.quotient.dim(d - i + 1)
            for a_pos, subset in enumerate(self._subsets[i]):
                for k, a in enumerate(subset):
                    face = subset[:k] + subset[k + 1 :]
                    b_pos = self._index[i - 1][face]
                    block = self.quotient.multiplication_matrix(self.forms[a], d - i)
                    for r in range(target):
                        row = (b_pos * target + r) * cols + a_pos * source
                        for c in range(source):
                            value = block[r, c]
                            if value:
                                entries[row + c] = value if k % 2 == 0 else -value
        matrix = DenseMatrix(field, rows, cols, tuple(entries))
        self._differentials[key] = matrix
        return matrix

    def rank(self, i: int, d: int) -> int:
        key = (i, d)
        if key not in self._ranks:
            self._ranks[key] = rank(self.differential(i, d))
        return self._ranks[key]

    def homology(self, i: int, d: int) -> int:
        return self.dim(i, d) - self.rank(i, d) - self.rank(i + 1, d)

    def cycles(self, i: int, d: int) -> List[Vector]:
        key = (i, d)
        if key not in self._cycles:
            if i == 0:
                identity = DenseMatrix.identity(self.quotient.field, self.dim(0, d))
                self._cycles[key] = identity.columns()
            else:
                self._cycles[key] = kernel_basis(self.differential(i, d)).columns()
        return self._cycles[key]

    def boundaries(self, i: int, d: int) -> ColumnSpace:
        key = (i, d)
        if key not in self._boundaries:
            self._boundaries[key] = ColumnSpace(self.differential(i + 1, d))
        return self._boundaries[key]

    def multiply(self, coefficients: Vector, i: int, d: int, vector: Vector) -> Vector:
        """Multiply every component of ``vector`` in ``K_{i,d}`` by a linear form."""
        matrix = self.quotient.multiplication_matrix(coefficients, d - i)
        source, target = matrix.cols, matrix.rows
        result: List[Scalar] = []
        for s in range(len(self._subsets[i])):
            result.extend(matrix.apply(vector[s * source : (s + 1) * source]))
        if len(result) != len(self._subsets[i]) * target:
            raise PreconditionError("Vector does not belong to the complex")
        return tuple(result)

    def induced_rank(self, coefficients: Vector, i: int, d: int) -> int:
        """Rank of multiplication by a form on ``H_i`` from degree ``d`` to ``d + 1``."""
        boundaries = self.boundaries(i, d + 1)
        images = [self.multiply(coefficients, i, d, z) for z in self.cycles(i, d)]
        return boundaries.extended_dimension(images) - boundaries.dimension

    def kernel_dim(self, coefficients: Vector, i: int, d: int) -> int:
        return self.homology(i, d) - self.induced_rank(coefficients, i, d)

    def annihilated(self, i: int, d: int) -> bool:
        """Does every variable kill ``H_i`` in degree ``d``."""
        n = self.quotient.ctx.n
        images = [
            self.multiply(unit_vector(n, t), i, d, z)
            for z in self.cycles(i, d)
            for t in range(n)
        ]
        return self.boundaries(i, d + 1).contains_all(images)


def _coefficients(forms: Sequence[Polynomial]) -> List[Vector]:
    return [linear_coefficients(y) for y in forms]


def _check_independent(quotient: QuotientRing, forms: List[Vector]) -> None:
    if not forms:
        return
    matrix = DenseMatrix.from_columns(quotient.field, forms, quotient.ctx.n)
    if rank(matrix) != len(forms):
        raise PreconditionError("The linear forms are not linearly independent")


def koszul_homology(
    ideal: GradedIdeal,
    forms: Sequence[Polynomial],
    window: int,
    require_certificate: bool = True,
    quotient: Optional[QuotientRing] = None,
) -> KoszulReport:
    """
    Koszul homology of ``S/I`` along every prefix of ``forms``.

    :param ideal: graded ideal
    :param forms: linearly independent linear forms ``y_1..y_p``
    :param window: top degree ``D`` of the computation
    :param require_certificate: raise when homology survives in degrees ``D - 1`` or ``D``
    """
    quotient = quotient if quotient is not None else QuotientRing(ideal)
    coefficients = _coefficients(forms)
    _check_independent(quotient, coefficients)
    p = len(coefficients)
    degrees = range(window + 1)
    tail = [d for d in (window - 1, window) if d >= 0]

    homology: Dict[Tuple[int, int, int], int] = {}
    phi_image: Dict[Tuple[int, int], int] = {}
    annihilated: Dict[Tuple[int, int], bool] = {}
    alpha: List[int] = []
    certified = True

    for b in range(p + 1):
        complex_ = KoszulComplex(quotient, coefficients[:b])
        next_form = coefficients[b] if b < p else None
        for i in range(1, b + 1):
            nonzero = []
            for d in degrees:
                h = complex_.homology(i, d)
                if h:
                    homology[(i, b, d)] = h
                    nonzero.append(d)
            if any(d in tail for d in nonzero):
                certified = False
            annihilated[(i, b)] = all(complex_.annihilated(i, d) for d in nonzero)
            if next_form is not None:
                phi_image[(i, b)] = sum(
                    complex_.induced_rank(next_form, i, d) for d in nonzero
                )
        if next_form is not None:
            kernels = {d: complex_.kernel_dim(next_form, 0, d) for d in degrees}
            if any(kernels[d] for d in tail):
                certified = False
            alpha.append(sum(kernels.values()))
        logger.debug("koszul homology along %d forms done", b)

    if require_certificate and not certified:
        raise WindowTooSmallError(
            f"Koszul homology does not vanish in degrees {tail}; enlarge the window"
        )
    return KoszulReport(
        p=p,
        window=window,
        homology=homology,
        phi_image=phi_image,
        annihilated=annihilated,
        alpha=tuple(alpha),
        certified=certified,
    )


def tor_window(quotient: QuotientRing) -> int:
    """
    Top internal degree of ``Tor(K, S/I)``, bounded through the initial ideal:
    Eliahou-Kervaire when it is stable, the lcm of its generators otherwise.
    """
    initial = quotient.initial
    if initial.is_zero:
        return 0
    if is_stable(initial):
        return initial.max_degree + quotient.ctx.n - 1
    return initial.lcm_degree()


def graded_betti(
    ideal: GradedIdeal,
    convention: Convention = Convention.FOR_QUOTIENT,
    top_degree: Optional[int] = None,
    quotient: Optional[QuotientRing] = None,
) -> BettiTable:
    """
    Graded Betti numbers as Koszul homology of ``S/I`` on the variables.

    :param top_degree: known bound for the internal degrees of ``Tor(K, S/I)``
    """
    quotient = quotient if quotient is not None else QuotientRing(ideal)
    n = ideal.n
    top = tor_window(quotient) if top_degree is None else top_degree
    variables = [unit_vector(n, t) for t in range(n)]
    complex_ = KoszulComplex(quotient, variables)
    entries = {}
    for i in range(n + 1):
        for d in range(top + 1):
            h = complex_.homology(i, d)
            if h:
                entries[(i, d)] = h
    table = BettiTable(entries, Convention.FOR_QUOTIENT)
    logger.debug("betti numbers of %s: %s", ideal, table.totals())
    return table.to_ideal() if convention == Convention.FOR_IDEAL else table


def regularity(ideal: GradedIdeal, quotient: Optional[QuotientRing] = None) -> int:
    """Castelnuovo-Mumford regularity of ``I``; 0 for the zero and unit ideals."""
    table = graded_betti(ideal, Convention.FOR_IDEAL, quotient=quotient)
    if not table.entries:
        return 0
    return table.regularity()


def default_window(ideal: GradedIdeal, quotient: Optional[QuotientRing] = None) -> int:
    return regularity(ideal, quotient) + ideal.n + 2


def annihilator_numbers(
    ideal: GradedIdeal,
    seed: Optional[int],
    window: Optional[int] = None,
    forms: Optional[Sequence[Polynomial]] = None,
) -> AnnihilatorProfile:
    """
    ``alpha_p`` is the length of the kernel of multiplication by ``y_p`` on
    ``S/(I + (y_1..y_{p-1}))``, each quotient with its own Groebner basis.
    """
    n = ideal.n
    if forms is None:
        forms = generic_linear_forms(ideal.ctx, n, seed)
    explicit = window is not None
    top = window if explicit else default_window(ideal)
    alpha = []
    for p in range(1, len(forms) + 1):
        quotient = QuotientRing(ideal.with_forms(forms[: p - 1]))
        y = linear_coefficients(forms[p - 1])
        kernels = []
        for d in range(top + 1):
            matrix = quotient.multiplication_matrix(y, d)
            kernels.append(quotient.dim(d) - rank(matrix))
        if any(kernels[max(top - 1, 0) :]):
            message = f"Kernel of y_{p} does not vanish in degrees {top - 1}..{top}"
            if explicit:
                raise WindowTooSmallError(message)
            raise GenericityError(message + "; the forms are not generic, re-seed")
        alpha.append(sum(kernels))
    return AnnihilatorProfile(tuple(alpha), (0, top), True, "koszul")


def koszul_report(
    ideal: GradedIdeal, seed: Optional[int], window: Optional[int] = None
) -> KoszulReport:
    """Report along ``n`` seeded generic forms with the default window."""
    quotient = QuotientRing(ideal)
    forms = generic_linear_forms(ideal.ctx, ideal.n, seed)
    top = default_window(ideal, quotient) if window is None else window
    return koszul_homology(ideal, forms, top, quotient=quotient)


def is_proper_sequence(
    ideal: GradedIdeal, seed: Optional[int], report: Optional[KoszulReport] = None
) -> bool:
    """
    Does each ``y_{p+1}`` kill ``H_1(y_1..y_p; S/I)`` for generic forms.
    """
    report = report if report is not None else koszul_report(ideal, seed)
    return all(report.phi_image.get((1, b), 0) == 0 for b in range(report.p))


def is_componentwise_linear(ideal: GradedIdeal) -> bool:
    """
    Every component ideal ``I_<j>`` with ``j`` between the lowest generator
    degree and ``reg(I)`` has a linear resolution. Later components are
    truncations past the regularity and are always linear.
    """
    if ideal.is_zero:
        return True
    quotient = QuotientRing(ideal)
    reg = regularity(ideal, quotient)
    for j in range(ideal.min_degree, reg + 1):
        component = GradedIdeal.from_polynomials(ideal.ctx, quotient.gb.degree_basis(j))
        table = graded_betti(
            component, Convention.FOR_IDEAL, top_degree=reg + ideal.n - 1
        )
        if not table.is_linear(j):
            logger.debug("component of degree %d is not linear: %s", j, table.totals())
            return False
    return True


def subset_homology_annihilation(
    ideal: GradedIdeal,
    forms: Sequence[Polynomial],
    i: int,
    window: Optional[int] = None,
    require_certificate: bool = True,
) -> Dict[Tuple[int, ...], bool]:
    """
    For every subset ``A`` of the forms (1-based indices), does the maximal
    ideal kill ``H_i(y_A; S/I)``.

    :param window: top degree ``D`` checked; defaults to ``reg(I) + n + 2``
    :param require_certificate: raise when some ``H_i`` survives in degrees ``D - 1`` or ``D``
    """
    n = len(forms)
    if n > 5:
        raise PreconditionError("Subset annihilation is limited to five forms")
    quotient = QuotientRing(ideal)
    coefficients = _coefficients(forms)
    top = default_window(ideal, quotient) if window is None else window
    tail = [d for d in (top - 1, top) if d >= 0]
    logger.debug("subset annihilation of H_%d in degrees 0..%d", i, top)
    flags: Dict[Tuple[int, ...], bool] = {}
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            complex_ = KoszulComplex(quotient, [coefficients[k] for k in subset])
            nonzero = [d for d in range(top + 1) if complex_.homology(i, d)]
            if require_certificate and any(d in tail for d in nonzero):
                raise WindowTooSmallError(
                    f"H_{i} along forms {[k + 1 for k in subset]} does not vanish "
                    f"in degrees {tail}; enlarge the window"
                )
            flags[tuple(k + 1 for k in subset)] = all(
                complex_.annihilated(i, d) for d in nonzero
            )
    return flags
