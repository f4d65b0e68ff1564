"""Exact fields and dense exact linear algebra on top of sympy's DomainMatrix.

Scalars are elements of ``FieldSpec.domain``: ``QQ`` for the rationals and
``GF(p)`` with residues in ``[0, p)`` for a prime field. Nothing here ever
touches floating point.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from ginbetti.exceptions import (
    InvalidFieldError,
    NotInvertibleError,
    PreconditionError,
)

# element of FieldSpec.domain
Scalar = Any

DEFAULT_PRIME = 32003
_WORD_LIMIT = 2**63


class FieldKind(Enum):
    RATIONALS: str = "rationals"
    PRIME_FIELD: str = "prime_field"


@lru_cache(maxsize=None)
def _prime_domain(p: int) -> Domain:
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind = FieldKind.RATIONALS
    characteristic: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.kind, FieldKind):
            raise InvalidFieldError("Use FieldKind for the field kind")
        if self.kind == FieldKind.RATIONALS:
            if self.characteristic != 0:
                raise InvalidFieldError("The rationals have characteristic 0")
            return
        p = self.characteristic
        if p == 2 or p >= _WORD_LIMIT or not isprime(p):
            raise InvalidFieldError(
                f"Characteristic {p} is not an odd prime that fits in a machine word"
            )

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS, 0)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls(FieldKind.PRIME_FIELD, p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """
        Read ``Q`` / ``QQ`` or ``Fp:<prime>`` / ``GF(<prime>)``.
        """
        value = text.strip()
        if value in ("Q", "QQ"):
            return cls.rationals()
        for prefix, suffix in (("Fp:", ""), ("GF(", ")")):
            if value.startswith(prefix) and value.endswith(suffix):
                digits = value[len(prefix) : len(value) - len(suffix)]
                if digits.isdigit():
                    return cls.prime(int(digits))
        raise InvalidFieldError(f"Cannot read field {text!r}; use Q or Fp:<prime>")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == FieldKind.PRIME_FIELD

    @property
    def domain(self) -> Domain:
        if self.is_prime_field:
            return _prime_domain(self.characteristic)
        return QQ

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def convert(self, value: Union[int, Fraction, Scalar]) -> Scalar:
        """
        Element of the domain for an ``int``, a ``Fraction`` or any rational
        number exposing ``numerator`` and ``denominator``.
        """
        domain = self.domain
        if domain.of_type(value):
            return value
        if isinstance(value, int):
            return domain(value)
        try:
            numerator, denominator = int(value.numerator), int(value.denominator)
        except (AttributeError, TypeError):
            raise PreconditionError(f"Cannot read {value!r} as an element of {self}") from None
        if self.is_prime_field and denominator % self.characteristic == 0:
            raise NotInvertibleError(
                f"Denominator {denominator} vanishes modulo {self.characteristic}"
            )
        return domain(numerator) / domain(denominator)

    def inverse(self, value: Union[int, Fraction, Scalar]) -> Scalar:
        value = self.convert(value)
        if not value:
            raise NotInvertibleError("Cannot invert zero")
        return self.one / value

    def to_python(self, value: Scalar) -> Union[int, Fraction]:
        """``int`` residue over a prime field, ``Fraction`` over the rationals."""
        value = self.convert(value)
        if self.is_prime_field:
            return int(value)
        return Fraction(int(value.numerator), int(value.denominator))

    def format(self, value: Scalar) -> str:
        return str(self.to_python(value))

    def __str__(self) -> str:
        if self.is_prime_field:
            return f"Fp:{self.characteristic}"
        return "Q"


def _sparse(
    field: FieldSpec, rows: Sequence[Sequence[Scalar]], shape: Tuple[int, int]
) -> DomainMatrix:
    nonzero: Dict[int, Dict[int, Scalar]] = {}
    for i, row in enumerate(rows):
        entries = {j: v for j, v in enumerate(row) if v}
        if entries:
            nonzero[i] = entries
    return DomainMatrix(nonzero, shape, field.domain)


@dataclass(frozen=True)
class DenseMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: Tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise PreconditionError("Matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise PreconditionError(
                f"Expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        convert = self.field.convert
        object.__setattr__(self, "entries", tuple(convert(v) for v in self.entries))

    @classmethod
    def from_rows(
        cls,
        field: FieldSpec,
        rows: Sequence[Sequence[Union[int, Fraction, Scalar]]],
        cols: Optional[int] = None,
    ) -> "DenseMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries: List[Scalar] = []
        for row in rows:
            if len(row) != cols:
                raise PreconditionError("Rows of unequal length")
            entries.extend(row)
        return cls(field, len(rows), cols, tuple(entries))

    @classmethod
    def from_columns(
        cls, field: FieldSpec, columns: Sequence[Sequence[Scalar]], rows: int
    ) -> "DenseMatrix":
        entries = [field.zero] * (rows * len(columns))
        for j, column in enumerate(columns):
            for i, value in enumerate(column):
                entries[i * len(columns) + j] = value
        return cls(field, rows, len(columns), tuple(entries))

    @classmethod
    def from_domain_matrix(cls, field: FieldSpec, matrix: DomainMatrix) -> "DenseMatrix":
        rows, cols = matrix.shape
        entries = [field.zero] * (rows * cols)
        for i, row in matrix.to_sparse().rep.items():
            for j, value in row.items():
                entries[i * cols + j] = value
        return cls(field, rows, cols, tuple(entries))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "DenseMatrix":
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "DenseMatrix":
        return cls.from_domain_matrix(field, DomainMatrix.eye(n, field.domain))

    @cached_property
    def domain_matrix(self) -> DomainMatrix:
        """The same matrix in sympy's sparse ``DomainMatrix`` format."""
        return _sparse(self.field, self.to_rows(), (self.rows, self.cols))

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Tuple[Scalar, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> List[List[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> List[Tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix.from_domain_matrix(self.field, self.domain_matrix.transpose())

    def apply(self, vector: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        if len(vector) != self.cols:
            raise PreconditionError("Vector length does not match column count")
        convert = self.field.convert
        column = _sparse(self.field, [[convert(v)] for v in vector], (self.cols, 1))
        image = DenseMatrix.from_domain_matrix(self.field, self.domain_matrix * column)
        return image.entries

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.cols != other.rows:
            raise PreconditionError("Inner dimensions do not match")
        return DenseMatrix.from_domain_matrix(
            self.field, self.domain_matrix * other.domain_matrix
        )

    def inverse(self) -> "DenseMatrix":
        if self.rows != self.cols:
            raise NotInvertibleError("Only square matrices can be inverted")
        try:
            inverse = self.domain_matrix.to_dense().inv()
        except DMNonInvertibleMatrixError:
            raise NotInvertibleError("Matrix is singular") from None
        return DenseMatrix.from_domain_matrix(self.field, inverse)


def hstack(*matrices: DenseMatrix) -> DenseMatrix:
    if not matrices:
        raise PreconditionError("Nothing to stack")
    first = matrices[0]
    for m in matrices:
        if m.rows != first.rows:
            raise PreconditionError("Cannot stack matrices with different row counts")
    stacked = first.domain_matrix.hstack(*(m.domain_matrix for m in matrices[1:]))
    return DenseMatrix.from_domain_matrix(first.field, stacked)


def row_echelon(m: DenseMatrix) -> Tuple[DenseMatrix, Tuple[int, ...]]:
    """Reduced row echelon form and its pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return m, ()
    echelon, pivots = m.domain_matrix.rref()
    return DenseMatrix.from_domain_matrix(m.field, echelon), tuple(pivots)


def rank(m: DenseMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.domain_matrix.rank()


def kernel_basis(m: DenseMatrix) -> DenseMatrix:
    """
    Basis of the right null space, one basis vector per column.
    """
    if m.rows == 0:
        return DenseMatrix.identity(m.field, m.cols)
    if m.cols == 0:
        return DenseMatrix.zeros(m.field, 0, 0)
    # sympy returns the basis vectors as rows
    return DenseMatrix.from_domain_matrix(m.field, m.domain_matrix.nullspace()).transpose()


class ColumnSpace:
    """Column span of a matrix, kept as the reduced row echelon form of its
    transpose so that membership is a single product with the pivot rows."""

    def __init__(self, m: DenseMatrix) -> None:
        self._matrix = m
        self._field = m.field
        self._length = m.rows
        echelon, pivots = row_echelon(m.transpose())
        self._pivots = pivots
        self._basis = _sparse(
            m.field, echelon.to_rows()[: len(pivots)], (len(pivots), m.rows)
        )

    @property
    def dimension(self) -> int:
        return len(self._pivots)

    def _residues(self, vectors: Sequence[Sequence[Scalar]]) -> DomainMatrix:
        """What is left of each vector after clearing its pivot coordinates."""
        convert = self._field.convert
        rows = [[convert(v) for v in vector] for vector in vectors]
        if any(len(row) != self._length for row in rows):
            raise PreconditionError("Vector length does not match row count")
        stacked = _sparse(self._field, rows, (len(rows), self._length))
        if not self._pivots:
            return stacked
        at_pivots = _sparse(
            self._field,
            [[row[p] for p in self._pivots] for row in rows],
            (len(rows), len(self._pivots)),
        )
        return stacked - at_pivots * self._basis

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return self._residues([vector]).is_zero_matrix

    def contains_all(self, vectors: Iterable[Sequence[Scalar]]) -> bool:
        vectors = list(vectors)
        return not vectors or self._residues(vectors).is_zero_matrix

    def solve(self, vector: Sequence[Scalar]) -> Optional[Tuple[Scalar, ...]]:
        if len(vector) != self._length:
            raise PreconditionError("Vector length does not match row count")
        m = self._matrix
        augmented = hstack(m, DenseMatrix.from_columns(self._field, [vector], m.rows))
        echelon, pivots = row_echelon(augmented)
        if m.cols in pivots:
            return None
        if m.rows == 0:
            return (self._field.zero,) * m.cols
        x = [self._field.zero] * m.cols
        for k, c in enumerate(pivots):
            x[c] = echelon[k, m.cols]
        return tuple(x)

    def extended_dimension(self, vectors: Iterable[Sequence[Scalar]]) -> int:
        """Dimension of the span of this space together with ``vectors``."""
        vectors = list(vectors)
        if not vectors:
            return self.dimension
        return self.dimension + self._residues(vectors).rank()


def solve_membership(
    m: DenseMatrix, v: Sequence[Scalar]
) -> Optional[Tuple[Scalar, ...]]:
    if len(v) != m.rows:
        raise PreconditionError("Vector length does not match row count")
    return ColumnSpace(m).solve(v)
