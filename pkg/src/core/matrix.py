"""
Exact rational dense matrices.

Entries are `fractions.Fraction` values held in numpy arrays of
`dtype=object`, so every product, minor and elimination step is exact.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import DimensionError, EliminationError, FormatError, IndexSetError

logger = logging.getLogger(__name__)

Rat = Fraction

# Minors up to this size use cofactor expansion, larger ones Bareiss elimination.
COFACTOR_LIMIT = 4

_RAT_PATTERN = re.compile(r"^([+-]?\d+)(?:/([+-]?\d+))?$", re.ASCII)


def to_rat(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact or boolean value {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def parse_rat(text: str) -> Fraction:
    """Parse "p" or "p/q" (q != 0) into a canonical Fraction."""
    match = _RAT_PATTERN.match(text.strip())
    if match is None:
        raise FormatError(f"not an exact rational: {text!r}")
    numerator = int(match.group(1))
    if match.group(2) is None:
        return Fraction(numerator)
    denominator = int(match.group(2))
    if denominator == 0:
        raise FormatError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_rat(value: object) -> str:
    value = to_rat(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


_as_fraction = np.vectorize(to_rat, otypes=[object])


class RatMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("_data",)

    def __init__(self, rows: Iterable[Iterable[object]]) -> None:
        grid = [list(row) for row in rows]
        if not grid or not grid[0]:
            raise DimensionError("a matrix needs at least one row and one column")
        width = len(grid[0])
        for index, row in enumerate(grid):
            if len(row) != width:
                raise DimensionError(f"row {index} has {len(row)} entries, expected {width}")
        data = np.empty((len(grid), width), dtype=object)
        for i, row in enumerate(grid):
            for j, value in enumerate(row):
                data[i, j] = to_rat(value)
        data.flags.writeable = False
        self._data = data

    @classmethod
    def _wrap(cls, array: np.ndarray) -> "RatMatrix":
        if array.ndim != 2 or 0 in array.shape:
            raise DimensionError(f"expected a non-empty 2-d array, got shape {array.shape}")
        matrix = cls.__new__(cls)
        data = np.array(_as_fraction(array), dtype=object)
        data.flags.writeable = False
        matrix._data = data
        return matrix

    @classmethod
    def identity(cls, size: int) -> "RatMatrix":
        return cls.diagonal([1] * size)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, values: Sequence[object]) -> "RatMatrix":
        size = len(values)
        return cls([[values[i] if i == j else 0 for j in range(size)] for i in range(size)])

    @property
    def shape(self) -> Tuple[int, int]:
        return self._data.shape

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._wrap(self._data.T)

    def array(self) -> np.ndarray:
        """Writable copy of the underlying object array."""
        return self._data.copy()

    def tolist(self) -> List[List[Fraction]]:
        return [list(row) for row in self._data]

    def row(self, index: int) -> Tuple[Fraction, ...]:
        return tuple(self._data[index, :])

    def column(self, index: int) -> Tuple[Fraction, ...]:
        return tuple(self._data[:, index])

    def submatrix(self, row_set: Sequence[int], col_set: Sequence[int]) -> "RatMatrix":
        return RatMatrix._wrap(self._data[np.ix_(list(row_set), list(col_set))])

    def direct_sum_one(self) -> "RatMatrix":
        """Block-diagonal A ⊕ (1)."""
        rows, cols = self.shape
        grown = np.empty((rows + 1, cols + 1), dtype=object)
        grown[:, :] = Fraction(0)
        grown[:rows, :cols] = self._data
        grown[rows, cols] = Fraction(1)
        return RatMatrix._wrap(grown)

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def is_unit_lower(self) -> bool:
        return self.is_square and all(
            self[i, j] == (1 if i == j else 0) for i in range(self.rows) for j in range(i, self.cols)
        )

    def is_unit_upper(self) -> bool:
        return self.T.is_unit_lower()

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self._data[i, j]

    def __iter__(self) -> Iterator[Tuple[Fraction, ...]]:
        for i in range(self.rows):
            yield self.row(i)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._data == other._data))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rat(value) for value in row) for row in self._data)
        return f"RatMatrix([{body}])"


@dataclass(frozen=True)
class MinorWitness:
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    value: Fraction

    def describe(self) -> str:
        rows = ",".join(str(i) for i in self.rows)
        cols = ",".join(str(j) for j in self.cols)
        return f"rows {{{rows}}} cols {{{cols}}}"


class TPCheck(NamedTuple):
    passed: bool
    witness: Optional[MinorWitness]
    checked: int


class LDU(NamedTuple):
    """
    Unit-triangular factorization A = L @ D @ U.

    :ivar L: unit lower triangular factor.
    :ivar D: diagonal factor holding the elimination pivots.
    :ivar U: unit upper triangular factor.
    """

    L: RatMatrix
    D: RatMatrix
    U: RatMatrix


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    return RatMatrix._wrap(a._data @ b._data)


def cofactor_determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    size = len(rows)
    if size == 1:
        return Fraction(rows[0][0])
    if size == 2:
        return Fraction(rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0])
    total = Fraction(0)
    for j, pivot in enumerate(rows[0]):
        if pivot == 0:
            continue
        rest = [list(row[:j]) + list(row[j + 1:]) for row in rows[1:]]
        term = pivot * cofactor_determinant(rest)
        total += term if j % 2 == 0 else -term
    return total


def bareiss_determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Fraction-free elimination; every division below is exact."""
    work = [[Fraction(value) for value in row] for row in rows]
    size = len(work)
    sign = 1
    previous = Fraction(1)
    for k in range(size - 1):
        if work[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if work[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]) / previous
        previous = pivot
    return sign * work[size - 1][size - 1]


def determinant(a: RatMatrix) -> Fraction:
    if not a.is_square:
        raise DimensionError(f"determinant of non-square {a.rows}x{a.cols} matrix")
    rows = a.tolist()
    if a.rows <= COFACTOR_LIMIT:
        return cofactor_determinant(rows)
    return bareiss_determinant(rows)


def minor(a: RatMatrix, row_set: Sequence[int], col_set: Sequence[int]) -> Fraction:
    row_set, col_set = tuple(row_set), tuple(col_set)
    if len(row_set) != len(col_set) or not row_set:
        raise IndexSetError(f"row set {row_set} and column set {col_set} must be non-empty and equal in size")
    _check_index_set(row_set, a.rows, "row")
    _check_index_set(col_set, a.cols, "column")
    return determinant(a.submatrix(row_set, col_set))


def iter_minor_indices(size: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Index sets ordered by size, then row set, then column set."""
    for k in range(1, size + 1):
        subsets = list(combinations(range(size), k))
        for rows in subsets:
            for cols in subsets:
                yield rows, cols


def is_totally_positive(a: RatMatrix, strict: bool = True) -> TPCheck:
    """
    Strict: every minor > 0. Non-strict: every minor >= 0 and every
    leading principal minor > 0. Stops at the first violating minor.
    """
    if not a.is_square:
        raise DimensionError(f"total positivity needs a square matrix, got {a.rows}x{a.cols}")
    checked = 0
    for rows, cols in iter_minor_indices(a.rows):
        value = minor(a, rows, cols)
        checked += 1
        leading = rows == cols == tuple(range(len(rows)))
        ok = value > 0 if (strict or leading) else value >= 0
        if not ok:
            witness = MinorWitness(rows, cols, value)
            logger.debug("minor %s = %s fails after %d checks", witness.describe(), value, checked)
            return TPCheck(False, witness, checked)
    logger.debug("all %d minors pass (strict=%s)", checked, strict)
    return TPCheck(True, None, checked)


def ldu_eliminate(a: RatMatrix) -> LDU:
    """Doolittle elimination without pivoting, rescaled so U has a unit diagonal."""
    if not a.is_square:
        raise DimensionError(f"LDU elimination needs a square matrix, got {a.rows}x{a.cols}")
    size = a.rows
    upper = a.array()
    lower = RatMatrix.identity(size).array()
    for c in range(size):
        pivot = upper[c, c]
        if pivot == 0:
            raise EliminationError(f"zero pivot at order {c + 1}: leading principal minor vanishes", order=c + 1)
        for r in range(c + 1, size):
            factor = upper[r, c] / pivot
            if factor != 0:
                upper[r, :] = upper[r, :] - factor * upper[c, :]
            lower[r, c] = factor
        logger.debug("pivot %d = %s", c, pivot)
    pivots = [upper[c, c] for c in range(size)]
    for c in range(size):
        upper[c, :] = upper[c, :] / pivots[c]
    return LDU(RatMatrix._wrap(lower), RatMatrix.diagonal(pivots), RatMatrix._wrap(upper))


def _check_index_set(indices: Tuple[int, ...], bound: int, label: str) -> None:
    for index in indices:
        if not 0 <= index < bound:
            raise IndexSetError(f"{label} index {index} out of range 0..{bound - 1}")
    if any(left >= right for left, right in zip(indices, indices[1:])):
        raise IndexSetError(f"{label} set {indices} is not strictly increasing")
