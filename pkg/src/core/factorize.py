from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Dict

from src.core.errors import DimensionError, NotTotallyPositiveError, RecoveryError, StructureError
from src.core.formulas import d_matrix, enum_q_i, l_closed, l_inverse_closed, u_closed, u_inverse_closed
from src.core.matrix import RatMatrix, format_rat, is_totally_positive, ldu_eliminate
from src.core.params import Index, ParamSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Factorization:
    L: RatMatrix
    D: RatMatrix
    U: RatMatrix
    params: ParamSet

    def assemble(self) -> RatMatrix:
        return self.L @ self.D @ self.U


def assemble(params: ParamSet) -> RatMatrix:
    return l_closed(params) @ d_matrix(params) @ u_closed(params)


def tp_inverse(params: ParamSet) -> RatMatrix:
    """A^-1 = U^-1 D^-1 L^-1, each factor from its closed form."""
    return u_inverse_closed(params) @ d_matrix(params, inverted=True) @ l_inverse_closed(params)


def recover_params(L: RatMatrix, D: RatMatrix, U: RatMatrix, nonneg: bool = False) -> ParamSet:
    size = L.rows
    if not (L.shape == D.shape == U.shape == (size, size)):
        raise DimensionError(f"factors must share one square shape, got {L.shape}, {D.shape}, {U.shape}")
    if not L.is_unit_lower():
        raise StructureError("L is not unit lower triangular")
    if not U.is_unit_upper():
        raise StructureError("U is not unit upper triangular")
    if not D.is_diagonal():
        raise StructureError("D is not diagonal")
    for i in range(size):
        if D[i, i] == 0:
            raise StructureError(f"D has a zero diagonal entry at {i}")

    lower = _solve_lower(L, nonneg)
    upper = {(s, j): value for (j, s), value in _solve_lower(U.T, nonneg).items()}
    diag = {i: D[i, i] for i in range(size)}
    params = ParamSet.from_families(size - 1, lower, diag, upper)
    logger.debug("recovered %d parameters for order %d", len(params.values), params.order)
    return params


def factor_tp(a: RatMatrix, strict_check: bool = False, nonneg: bool = False) -> Factorization:
    if not a.is_square:
        raise DimensionError(f"only square matrices factor, got {a.rows}x{a.cols}")
    if strict_check:
        check = is_totally_positive(a, strict=not nonneg)
        if not check.passed:
            witness = check.witness
            kind = "nonnegative" if nonneg else "positive"
            raise NotTotallyPositiveError(
                f"matrix is not totally {kind}: minor {witness.describe()} = {format_rat(witness.value)}",
                witness,
            )
    L, D, U = ldu_eliminate(a)
    return Factorization(L, D, U, recover_params(L, D, U, nonneg=nonneg))


def _solve_lower(L: RatMatrix, nonneg: bool) -> Dict[Index, Fraction]:
    """
    Solve L[i, j] = sum over Q^I(i, j) for t(i, j), row by row and left to right.

    Every sequence has alpha_1 <= j. The single one with alpha_1 == j
    contributes c * t(i, j), where c only involves earlier rows; the others
    are already known.
    """
    n = L.rows - 1
    known: Dict[Index, Fraction] = {}
    for i in range(1, n + 1):
        for j in range(i):
            coefficient = Fraction(0)
            residual = L[i, j]
            for alpha in enum_q_i(i, j):
                # factors r = j .. i-2; the r = i-1 factor is t(i, alpha_1)
                rest = prod((known[(r + 1, alpha[i - r - 1])] for r in range(j, i - 1)), start=Fraction(1))
                if alpha[0] == j:
                    coefficient += rest
                else:
                    residual -= known[(i, alpha[0])] * rest
            if coefficient == 0:
                if nonneg and residual == 0:
                    known[(i, j)] = Fraction(0)
                    continue
                raise RecoveryError(f"parameter t({i},{j}) has a vanishing coefficient", index=(i, j))
            known[(i, j)] = residual / coefficient
    return known
