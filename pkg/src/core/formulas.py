"""
Closed-form and recursive construction of L, D, U and their inverses.

Nothing here touches a network: every entry is a sum over index sequences.
Sequences are 1-indexed through `_at` so that subscripts such as alpha[i - r]
read the same way as the sums they implement.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import prod
from typing import Callable, List, Sequence, Tuple

from src.core.errors import IndexSetError, ParamError
from src.core.matrix import RatMatrix
from src.core.params import ParamSet

logger = logging.getLogger(__name__)

IndexSequence = Tuple[int, ...]


def _at(alpha: Sequence[int], r: int) -> int:
    return alpha[r - 1]


def enum_q_i(i: int, j: int) -> List[IndexSequence]:
    """Weakly increasing sequences of length i - j with 0 <= alpha_r <= i - r."""
    if i < j:
        return []
    length = i - j
    found: List[IndexSequence] = []

    def extend(prefix: List[int], low: int) -> None:
        r = len(prefix) + 1
        if r > length:
            found.append(tuple(prefix))
            return
        for value in range(low, i - r + 1):
            prefix.append(value)
            extend(prefix, value)
            prefix.pop()

    extend([], 0)
    return found


def enum_q_sd(i: int, j: int) -> List[IndexSequence]:
    """Strictly decreasing sequences of length i - j with 0 <= alpha_r <= i - r."""
    if i < j:
        return []
    length = i - j
    found: List[IndexSequence] = []

    def extend(prefix: List[int]) -> None:
        r = len(prefix) + 1
        if r > length:
            found.append(tuple(prefix))
            return
        high = i - r if not prefix else min(i - r, prefix[-1] - 1)
        for value in range(0, high + 1):
            prefix.append(value)
            extend(prefix)
            prefix.pop()

    extend([])
    return found


def l_term(params: ParamSet, alpha: IndexSequence, i: int, j: int) -> Fraction:
    return prod((params.t(r + 1, _at(alpha, i - r)) for r in range(j, i)), start=Fraction(1))


def u_term(params: ParamSet, alpha: IndexSequence, i: int, j: int) -> Fraction:
    return prod((params.t(_at(alpha, j - r), r + 1) for r in range(i, j)), start=Fraction(1))


def l_entry(params: ParamSet, i: int, j: int) -> Fraction:
    return sum((l_term(params, alpha, i, j) for alpha in enum_q_i(i, j)), Fraction(0))


def u_entry(params: ParamSet, i: int, j: int) -> Fraction:
    return sum((u_term(params, alpha, i, j) for alpha in enum_q_i(j, i)), Fraction(0))


def l_inverse_entry(params: ParamSet, i: int, j: int) -> Fraction:
    total = sum((l_term(params, alpha, i, j) for alpha in enum_q_sd(i, j)), Fraction(0))
    return -total if (i - j) % 2 else total


def u_inverse_entry(params: ParamSet, i: int, j: int) -> Fraction:
    # parity of |i - j|; the sign is the same either way round
    total = sum((u_term(params, alpha, i, j) for alpha in enum_q_sd(j, i)), Fraction(0))
    return -total if abs(i - j) % 2 else total


def _tabulate(params: ParamSet, entry: Callable[[ParamSet, int, int], Fraction]) -> RatMatrix:
    size = params.order + 1
    return RatMatrix([[entry(params, i, j) for j in range(size)] for i in range(size)])


def l_closed(params: ParamSet) -> RatMatrix:
    return _tabulate(params, l_entry)


def u_closed(params: ParamSet) -> RatMatrix:
    return _tabulate(params, u_entry)


def l_inverse_closed(params: ParamSet) -> RatMatrix:
    return _tabulate(params, l_inverse_entry)


def u_inverse_closed(params: ParamSet) -> RatMatrix:
    return _tabulate(params, u_inverse_entry)


def d_matrix(params: ParamSet, inverted: bool = False) -> RatMatrix:
    values = [params.t(i, i) for i in range(params.order + 1)]
    if inverted:
        for i, value in enumerate(values):
            if value == 0:
                raise ParamError(f"cannot invert zero diagonal parameter t({i},{i})", index=(i, i), family="diag")
        values = [1 / value for value in values]
    return RatMatrix.diagonal(values)


def l_recursive(params: ParamSet) -> RatMatrix:
    """L_{k+1} = F (L_k + 1), F carrying minus the last row of the order k+1 inverse."""
    current = RatMatrix.identity(1)
    for k in range(params.order):
        size = k + 2
        bottom = [-l_inverse_entry(params, k + 1, c) for c in range(k + 1)]
        step = RatMatrix(
            [[1 if r == c else 0 for c in range(size)] for r in range(k + 1)]
            + [bottom + [1]]
        )
        current = step @ current.direct_sum_one()
        logger.debug("L recursion reached order %d", k + 1)
    return current


def u_recursive(params: ParamSet) -> RatMatrix:
    """U_{k+1} = (U_k + 1) F, F carrying minus the last column of the order k+1 inverse."""
    current = RatMatrix.identity(1)
    for k in range(params.order):
        size = k + 2
        right = [-u_inverse_entry(params, r, k + 1) for r in range(k + 1)]
        step = RatMatrix(
            [[1 if r == c else 0 for c in range(k + 1)] + [right[r]] for r in range(k + 1)]
            + [[0] * (size - 1) + [1]]
        )
        current = current.direct_sum_one() @ step
        logger.debug("U recursion reached order %d", k + 1)
    return current


def path_from_sequence(alpha: IndexSequence, i: int, j: int, n: int) -> Tuple[int, ...]:
    """Heights of the L-path matched with alpha in Q^I(i, j)."""
    if alpha not in enum_q_i(i, j):
        raise IndexSetError(f"{alpha} is not in Q^I({i},{j})")
    falls = {_at(alpha, r) + n - i + r - 1 for r in range(1, i - j + 1)}
    return _walk(i, n, falls)


def sequence_from_path(heights: Sequence[int]) -> IndexSequence:
    n = len(heights) - 1
    i = heights[0]
    falls = _fall_positions(heights)
    return tuple(k + i - r + 1 - n for r, k in enumerate(falls, start=1))


def inverse_path_from_sequence(alpha: IndexSequence, i: int, j: int, n: int) -> Tuple[int, ...]:
    """Heights of the inverse-weighted L-path matched with alpha in Q^SD(i, j)."""
    if alpha not in enum_q_sd(i, j):
        raise IndexSetError(f"{alpha} is not in Q^SD({i},{j})")
    falls = {n - _at(alpha, r) - 1 for r in range(1, i - j + 1)}
    return _walk(i, n, falls)


def sequence_from_inverse_path(heights: Sequence[int]) -> IndexSequence:
    n = len(heights) - 1
    return tuple(n - k - 1 for k in _fall_positions(heights))


def _walk(start: int, n: int, falls: set) -> Tuple[int, ...]:
    heights = [start]
    for k in range(n):
        heights.append(heights[-1] - 1 if k in falls else heights[-1])
    return tuple(heights)


def _fall_positions(heights: Sequence[int]) -> List[int]:
    return [k for k in range(len(heights) - 1) if heights[k + 1] == heights[k] - 1]
