"""
Network weight parameters t[a, b] of an order-n essential planar network.

One index space covers all three families: a > b is a lower (fall-edge)
weight, a == b a diagonal weight and a < b an upper (rise-edge) weight.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple

from src.core.errors import ParamError
from src.core.matrix import to_rat

Index = Tuple[int, int]


class Positivity(str, Enum):
    STRICT = "strict"
    NONNEG = "nonneg"


def lower_indices(order: int) -> Iterator[Index]:
    for j in range(1, order + 1):
        for s in range(j):
            yield (j, s)


def diag_indices(order: int) -> Iterator[Index]:
    for i in range(order + 1):
        yield (i, i)


def upper_indices(order: int) -> Iterator[Index]:
    for j in range(1, order + 1):
        for s in range(j):
            yield (s, j)


def _name(index: Index) -> str:
    return f"t({index[0]},{index[1]})"


def family_of(index: Index) -> str:
    a, b = index
    if a > b:
        return "lower"
    if a == b:
        return "diag"
    return "upper"


@dataclass(frozen=True)
class ParamSet:
    order: int
    values: Mapping[Index, Fraction]

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ParamError(f"order must be nonnegative, got {self.order}")
        expected = {(a, b) for a in range(self.order + 1) for b in range(self.order + 1)}
        present = set(self.values)
        for index in sorted(expected - present):
            raise ParamError(
                f"missing {family_of(index)} parameter {_name(index)}",
                index=index,
                family=family_of(index),
            )
        for index in sorted(present - expected):
            raise ParamError(
                f"parameter {_name(index)} is outside order {self.order}",
                index=index,
                family=family_of(index),
            )
        object.__setattr__(self, "values", {key: to_rat(self.values[key]) for key in sorted(expected)})

    @classmethod
    def from_families(
        cls,
        order: int,
        lower: Mapping[Index, object],
        diag: Mapping[int, object],
        upper: Mapping[Index, object],
    ) -> "ParamSet":
        values: Dict[Index, object] = {}
        for family, entries in (("lower", lower), ("upper", upper)):
            for index, value in entries.items():
                if family_of(index) != family:
                    raise ParamError(f"{_name(index)} is not a {family} index", index=index, family=family)
                if index in values:
                    raise ParamError(f"duplicate {family} parameter {_name(index)}", index=index, family=family)
                values[index] = value
        for i, value in diag.items():
            values[(i, i)] = value
        return cls(order, values)

    @classmethod
    def uniform(cls, order: int, value: object = 1, diag: Optional[object] = None) -> "ParamSet":
        diag_value = value if diag is None else diag
        return cls(
            order,
            {(a, b): (diag_value if a == b else value) for a in range(order + 1) for b in range(order + 1)},
        )

    def t(self, a: int, b: int) -> Fraction:
        return self.values[(a, b)]

    @property
    def lower(self) -> Dict[Index, Fraction]:
        return {index: self.values[index] for index in lower_indices(self.order)}

    @property
    def diag(self) -> Dict[int, Fraction]:
        return {i: self.values[(i, i)] for i in range(self.order + 1)}

    @property
    def upper(self) -> Dict[Index, Fraction]:
        return {index: self.values[index] for index in upper_indices(self.order)}

    def transposed(self) -> "ParamSet":
        return ParamSet(self.order, {(b, a): value for (a, b), value in self.values.items()})

    def restricted(self, order: int) -> "ParamSet":
        if not 0 <= order <= self.order:
            raise ParamError(f"cannot restrict order {self.order} parameters to order {order}")
        return ParamSet(
            order,
            {(a, b): value for (a, b), value in self.values.items() if a <= order and b <= order},
        )

    def violation(self, mode: Positivity = Positivity.STRICT) -> Optional[Index]:
        for index, value in self.values.items():
            if mode is Positivity.STRICT or index[0] == index[1]:
                if value <= 0:
                    return index
            elif value < 0:
                return index
        return None

    def check(self, mode: Positivity = Positivity.STRICT) -> "ParamSet":
        mode = Positivity(mode)
        index = self.violation(mode)
        if index is not None:
            bound = "> 0" if mode is Positivity.STRICT or index[0] == index[1] else ">= 0"
            raise ParamError(
                f"{family_of(index)} parameter {_name(index)} = {self.values[index]} must be {bound}",
                index=index,
                family=family_of(index),
            )
        return self


def random_params(
    order: int,
    rng: random.Random,
    max_numerator: int = 9,
    max_denominator: int = 4,
    signed: bool = False,
) -> ParamSet:
    """Random positive rationals (or nonzero ones of either sign when `signed`)."""
    values: Dict[Index, Fraction] = {}
    for a in range(order + 1):
        for b in range(order + 1):
            value = Fraction(rng.randint(1, max_numerator), rng.randint(1, max_denominator))
            if signed and rng.random() < 0.5:
                value = -value
            values[(a, b)] = value
    return ParamSet(order, values)
