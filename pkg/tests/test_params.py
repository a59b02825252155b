import random
from fractions import Fraction

import pytest

from src.core.errors import ParamError
from src.core.params import ParamSet, Positivity, family_of, random_params


def test_family_sizes(fig_params):
    assert len(fig_params.lower) == 3
    assert len(fig_params.diag) == 3
    assert len(fig_params.upper) == 3
    assert fig_params.t(2, 1) == 5
    assert fig_params.t(1, 1) == 4
    assert fig_params.t(0, 2) == 3
    assert family_of((2, 1)) == "lower"
    assert family_of((1, 2)) == "upper"


def test_missing_parameter_is_named():
    with pytest.raises(ParamError, match=r"t\(2,1\)") as info:
        ParamSet.from_families(
            2,
            lower={(1, 0): 1, (2, 0): 1},
            diag={0: 1, 1: 1, 2: 1},
            upper={(0, 1): 1, (0, 2): 1, (1, 2): 1},
        )
    assert info.value.index == (2, 1)
    assert info.value.family == "lower"


def test_index_outside_order_or_family_is_rejected():
    with pytest.raises(ParamError, match="outside order"):
        ParamSet.from_families(1, lower={(1, 0): 1, (2, 0): 1}, diag={0: 1, 1: 1}, upper={(0, 1): 1})
    with pytest.raises(ParamError, match="not a lower index"):
        ParamSet.from_families(1, lower={(0, 1): 1}, diag={0: 1, 1: 1}, upper={(0, 1): 1})


def test_values_are_canonical_fractions():
    params = ParamSet.uniform(1, "2/4")
    assert params.t(1, 0) == Fraction(1, 2)
    assert isinstance(params.t(0, 0), Fraction)
    with pytest.raises(TypeError):
        ParamSet.uniform(1, 0.5)


def test_positivity_modes():
    zeros = ParamSet.uniform(2, 0, diag=1)
    assert zeros.check(Positivity.NONNEG) is zeros
    with pytest.raises(ParamError, match="must be > 0"):
        zeros.check(Positivity.STRICT)

    zero_diag = ParamSet.uniform(1, 1, diag=0)
    with pytest.raises(ParamError) as info:
        zero_diag.check("nonneg")
    assert info.value.family == "diag"

    negative = ParamSet.from_families(1, lower={(1, 0): -1}, diag={0: 1, 1: 1}, upper={(0, 1): 1})
    assert negative.violation(Positivity.NONNEG) == (1, 0)


def test_transposed_swaps_families(fig_params):
    swapped = ParamSet.from_families(
        2,
        lower={(1, 0): 2, (2, 0): 3, (2, 1): 5},
        diag={0: 1, 1: 4, 2: 7},
        upper={(0, 1): 2, (0, 2): 3, (1, 2): 5},
    ).transposed()
    assert swapped.t(0, 1) == fig_params.t(1, 0)
    assert swapped.t(2, 0) == fig_params.t(0, 2)
    assert swapped.transposed() == fig_params


def test_restricted_keeps_low_indices(fig_params):
    head = fig_params.restricted(1)
    assert head.order == 1
    assert head.values == {(0, 0): 1, (0, 1): 2, (1, 0): 2, (1, 1): 4}
    with pytest.raises(ParamError):
        fig_params.restricted(3)


def test_random_params_are_reproducible():
    first = random_params(3, random.Random(1))
    second = random_params(3, random.Random(1))
    assert first == second
    assert first.violation() is None
    signed = random_params(4, random.Random(2), signed=True)
    assert all(value != 0 for value in signed.values.values())
    assert any(value < 0 for value in signed.values.values())


def test_param_sets_are_unhashable(fig_params):
    with pytest.raises(TypeError):
        hash(fig_params)
    assert fig_params == fig_params.transposed().transposed()
