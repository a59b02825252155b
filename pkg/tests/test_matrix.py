import random
from fractions import Fraction
from itertools import permutations

import pytest

from src.core.errors import DimensionError, EliminationError, FormatError, IndexSetError
from src.core.matrix import (
    RatMatrix,
    bareiss_determinant,
    cofactor_determinant,
    determinant,
    format_rat,
    is_totally_positive,
    iter_minor_indices,
    ldu_eliminate,
    mat_mul,
    minor,
    parse_rat,
    to_rat,
)


def _random_matrix(rng, rows, cols, low=-6, high=6):
    return RatMatrix(
        [[Fraction(rng.randint(low, high), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]
    )


def _leibniz(rows):
    size = len(rows)
    total = Fraction(0)
    for perm in permutations(range(size)):
        inversions = sum(1 for a in range(size) for b in range(a + 1, size) if perm[a] > perm[b])
        term = Fraction(1)
        for r, c in enumerate(perm):
            term *= rows[r][c]
        total += -term if inversions % 2 else term
    return total


def test_parse_and_format_rat():
    assert parse_rat("4/2") == 2
    assert parse_rat("-3/6") == Fraction(-1, 2)
    assert parse_rat(" 7 ") == 7
    assert format_rat(Fraction(6, 3)) == "2"
    assert format_rat(Fraction(-4, 6)) == "-2/3"
    with pytest.raises(FormatError):
        parse_rat("1/0")
    with pytest.raises(FormatError):
        parse_rat("0.5")
    with pytest.raises(FormatError):
        parse_rat("\u0663")


def test_to_rat_refuses_inexact_values():
    with pytest.raises(TypeError):
        to_rat(0.5)
    with pytest.raises(TypeError):
        to_rat(True)
    assert to_rat("3/9") == Fraction(1, 3)


def test_matrix_is_immutable_and_compares_exactly():
    m = RatMatrix([[1, "1/2"], [Fraction(2, 4), 3]])
    copy = m.array()
    copy[0, 0] = Fraction(9)
    assert m[0, 0] == 1
    assert m == RatMatrix([["2/2", Fraction(1, 2)], ["1/2", 3]])
    assert m != RatMatrix([[1, 0], [0, 1]])
    with pytest.raises(DimensionError):
        RatMatrix([[1, 2], [3]])
    with pytest.raises(DimensionError):
        RatMatrix([])


def test_mat_mul_examples():
    m = RatMatrix([[1, 2, 3], [4, 5, 6], [7, 8, "1/9"]])
    assert RatMatrix.identity(3) @ m == m

    lower = RatMatrix([[1, 0, 0], [2, 1, 0], [6, 8, 1]])
    inverse = RatMatrix([[1, 0, 0], [-2, 1, 0], [10, -8, 1]])
    assert mat_mul(lower, inverse) == RatMatrix.identity(3)

    product = RatMatrix([[1, 0], [2, 1]]) @ RatMatrix.diagonal([1, 3]) @ RatMatrix([[1, 4], [0, 1]])
    assert product == RatMatrix([[1, 4], [2, 11]])


def test_mat_mul_dimension_error_names_both_shapes():
    with pytest.raises(DimensionError, match="2x3.*2x2"):
        mat_mul(RatMatrix.zeros(2, 3), RatMatrix.zeros(2, 2))


def test_mat_mul_is_associative():
    rng = random.Random(7)
    for _ in range(20):
        p, q, r, s = (rng.randint(1, 4) for _ in range(4))
        a, b, c = _random_matrix(rng, p, q), _random_matrix(rng, q, r), _random_matrix(rng, r, s)
        assert (a @ b) @ c == a @ (b @ c)


def test_minor_examples():
    assert minor(RatMatrix([[1, 4], [2, 11]]), [0, 1], [0, 1]) == 3
    assert minor(RatMatrix.identity(2), [0], [1]) == 0
    assert minor(RatMatrix([[1, 2], [3, 4]]), [0, 1], [0, 1]) == -2


@pytest.mark.parametrize(
    "rows, cols",
    [([0, 1], [0]), ([], []), ([0, 2], [0, 1]), ([1, 0], [0, 1])],
)
def test_minor_rejects_bad_index_sets(rows, cols):
    with pytest.raises(IndexSetError):
        minor(RatMatrix.identity(2), rows, cols)


def test_determinant_matches_permutation_expansion():
    rng = random.Random(11)
    for size in range(1, 5):
        for _ in range(10):
            rows = _random_matrix(rng, size, size).tolist()
            expected = _leibniz(rows)
            assert cofactor_determinant(rows) == expected
            assert bareiss_determinant(rows) == expected


def test_bareiss_and_cofactor_agree_above_cutoff():
    rng = random.Random(12)
    for size in (5, 6):
        for _ in range(5):
            m = _random_matrix(rng, size, size)
            assert determinant(m) == cofactor_determinant(m.tolist())
    # a zero leading pivot forces a row swap
    swapped = RatMatrix([[0, 1, 2, 3, 4], [1, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    assert determinant(swapped) == -1


def test_minor_index_order_and_count():
    indices = list(iter_minor_indices(3))
    assert indices[0] == ((0,), (0,))
    assert indices[1] == ((0,), (1,))
    assert indices[-1] == ((0, 1, 2), (0, 1, 2))
    assert len(list(iter_minor_indices(5))) == 251


def test_is_totally_positive_examples():
    assert is_totally_positive(RatMatrix([[1, 4], [2, 11]])).passed

    result = is_totally_positive(RatMatrix.identity(2))
    assert not result.passed
    assert result.witness.rows == (0,) and result.witness.cols == (1,)
    assert result.witness.describe() == "rows {0} cols {1}"

    result = is_totally_positive(RatMatrix([[1, 2], [3, 4]]))
    assert not result.passed
    assert result.witness.describe() == "rows {0,1} cols {0,1}"
    assert result.witness.value == -2


def test_nonneg_mode_needs_positive_leading_minors():
    assert is_totally_positive(RatMatrix.identity(3), strict=False).passed
    assert not is_totally_positive(RatMatrix([[0, 0], [0, 1]]), strict=False).passed
    with pytest.raises(DimensionError):
        is_totally_positive(RatMatrix.zeros(2, 3))


def test_ldu_examples():
    L, D, U = ldu_eliminate(RatMatrix([[1, 4], [2, 11]]))
    assert L == RatMatrix([[1, 0], [2, 1]])
    assert D == RatMatrix.diagonal([1, 3])
    assert U == RatMatrix([[1, 4], [0, 1]])

    eye = RatMatrix.identity(3)
    assert tuple(ldu_eliminate(eye)) == (eye, eye, eye)


def test_ldu_zero_pivot_reports_order():
    with pytest.raises(EliminationError) as info:
        ldu_eliminate(RatMatrix([[0, 1], [1, 0]]))
    assert info.value.order == 1

    with pytest.raises(EliminationError) as info:
        ldu_eliminate(RatMatrix([[1, 2, 0], [2, 4, 1], [0, 1, 1]]))
    assert info.value.order == 2


def test_ldu_reassembles_random_matrices():
    rng = random.Random(3)
    checked = 0
    while checked < 20:
        size = rng.randint(1, 5)
        a = _random_matrix(rng, size, size)
        try:
            L, D, U = ldu_eliminate(a)
        except EliminationError:
            continue
        assert L @ D @ U == a
        assert L.is_unit_lower() and U.is_unit_upper() and D.is_diagonal()
        checked += 1


def test_totally_positive_implies_elimination_succeeds():
    rng = random.Random(5)
    for _ in range(40):
        a = RatMatrix([[rng.randint(1, 9) for _ in range(3)] for _ in range(3)])
        if is_totally_positive(a).passed:
            L, D, U = ldu_eliminate(a)
            assert L @ D @ U == a


def test_rows_and_columns_agree_with_transpose():
    m = RatMatrix([[1, 2, 3], [4, 5, "6/7"]])
    assert m.column(2) == (3, Fraction(6, 7))
    assert all(m.column(j) == m.T.row(j) for j in range(m.cols))
    assert list(m) == [m.row(0), m.row(1)]
