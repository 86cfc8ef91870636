import math

import numpy as np
import pytest

from ffiter import (
    FunctionTable,
    LengthMismatch,
    NotInjective,
    OutOfRange,
    ValidationError,
    as_permutation,
    descent_bound,
    validate_table,
)


def test_validate_paper_table():
    t = validate_table([5, 6, 3, 5, 2, 2, 1], 7)
    assert t.n == 7
    assert dict(t.successors()) == {0: 5, 5: 2, 2: 3, 3: 5, 4: 2, 6: 1, 1: 6}


def test_single_point():
    assert validate_table([0], 1).values == (0,)


def test_out_of_range_reports_first_offender():
    with pytest.raises(OutOfRange) as exc:
        validate_table([0, 3, 1], 3)
    assert (exc.value.index, exc.value.value) == (1, 3)


@pytest.mark.parametrize("raw,n", [([0, 1], 3), ([0, 0, 0], 2)])
def test_length_mismatch(raw, n):
    with pytest.raises(LengthMismatch):
        validate_table(raw, n)


def test_empty_and_non_integer_rejected():
    with pytest.raises(ValidationError):
        validate_table([], 0)
    with pytest.raises(ValidationError):
        validate_table([0.0])
    with pytest.raises(ValidationError):
        validate_table(np.zeros((2, 2), dtype=int))


def test_accepts_numpy():
    t = validate_table(np.array([1, 0], dtype=np.int32))
    assert t.values == (1, 0) and all(type(v) is int for v in t.values)


def test_not_injective_on_coded_example():
    with pytest.raises(NotInjective) as exc:
        as_permutation(FunctionTable(7, (1, 2, 3, 1, 5, 4, 2)))
    assert (exc.value.value, exc.value.first, exc.value.second) == (1, 0, 3)


@pytest.mark.parametrize("values,inverse", [((0, 1, 2), (0, 1, 2)), ((2, 0, 1), (1, 2, 0))])
def test_permutation_inverse(values, inverse):
    assert as_permutation(validate_table(values)).inverse == inverse


def test_descent_bound_matches_closed_form():
    for n in range(1, 5000):
        expected = math.floor((math.sqrt(1 + 8 * n) - 3) / 2)
        assert descent_bound(n) == expected
        d = descent_bound(n)
        assert (d + 1) * (d + 2) // 2 <= n < (d + 2) * (d + 3) // 2
