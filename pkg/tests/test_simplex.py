from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metricsplit.simplex import find_feasible


def satisfies(A, b, x):
    return all(v >= 0 for v in x) and all(sum(a * v for a, v in zip(row, x)) == rhs for row, rhs in zip(A, b))


def test_simple_feasible():
    A = [[1, 1], [1, -1]]
    b = [2, 0]
    x = find_feasible(A, b)
    assert x == [1, 1]


def test_infeasible_sign():
    assert find_feasible([[1, 1]], [-1]) is None


def test_infeasible_system():
    assert find_feasible([[1, 0], [1, 0]], [1, 2]) is None


def test_redundant_rows():
    A = [[1, 2], [2, 4]]
    b = [3, 6]
    assert satisfies(A, b, find_feasible(A, b))


def test_degenerate_problem_terminates():
    # classic cycling example for the textbook pivot rule, as equalities with slacks
    A = [
        [Fraction(1, 4), -8, -1, 9, 1, 0, 0],
        [Fraction(1, 2), -12, Fraction(-1, 2), 3, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1],
    ]
    b = [0, 0, 1]
    assert satisfies(A, b, find_feasible(A, b))


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        find_feasible([[1, 2], [1]], [1, 1])


small = st.integers(-3, 3)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_feasible_by_construction(m, n, data):
    A = [[data.draw(small) for _ in range(n)] for _ in range(m)]
    x0 = [data.draw(st.integers(0, 3)) for _ in range(n)]
    b = [sum(a * v for a, v in zip(row, x0)) for row in A]
    x = find_feasible(A, b)
    assert x is not None and satisfies(A, b, x)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_answers_are_certified(m, n, data):
    A = [[data.draw(small) for _ in range(n)] for _ in range(m)]
    b = [data.draw(small) for _ in range(m)]
    x = find_feasible(A, b)
    if x is not None:
        assert satisfies(A, b, x)
    else:
        # no rational solution means no small integer one either
        assert not _has_integer_solution(A, b)


def _has_integer_solution(A, b, bound=6):
    n = len(A[0])
    for x in product(range(bound + 1), repeat=n):
        if satisfies(A, b, x):
            return True
    return False
