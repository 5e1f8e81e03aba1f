"""Tests for the exact combinatorial primitives."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqfam.exact import (binomial, falling_factorial, format_exact, gould_sum, normalize,
                          parse_exact, pochhammer)


def pascal_triangle(rows):
    """Independent binomial oracle: build Pascal's triangle by addition only."""
    triangle = [[1]]
    for a in range(1, rows + 1):
        prev = triangle[-1]
        triangle.append([1] + [prev[k - 1] + prev[k] for k in range(1, a)] + [1])
    return triangle


def test_binomial_against_pascal_oracle():
    triangle = pascal_triangle(64)
    for a in range(65):
        for k in range(a + 1):
            assert binomial(a, k) == triangle[a][k]


def test_binomial_out_of_range_is_zero():
    assert binomial(3, 4) == 0
    assert binomial(3, -1) == 0
    assert binomial(0, 1) == 0


def test_binomial_known_values():
    assert binomial(5, 2) == 10
    assert all(binomial(n, 0) == 1 for n in range(20))


def test_binomial_rejects_negative_upper_index():
    with pytest.raises(ValueError):
        binomial(-1, 0)


@given(st.integers(0, 64), st.integers(-5, 70))
def test_binomial_symmetry(a, k):
    assert binomial(a, k) == binomial(a, a - k)


@given(st.integers(1, 64), st.integers(1, 64))
@settings(max_examples=200)
def test_binomial_pascal_rule(a, k):
    if k <= a:
        assert binomial(a, k) == binomial(a - 1, k - 1) + binomial(a - 1, k)


def test_pochhammer_factorial_oracle():
    # (a)_n = (a+n-1)! / (a-1)! for a >= 1
    for a in range(1, 11):
        for n in range(9):
            expected = math.factorial(a + n - 1) // math.factorial(a - 1)
            assert pochhammer(a, n) == expected


def test_pochhammer_known_values():
    assert pochhammer(3, 3) == 60
    assert pochhammer(-2, 4) == 0  # the factor (-2 + 2) kills the product
    assert all(pochhammer(a, 0) == 1 for a in range(-5, 6))


def test_pochhammer_shift_identity():
    # l * (l*m + 1)_n * m == (l*m)_{n+1} for all m != 0
    for m in range(-8, 9):
        if m == 0:
            continue
        for l in range(1, 13):
            for n in range(11):
                assert l * pochhammer(l * m + 1, n) * m == pochhammer(l * m, n + 1)


def test_falling_factorial_factorial_oracle():
    for m in range(13):
        for n in range(m + 1):
            assert falling_factorial(m, n) == math.factorial(m) // math.factorial(m - n)


def test_falling_factorial_known_values():
    assert falling_factorial(3, 2) == 6
    assert falling_factorial(6, 6) == 720
    assert falling_factorial(5, 0) == 1


def test_falling_factorial_contract():
    with pytest.raises(ValueError):
        falling_factorial(2, 3)
    with pytest.raises(ValueError):
        falling_factorial(3, -1)


def test_gould_sum_small_values():
    # n=1: -C(1,1)*1^2; n=2: -2*1 + 1*8; n=3: -3 + 48 - 81
    assert gould_sum(1) == -1
    assert gould_sum(2) == 6
    assert gould_sum(3) == -36


def test_gould_sum_closed_form():
    for n in range(1, 21):
        assert gould_sum(n) == (-1) ** n * math.factorial(n) * n * (n + 1) // 2


def test_gould_sum_rejects_zero():
    with pytest.raises(ValueError):
        gould_sum(0)


def test_normalize_and_formatting():
    assert normalize(Fraction(4, 2)) == 2 and isinstance(normalize(Fraction(4, 2)), int)
    assert normalize(Fraction(1, 2)) == Fraction(1, 2)
    assert format_exact(Fraction(3, 6)) == "1/2"
    assert format_exact(-15) == "-15"
    assert parse_exact("-7") == -7
    assert parse_exact("4/6") == Fraction(2, 3)
    assert parse_exact("6/3") == 2
