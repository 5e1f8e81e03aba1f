"""Tests for the floating-point product evaluation."""

import pytest

from seqfam.families import FIB, LucasFamily, PochhammerFamily, PowerFamily, X
from seqfam.floatcheck import (chebyshev_zero_sum, classic_fibonacci,
                               classic_fibonacci_products, compare_grid, float_product)


def test_fibonacci_member_product():
    result = float_product(FIB, 6, 1)
    assert result.exact == 13
    assert result.relative_error < 1e-12
    assert result.imaginary_residual < 1e-12


def test_single_factor_is_exact():
    # one factor, cos(pi/2) contributes nothing to the real part
    result = float_product(FIB, 1, 5)
    assert result.exact == 5
    assert result.real == 5.0


def test_positive_q_product():
    # recursion oracle for q=2, m=3: 0, 1, 3, 7, 15, 31
    result = float_product(LucasFamily(2), 4, 3)
    assert result.exact == 31
    assert result.imag == 0.0
    assert result.relative_error < 1e-12


def test_real_family_products():
    for family in (PowerFamily(2), PochhammerFamily()):
        for n in range(1, 12):
            for m in range(-6, 7):
                result = float_product(family, n, m)
                assert result.relative_error < 1e-12
                assert result.imag == 0.0


@pytest.mark.parametrize("q", [-2, -1, 1, 2])
def test_lucas_grid_within_tolerance(q):
    for result in compare_grid(LucasFamily(q), (1, 25), (-10, 10)):
        assert result.within(1e-9), (q, result.n, result.m, result.relative_error)


def test_relative_error_guard_at_exact_zero():
    # X = 0 here; the max(1, |exact|) denominator keeps the ratio finite
    result = float_product(FIB, 1, 0)
    assert result.exact == 0
    assert result.relative_error < 1e-12


def test_chebyshev_zero_sums():
    assert abs(chebyshev_zero_sum(1)) < 1e-15
    assert abs(chebyshev_zero_sum(2)) < 1e-15
    for n in range(1, 26):
        assert abs(chebyshev_zero_sum(n)) < 1e-12


def test_chebyshev_zero_sum_rejects_zero():
    with pytest.raises(ValueError):
        chebyshev_zero_sum(0)


def test_classic_product_forms_agree_with_fibonacci():
    for n in range(2, 31):
        expected = classic_fibonacci(n)
        real_form, complex_form = classic_fibonacci_products(n)
        scale = max(1.0, float(expected))
        assert abs(real_form - expected) / scale < 1e-9
        assert abs(complex_form - expected) / scale < 1e-9


def test_classic_fibonacci_oracle():
    a, b = 0, 1
    for n in range(0, 31):
        assert classic_fibonacci(n) == a
        a, b = b, a + b


def test_result_serialization():
    payload = float_product(FIB, 6, 1).to_json_dict()
    assert payload["family"] == "lucas:-1"
    assert payload["exact"] == "13"
    assert isinstance(payload["relative_error"], float)
