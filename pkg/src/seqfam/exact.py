"""Exact integer and rational arithmetic primitives.

Every value in this package is a Python ``int`` or a ``fractions.Fraction``;
nothing here ever rounds.  Rationals only appear when a family parameter is
itself rational or when an identity divides by a power of the sequence label.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

ExactScalar = Union[int, Fraction]


def normalize(value: ExactScalar) -> ExactScalar:
    """Collapse a Fraction with denominator 1 to a plain int."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def parse_exact(text: str) -> ExactScalar:
    """Parse ``"3"``, ``"-7"`` or ``"p/q"`` into an exact scalar."""
    text = text.strip()
    if "/" in text:
        return normalize(Fraction(text))
    return int(text)


def format_exact(value: ExactScalar) -> str:
    """Render an exact scalar as a decimal string (``p/q`` for rationals)."""
    value = normalize(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def binomial(a: int, k: int) -> int:
    """C(a, k), with C(a, k) = 0 whenever k < 0 or k > a.

    The zero convention matches the summation ranges used throughout the
    identity catalog, where out-of-range binomials silently drop terms.
    """
    if a < 0:
        raise ValueError(f"binomial: upper index must be non-negative, got {a}")
    if k < 0 or k > a:
        return 0
    return math.comb(a, k)


def pochhammer(a: int, n: int) -> int:
    """Rising product a * (a+1) * ... * (a+n-1); the empty product (n=0) is 1."""
    if n < 0:
        raise ValueError(f"pochhammer: length must be non-negative, got {n}")
    result = 1
    for i in range(n):
        result *= a + i
    return result


def falling_factorial(m: int, n: int) -> int:
    """m * (m-1) * ... * (m-n+1) for m >= n >= 0.

    Computed as the short product (math.perm), never as a quotient of two
    large factorials.
    """
    if not m >= n >= 0:
        raise ValueError(f"falling_factorial requires m >= n >= 0, got m={m}, n={n}")
    return math.perm(m, n)


def gould_sum(n: int) -> int:
    """Alternating binomial power sum  sum_{l=1..n} (-1)^l C(n,l) l^(n+1).

    Closed form: (-1)^n * n! * n(n+1)/2.  The sign of this sum is load-bearing
    for the root-sum identity of the catalog, so the closed form is re-checked
    on every call.
    """
    if n < 1:
        raise ValueError(f"gould_sum requires n >= 1, got {n}")
    total = sum((-1) ** l * math.comb(n, l) * l ** (n + 1) for l in range(1, n + 1))
    closed = (-1) ** n * math.factorial(n) * (n * (n + 1) // 2)
    if total != closed:
        raise ArithmeticError(f"gould_sum closed form mismatch at n={n}: {total} != {closed}")
    return total
