"""Floating-point evaluation of the literal root products.

The exact evaluators in :mod:`seqfam.families` never touch the cosine
products that define the Lucas-type families; this module multiplies those
factors out in double precision and quantifies the agreement with the exact
members, validating the product representation numerically.  Factors are
multiplied in increasing l order; at desk scale (n <= 30, |m| <= 10) the
rounding error stays orders of magnitude below the default 1e-9 tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from .exact import ExactScalar
from .families import FIB, Family, LucasFamily, X, family_label, roots_float


@dataclass(frozen=True)
class FloatCompareResult:
    """Float product vs exact member at one point.

    ``real``/``imag`` are the components of the evaluated product; for
    families with complex root factors (LucasFamily with q < 0) the imaginary
    part should cancel, and its magnitude is kept as ``imaginary_residual``.
    ``relative_error`` uses max(1, |exact|) as denominator so exact zeros are
    handled without special cases.
    """

    family: str
    n: int
    m: int
    exact: ExactScalar
    real: float
    imag: float
    relative_error: float
    imaginary_residual: float

    def within(self, tol: float) -> bool:
        scale = max(1.0, abs(float(self.exact)))
        return self.relative_error < tol and self.imaginary_residual / scale < tol

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "m": self.m,
            "exact": str(self.exact),
            "float_real": self.real,
            "float_imag": self.imag,
            "relative_error": self.relative_error,
            "imaginary_residual": self.imaginary_residual,
        }


def float_product(family: Family, n: int, m: int) -> FloatCompareResult:
    """Multiply the n root factors (m + x[n,l]) in double precision.

    For LucasFamily(q < 0) the factors are complex, m + i*value, and the
    product's imaginary part is expected to cancel to rounding noise.
    """
    roots = roots_float(family, n)
    if isinstance(family, LucasFamily) and family.q < 0:
        product = complex(1.0, 0.0)
        for r in roots:
            product *= complex(m, r)
        real, imag = product.real, product.imag
    else:
        real = 1.0
        for r in roots:
            real *= m + r
        imag = 0.0

    exact = X(family, n, m)
    scale = max(1.0, abs(float(exact)))
    return FloatCompareResult(
        family=family_label(family),
        n=n,
        m=m,
        exact=exact,
        real=real,
        imag=imag,
        relative_error=abs(real - float(exact)) / scale,
        imaginary_residual=abs(imag),
    )


def compare_grid(family: Family, n_range: Tuple[int, int], m_range: Tuple[int, int]
                 ) -> List[FloatCompareResult]:
    """float_product over an inclusive (n, m) rectangle."""
    return [
        float_product(family, n, m)
        for n in range(n_range[0], n_range[1] + 1)
        for m in range(m_range[0], m_range[1] + 1)
    ]


def chebyshev_zero_sum(n: int) -> float:
    """sum_{l=1..n} cos(l*pi/(n+1)); symmetric zeros, so ~0 to rounding."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return sum(math.cos(l * math.pi / (n + 1)) for l in range(1, n + 1))


def classic_fibonacci_products(n: int) -> Tuple[float, float]:
    """Both product forms for the classic Fibonacci number F_n, n >= 2.

    Returns (real_form, complex_form): the product of (3 + 2cos(2*l*pi/n))
    over l = 1..floor((n-1)/2), and the real part of the product of
    (1 - 2i*cos(l*pi/n)) over l = 1..n-1.  Both equal F_n.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    real_form = 1.0
    for l in range(1, (n - 1) // 2 + 1):
        real_form *= 3.0 + 2.0 * math.cos(2.0 * l * math.pi / n)
    complex_form = complex(1.0, 0.0)
    for l in range(1, n):
        complex_form *= complex(1.0, -2.0 * math.cos(l * math.pi / n))
    return real_form, complex_form.real


def classic_fibonacci(n: int) -> int:
    """Exact F_n (F_0 = 0, F_1 = 1) via the generalized Fibonacci family."""
    if n == 0:
        return 0
    return X(FIB, n - 1, 1)
