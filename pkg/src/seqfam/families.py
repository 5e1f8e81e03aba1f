"""Families of product-representable number sequences.

A family is a two-parameter root set ``x[n,l]``; member (n, m) of the family
is the product

    X(n, m) = prod_{l=1..n} (m + x[n,l])

where ``m`` labels the individual sequences and ``n`` the members within each
sequence.  Four concrete families are provided:

* ``PowerFamily(c)``      -- constant roots c, so X(n, m) = (m + c)^n
* ``PochhammerFamily()``  -- roots l, so X(n, m) = (m+1)(m+2)...(m+n)
* ``LucasFamily(q)``      -- roots -2*sqrt(q)*cos(l*pi/(n+1)); X(n, m) is the
  general Lucas number L[n+1] of the recursion L[k] = m*L[k-1] - q*L[k-2]
  with L[0] = 0, L[1] = 1.  ``q = -1`` gives the generalized Fibonacci
  family (Fibonacci at m = 1, Pell at m = 2).
* ``ExplicitRootsFamily(generator)`` -- caller-supplied exact roots, with
  X(n, m) evaluated as the literal product.

Lucas-type roots are irrational (complex for q < 0), so those members are
evaluated through the integer recursion rather than the product; the literal
cosine product is exercised in floating point by :mod:`seqfam.floatcheck`.
All evaluators are exact for every integer m, positive or negative, and cache
computed members, so repeated lookups during identity sweeps are cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple, Union

from .exact import ExactScalar, format_exact, normalize, pochhammer


@dataclass(frozen=True)
class PowerFamily:
    """Constant roots x[n,l] = c; members are the pure powers (m + c)^n."""

    c: ExactScalar = 0

    def label(self) -> str:
        return f"power:{format_exact(self.c)}"


@dataclass(frozen=True)
class PochhammerFamily:
    """Roots x[n,l] = l; members are the rising products (m+1)_n."""

    def label(self) -> str:
        return "pochhammer"


@dataclass(frozen=True)
class LucasFamily:
    """Scaled Chebyshev-cosine roots; members are general Lucas numbers.

    X(n, m) = L[n+1] for L[0] = 0, L[1] = 1, L[k] = m*L[k-1] - q*L[k-2].
    q must be a nonzero integer; q = -1 is the generalized Fibonacci family.
    """

    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or self.q == 0:
            raise ValueError(f"LucasFamily requires a nonzero integer q, got {self.q!r}")

    def label(self) -> str:
        return f"lucas:{self.q}"


class ExplicitRootsFamily:
    """Family with caller-supplied exact roots.

    ``generator(n, l)`` must return an exact scalar for every n >= 1 and
    1 <= l <= n.  Members are evaluated as the literal product, so this is
    also the brute-force oracle for families that have a dedicated evaluator.
    """

    def __init__(self, generator: Callable[[int, int], ExactScalar], label: str = "roots"):
        self.generator = generator
        self._label = label

    def label(self) -> str:
        return self._label

    def __repr__(self) -> str:
        return f"ExplicitRootsFamily({self._label!r})"


Family = Union[PowerFamily, PochhammerFamily, LucasFamily, ExplicitRootsFamily]

#: The generalized Fibonacci family (CLI selector "fib").
FIB = LucasFamily(-1)


def family_label(family: Family) -> str:
    return family.label()


# Lucas columns keyed by (q, m); lists are replaced wholesale when extended,
# which keeps concurrent readers safe (stale lists are merely shorter).
_lucas_columns: Dict[Tuple[int, int], List[int]] = {}


def _lucas_number(q: int, m: int, k: int) -> int:
    column = _lucas_columns.get((q, m))
    if column is None or len(column) <= k:
        extended = [0, 1] if column is None else list(column)
        while len(extended) <= k:
            extended.append(m * extended[-1] - q * extended[-2])
        _lucas_columns[(q, m)] = extended
        column = extended
    return column[k]


_member_cache: Dict[Tuple[Family, int, int], ExactScalar] = {}


def X(family: Family, n: int, m: int) -> ExactScalar:
    """Member (n, m) of the family: the product over l of (m + x[n,l]).

    n = 0 is the empty product (1 for every family); the result is an integer
    whenever all roots and m are integers.
    """
    if n < 0:
        raise ValueError(f"member index n must be >= 0, got {n}")
    key = (family, n, m)
    value = _member_cache.get(key)
    if value is None:
        value = _member_cache.setdefault(key, _evaluate_member(family, n, m))
    return value


def _evaluate_member(family: Family, n: int, m: int) -> ExactScalar:
    if isinstance(family, PowerFamily):
        return normalize((m + family.c) ** n)
    if isinstance(family, PochhammerFamily):
        return pochhammer(m + 1, n)
    if isinstance(family, LucasFamily):
        return _lucas_number(family.q, m, n + 1)
    if isinstance(family, ExplicitRootsFamily):
        product: ExactScalar = 1
        for l in range(1, n + 1):
            product *= m + family.generator(n, l)
        return normalize(product)
    raise TypeError(f"unsupported family: {family!r}")


def script_X(family: Family, n: int) -> ExactScalar:
    """Sum of the root set for member index n.

    Power(c) -> n*c; Pochhammer -> n(n+1)/2; Lucas -> 0 (the scaled Chebyshev
    zeros are symmetric about 0); explicit roots -> their literal sum.
    """
    if n < 1:
        raise ValueError(f"root-sum index n must be >= 1, got {n}")
    if isinstance(family, PowerFamily):
        return normalize(n * family.c)
    if isinstance(family, PochhammerFamily):
        return n * (n + 1) // 2
    if isinstance(family, LucasFamily):
        return 0
    if isinstance(family, ExplicitRootsFamily):
        total: ExactScalar = 0
        for l in range(1, n + 1):
            total += family.generator(n, l)
        return normalize(total)
    raise TypeError(f"unsupported family: {family!r}")


def fibonacci_polynomial(n: int, m: int) -> int:
    """Closed form sum_{l=0..floor(n/2)} C(n-l, l) m^(n-2l).

    Evaluates to the same value as X(LucasFamily(-1), n, m) for every
    integer m, i.e. the generalized Fibonacci number with label m.
    """
    if n < 0:
        raise ValueError(f"degree n must be >= 0, got {n}")
    return sum(math.comb(n - l, l) * m ** (n - 2 * l) for l in range(n // 2 + 1))


def roots_float(family: Family, n: int) -> List[float]:
    """The n roots x[n,l] as floats, in increasing l order.

    For LucasFamily(q) with q < 0 the roots are purely imaginary; the returned
    values are their imaginary parts (the evaluated factor is m + i*value).
    """
    if n < 1:
        raise ValueError(f"member index n must be >= 1, got {n}")
    if isinstance(family, PowerFamily):
        return [float(family.c)] * n
    if isinstance(family, PochhammerFamily):
        return [float(l) for l in range(1, n + 1)]
    if isinstance(family, LucasFamily):
        # the midpoint zero (2l = n+1) is exact by symmetry; cos(pi/2) is not
        scale = 2.0 * math.sqrt(abs(family.q))
        return [0.0 if 2 * l == n + 1 else -scale * math.cos(l * math.pi / (n + 1))
                for l in range(1, n + 1)]
    if isinstance(family, ExplicitRootsFamily):
        return [float(family.generator(n, l)) for l in range(1, n + 1)]
    raise TypeError(f"unsupported family: {family!r}")


@dataclass(frozen=True)
class SequenceWindow:
    """A rectangular window of family members, rows indexed by n, columns by m."""

    family: Family
    n_range: Tuple[int, int]
    m_range: Tuple[int, int]
    values: Tuple[Tuple[ExactScalar, ...], ...]

    def cell(self, n: int, m: int) -> ExactScalar:
        n_lo, n_hi = self.n_range
        m_lo, m_hi = self.m_range
        if not (n_lo <= n <= n_hi and m_lo <= m <= m_hi):
            raise KeyError(f"(n={n}, m={m}) outside window")
        return self.values[n - n_lo][m - m_lo]

    def row(self, n: int) -> Tuple[ExactScalar, ...]:
        return self.values[n - self.n_range[0]]

    def column(self, m: int) -> Tuple[ExactScalar, ...]:
        j = m - self.m_range[0]
        return tuple(row[j] for row in self.values)


def table(family: Family, n_range: Tuple[int, int], m_range: Tuple[int, int]) -> SequenceWindow:
    """Fully populated window of X values over inclusive n and m ranges."""
    n_lo, n_hi = n_range
    m_lo, m_hi = m_range
    if n_lo > n_hi or m_lo > m_hi:
        raise ValueError(f"empty range: n {n_range}, m {m_range}")
    if n_lo < 0:
        raise ValueError(f"member index n must be >= 0, got {n_lo}")
    values = tuple(
        tuple(X(family, n, m) for m in range(m_lo, m_hi + 1))
        for n in range(n_lo, n_hi + 1)
    )
    return SequenceWindow(family=family, n_range=(n_lo, n_hi), m_range=(m_lo, m_hi), values=values)
