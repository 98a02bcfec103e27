"""Exact scalar arithmetic: factorials, binomial variants, Mobius, necklaces.

The coefficient domain everywhere in this package is `fractions.Fraction`,
which already guarantees lowest terms, a positive denominator and unbounded
precision.  ``Rat`` is the alias used throughout.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]

# Identity parameters are bound by name; values are integers or rationals.
ParamBinding = Mapping[str, Scalar]


def as_rat(x: Scalar) -> Rat:
    return x if isinstance(x, Fraction) else Fraction(x)


def factorial(n: int) -> int:
    """n! for n >= 0."""
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return math.factorial(n)


def comb0(a: int, b: int) -> int:
    """Counting binomial: C(a, b) when 0 <= b <= a, otherwise 0."""
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def binom_general(a: Scalar, b: int) -> Rat:
    """Generalized binomial a(a-1)...(a-b+1)/b! for integer b >= 0."""
    if b < 0:
        raise ValueError(f"binom_general needs b >= 0, got {b}")
    a = as_rat(a)
    num = Fraction(1)
    for i in range(b):
        num *= a - i
    return num / math.factorial(b)


def binom_int(a: int, b: int) -> int:
    """Binomial coefficient, total on integer arguments.

    Returns 0 when b < 0 or b > a >= 0; for a < 0 falls back to the
    falling-factorial value (an integer, possibly negative).
    """
    if b < 0:
        return 0
    if a >= 0:
        return 0 if b > a else math.comb(a, b)
    v = binom_general(a, b)
    assert v.denominator == 1
    return v.numerator


def binom_primed(p: Scalar, q: int) -> int:
    """C(p, q) when p and q are both nonnegative integers, else 0."""
    if q < 0:
        return 0
    p = as_rat(p)
    if p.denominator != 1 or p < 0:
        return 0
    return comb0(p.numerator, q)


def multinomial_general(alpha: Scalar, parts: Sequence[int]) -> Rat:
    """Rising-factorial multinomial (alpha+1)...(alpha+sum(parts)) / prod(parts!).

    Reduces to the ordinary multinomial coefficient at alpha = 0.
    """
    if any(p < 0 for p in parts):
        raise ValueError(f"parts must be nonnegative, got {tuple(parts)}")
    alpha = as_rat(alpha)
    total = sum(parts)
    num = Fraction(1)
    for i in range(1, total + 1):
        num *= alpha + i
    den = 1
    for p in parts:
        den *= math.factorial(p)
    return num / den


def mobius(n: int) -> int:
    """Mobius function by trial division."""
    if n <= 0:
        raise ValueError(f"mobius needs n >= 1, got {n}")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def necklace_rank(q: int, n: int) -> int:
    """(1/n) * sum over d | n of mobius(d) * q^(n/d).

    Counts aperiodic necklaces (Lyndon words) of length n over q letters.
    """
    if q < 1 or n < 1:
        raise ValueError(f"necklace_rank needs q, n >= 1, got {(q, n)}")
    total = sum(mobius(d) * q ** (n // d) for d in divisors(n))
    if total % n != 0:
        raise AssertionError(f"divisor sum {total} not divisible by n={n}")
    return total // n
