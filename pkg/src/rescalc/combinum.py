"""Combinatorial numbers computed through coefficient extraction.

Each generator here evaluates a residue of an explicit series kernel.  The
closed forms live in :mod:`rescalc.numeric` and the brute-force counts in
:mod:`rescalc.oracle`; the test suite asserts that all routes agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numeric import Rat, binom_int, comb0, factorial
from .series import LaurentSeries, binom_pow, exp_series, make


@dataclass(frozen=True)
class CombinatorialValue:
    """A value computed along two independent routes that must agree."""

    value: Rat
    via_closed_form: Rat
    via_residue: Rat

    def __post_init__(self):
        if self.via_closed_form != self.via_residue:
            raise AssertionError(
                f"route disagreement: closed form {self.via_closed_form} "
                f"vs residue {self.via_residue}")
        object.__setattr__(self, "value", self.via_residue)

    @staticmethod
    def agree(closed: Rat, residue: Rat) -> "CombinatorialValue":
        return CombinatorialValue(residue, closed, residue)


def binom_via_res(n: int, k: int) -> Rat:
    """res_w (1+w)^n w^(-k-1) for n >= 0."""
    if n < 0:
        raise ValueError("binom_via_res needs n >= 0")
    kernel = binom_pow(1, n, "w", n + 1).shift(-k - 1)
    return kernel.res()


def negbinom_via_res(n: int, k: int) -> Rat:
    """res_w (1-w)^(-n) w^(-k-1) = C(n+k-1, k) for n >= 1, k >= 0."""
    if n < 1 or k < 0:
        raise ValueError("negbinom_via_res needs n >= 1, k >= 0")
    kernel = binom_pow(-1, -n, "w", k + 1).shift(-k - 1)
    return kernel.res()


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind via (n!/k!) [w^n] (exp(w)-1)^k."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs n, k >= 0")
    if k > n:
        return 0
    w = LaurentSeries.var("w")
    em1 = exp_series(w, width=n + 1) - 1
    r = em1.pow_int(k).shift(-n - 1).res() if k else (Fraction(1) if n == 0 else Fraction(0))
    v = r * factorial(n) / factorial(k)
    assert v.denominator == 1
    return v.numerator


def stirling2_recurrence(n: int, k: int) -> int:
    """S(n,k) = k*S(n-1,k) + S(n-1,k-1), with S(0,0) = 1."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs n, k >= 0")
    row = [1]
    for m in range(1, n + 1):
        new = [0] * (m + 1)
        for j in range(1, m + 1):
            prev_j = row[j] if j < len(row) else 0
            new[j] = j * prev_j + row[j - 1]
        row = new
    return row[k] if k < len(row) else 0


def kronecker(n: int, k: int) -> int:
    """delta(n, k) as res_w w^(k-n-1)."""
    v = make("w", [(-n + k - 1, 1)]).res()
    assert v.denominator == 1
    return v.numerator


def ballot_phi(big_x: int, big_y: int) -> int:
    """Monotone lattice paths to (X, Y) that never rise above the diagonal.

    Closed form (X-Y+1)/(X+1) * C(X+Y, Y), valid for X >= Y >= 0.
    """
    if big_y < 0 or big_x < big_y:
        raise ValueError(f"ballot_phi needs X >= Y >= 0, got {(big_x, big_y)}")
    v = Fraction(big_x - big_y + 1, big_x + 1) * binom_int(big_x + big_y, big_y)
    assert v.denominator == 1
    return v.numerator


def omega_dd(m: int, q: int) -> int:
    """Count of compositions of m into q even parts (each then >= 2).

    Residue route: res_x (1-x^2)^(-q) / x^(m-2q+1).
    """
    if m < 1 or q < 1:
        raise ValueError("omega_dd needs m, q >= 1")
    target = m - 2 * q
    if target < 0:
        return 0
    base = make("x", [(0, 1), (2, -1)])  # 1 - x^2
    kernel = base.pow_int(-q, width=target + 1).shift(-(m - 2 * q + 1))
    v = kernel.res()
    assert v.denominator == 1
    return v.numerator


def omega_dd_closed(m: int, q: int) -> int:
    """C(m/2 - 1, q - 1) for even m, else 0."""
    if m % 2:
        return 0
    return comb0(m // 2 - 1, q - 1)


def comp_product_sum(m: int, q: int) -> int:
    """Sum over compositions of m into q parts of prod (part+1).

    Residue route: res_x (-1 + (1-x)^(-2))^q / x^(m+1).
    """
    if m < 1 or q < 1:
        raise ValueError("comp_product_sum needs m, q >= 1")
    f = binom_pow(-1, -2, "x", m + 2) - 1
    v = f.pow_int(q).shift(-m - 1).res()
    assert v.denominator == 1
    return v.numerator
