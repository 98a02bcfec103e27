"""Independent brute-force evaluators and enumerators.

Ground truth for the verification harness: exhaustive enumeration, direct
nested summation and exact symbolic integration, kept deliberately separate
from the series/residue routes they are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Literal, Sequence, Tuple

from .numeric import (
    Rat,
    Scalar,
    as_rat,
    binom_general,
    binom_int,
    binom_primed,
    comb0,
    factorial,
    multinomial_general,
)
from .mseries import MPoly


# ---------------------------------------------------------------------------
# Compositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Composition:
    parts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


@lru_cache(maxsize=None)
def _compositions(m: int, q: int) -> Tuple[Tuple[int, ...], ...]:
    if q == 1:
        return ((m,),) if m >= 1 else ()
    out = []
    for first in range(1, m - q + 2):
        for rest in _compositions(m - first, q - 1):
            out.append((first,) + rest)
    return tuple(out)


ParityFilter = Literal["all", "all_even", "has_odd"]


def enum_compositions(m: int, q: int,
                      parity_filter: ParityFilter = "all") -> list[Composition]:
    """All ordered sequences of q positive integers summing to m."""
    if m < 0 or q < 1:
        raise ValueError(f"enum_compositions needs m >= 0, q >= 1, got {(m, q)}")
    comps = _compositions(m, q)
    if parity_filter == "all_even":
        comps = tuple(c for c in comps if all(p % 2 == 0 for p in c))
    elif parity_filter == "has_odd":
        comps = tuple(c for c in comps if any(p % 2 for p in c))
    elif parity_filter != "all":
        raise ValueError(f"unknown parity filter {parity_filter!r}")
    return [Composition(c) for c in comps]


def omega_dd_enum(m: int, q: int) -> int:
    return len(enum_compositions(m, q, "all_even"))


def comp_product_sum_enum(m: int, q: int) -> int:
    total = 0
    for c in _compositions(m, q):
        p = 1
        for part in c:
            p *= part + 1
        total += p
    return total


# ---------------------------------------------------------------------------
# Quadric class counts (floor-product and power-weighted double sums)
# ---------------------------------------------------------------------------


LevsVariant = Literal["levs2", "levs1"]


def eval_levs_sum(n: int, s: int, variant: LevsVariant) -> Rat:
    """Direct nested summation of the two quadric-class counting sums."""
    if n < 1 or s < 1:
        raise ValueError(f"eval_levs_sum needs n, s >= 1, got {(n, s)}")
    total = Fraction(0)
    for m in range(1, n + 1):
        for q in range(1, min(m, s) + 1):
            prime = binom_primed(Fraction(m, 2) - 1, q - 1)
            if variant == "levs2":
                inner = 0
                for c in _compositions(m, q):
                    p = 1
                    for part in c:
                        p *= part + 1
                    inner += p // 2
                total += binom_int(s, q) * (prime + inner)
            elif variant == "levs1":
                total += binom_int(s, q) * 2 ** (q - 1) * (prime + binom_int(m - 1, q - 1))
            else:
                raise ValueError(f"unknown variant {variant!r}")
    return total


def t_closed(n: int, p: int) -> Rat:
    """-1/2 + C(n+p, p)/2."""
    return Fraction(-1, 2) + Fraction(binom_int(n + p, p), 2)


def s_closed(n: int, s: int) -> Rat:
    """-1/2 + sum over q of 2^(q-1) C(s,q) C(n,q)."""
    total = Fraction(-1, 2)
    for q in range(0, s + 1):
        total += Fraction(2) ** (q - 1) * binom_int(s, q) * binom_int(n, q)
    return total


def s1_sum(n: int, s: int) -> Rat:
    total = Fraction(0)
    for m in range(1, n + 1):
        for q in range(1, min(m, s) + 1):
            total += binom_int(s, q) * binom_primed(Fraction(m, 2) - 1, q - 1)
    return total


def s4_sum(n: int, s: int) -> Rat:
    total = Fraction(0)
    for m in range(1, n + 1):
        for q in range(1, min(m, s) + 1):
            total += binom_int(s, q) * comp_product_sum_enum(m, q)
    return total / 2


def s5_sum(n: int, s: int) -> Rat:
    total = Fraction(0)
    for m in range(1, n + 1):
        for q in range(1, min(m, s) + 1):
            total += binom_int(s, q) * omega_dd_enum(m, q)
    return -total / 2


def s6_sum(n: int, s: int) -> Rat:
    total = Fraction(0)
    for m in range(1, n + 1):
        for q in range(1, min(m, s) + 1):
            total += binom_int(s, q) * Fraction(2) ** (q - 1) * binom_int(m - 1, q - 1)
    return total


def s7_sum(n: int, s: int) -> Rat:
    total = Fraction(0)
    for m in range(1, n + 1):
        for q in range(1, min(m, s) + 1):
            total += binom_int(s, q) * Fraction(2) ** (q - 1) \
                * binom_primed(Fraction(m, 2) - 1, q - 1)
    return total


def corollary_lhs(n: int, s: int) -> Rat:
    lhs = Fraction(0)
    for k in range(1, n // 2 + 1):
        for q in range(1, min(2 * k, s) + 1):
            lhs += binom_int(s, q) * Fraction(2) ** (q - 1) * binom_int(k - 1, q - 1)
    for m in range(1, n + 1):
        for q in range(1, min(m, s) + 1):
            lhs += Fraction(2) ** (q - 1) * binom_int(s, q) * binom_int(m - 1, q - 1)
    return lhs


def corollary_rhs(n: int, s: int) -> Rat:
    rhs = Fraction(-1)
    for q in range(0, s + 1):
        rhs += Fraction(2) ** (q - 1) * binom_int(s, q) \
            * (binom_int(n, q) + binom_int(n // 2, q))
    return rhs


# ---------------------------------------------------------------------------
# Staircase pairs
# ---------------------------------------------------------------------------


def _staircase_weight(n: int, i1: int, jr: int) -> int:
    # number of monotone borders joining (1, j_r) to (i_1, n)
    return comb0(i1 - 1 + n - jr, i1 - 1)


def _interleave_ok(only_a: Sequence[int], only_b: Sequence[int]) -> bool:
    """Majority-leads ballot condition on the ascending merge.

    Scanning the disjoint values in increasing order, the set with fewer
    elements must never outnumber the other; ties go to the b side.
    """
    if len(only_a) <= len(only_b):
        lead, trail = set(only_b), set(only_a)
    else:
        lead, trail = set(only_a), set(only_b)
    c_lead = c_trail = 0
    for x in sorted(lead | trail):
        if x in lead:
            c_lead += 1
        else:
            c_trail += 1
            if c_trail > c_lead:
                return False
    return True


def _dominated_pair_ok(n: int, ivec: Sequence[int], jvec: Sequence[int]) -> bool:
    """Domination test for a staircase pair in the strict census.

    Row anchors sit strictly below the diagonal (i_1 >= 2, j_r <= n - 1)
    and, inside the shared band [i_1, j_r - 1], the unshared column values
    and the unshared shifted row values satisfy the majority-leads ballot
    condition of :func:`_interleave_ok`.
    """
    i1, jr = ivec[0], jvec[-1]
    if i1 < 2 or jr > n - 1:
        return False
    lo, hi = i1, jr - 1
    rows = {b - 1 for b in ivec}
    cols = set(jvec)
    only_a = [x for x in cols if lo <= x <= hi and x not in rows]
    only_b = [x for x in rows if lo <= x <= hi and x not in cols]
    return _interleave_ok(only_a, only_b)


def enum_staircase_pairs(n: int, strict: bool) -> int:
    """Weighted census of staircase point sequences in the n x n grid.

    Sequences have strictly increasing row indices i_1 < ... < i_r and
    column indices j_1 < ... < j_r; each is weighted by the number of
    companion borders, C(i_1 - 1 + n - j_r, i_1 - 1).

    With ``strict`` only pairs passing :func:`_dominated_pair_ok` count:
    the below-diagonal census whose block counts the ballot-product
    formula :func:`eval_Lbar_formula` reproduces.
    """
    if n < 1:
        raise ValueError("enum_staircase_pairs needs n >= 1")
    total = 0
    values = range(1, n + 1)
    for r in range(1, n + 1):
        for ivec in combinations(values, r):
            if strict and ivec[0] < 2:
                continue
            for jvec in combinations(values, r):
                if strict and not _dominated_pair_ok(n, ivec, jvec):
                    continue
                total += _staircase_weight(n, ivec[0], jvec[-1])
    return total


def omega_closed(n: int) -> int:
    """(2n-1) C(2n-2, n-1)."""
    return (2 * n - 1) * binom_int(2 * n - 2, n - 1)


def omega_plus_closed(n: int) -> Rat:
    """First closed form for the strictly dominated staircase count."""
    return Fraction(2 ** (2 * n - 1) + (n - 1) * binom_int(2 * n - 2, n - 1)
                    - binom_int(2 * n, n)) - Fraction(4, n) * binom_int(2 * n, n - 2)


def omega_plus_closed2(n: int) -> Rat:
    """Second closed form, with the quartic polynomial factor."""
    if n < 2:
        raise ValueError("closed form needs n >= 2")
    poly = n ** 4 - 2 * n ** 3 - 27 * n ** 2 + 20 * n - 4
    return Fraction(2 ** (2 * n - 1)) + Fraction(2 * factorial(2 * n - 3) * poly,
                                                 factorial(n - 2) * factorial(n + 2))


def lbar_count_enum(n: int, i: int, j: int) -> int:
    """Block count of the strict census with i_1 = i, j_r = j, by search."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("indices out of range")
    if i < 2 or j > n - 1:
        return 0
    total = 0
    for r in range(1, n + 1):
        i_rest = [v for v in range(i + 1, n + 1)]
        j_rest = [v for v in range(1, j)]
        if r - 1 > len(i_rest) or r - 1 > len(j_rest):
            break
        for ivec_tail in combinations(i_rest, r - 1):
            ivec = (i,) + ivec_tail
            for jvec_head in combinations(j_rest, r - 1):
                jvec = jvec_head + (j,)
                if _dominated_pair_ok(n, ivec, jvec):
                    total += 1
    return total


def eval_Lbar_formula(n: int, i: int, j: int) -> Rat:
    """Block count for the strict staircase family.

    For i - 1 >= j the closed product form C(n-i+j-1, j-1) applies; for
    i - 1 < j the inclusion-exclusion sum with ballot factors is used, with
    the summation range max(r-k1-1, r-k2-1) <= s <= 2r-k1-k2-2.
    """
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("indices out of range")
    if j > n - 1 or i < 2:
        return Fraction(0)
    if i - 1 >= j:
        return Fraction(comb0(n - i + j - 1, j - 1))
    total = Fraction(0)
    for r in range(1, n + 1):
        for k1 in range(0, r):
            for k2 in range(0, r):
                lo = max(r - k1 - 1, r - k2 - 1, 0)
                hi = 2 * r - k1 - k2 - 2
                for s in range(lo, hi + 1):
                    base = comb0(i - 1, k1) * comb0(j - i, s) * comb0(n - j, k2) \
                        * comb0(s, 2 * r - s - k1 - k2 - 2)
                    if not base:
                        continue
                    x = s - r + max(k1, k2) + 1
                    y = s - r + min(k1, k2) + 1
                    psi = Fraction(x - y + 1, x + 1) * binom_int(x + y, y)
                    total += base * psi
    return total


# ---------------------------------------------------------------------------
# The three-part decomposition of the strict staircase count
# ---------------------------------------------------------------------------


def sixfold_t1(n: int) -> int:
    total = 0
    for i in range(2, n + 1):
        for j in range(1, i):
            total += comb0(n - i + j - 1, j - 1) * comb0(i - 1 + n - j, i - 1)
    return total


def sixfold_t2(n: int) -> int:
    total = 0
    for i in range(2, n + 1):
        for j in range(i, n):
            total += comb0(i - 1 + n - j, i - 1) \
                * (comb0(n - i + j, j) - comb0(n - i + j, j + 1))
    return total


def sixfold_t3(n: int) -> int:
    # second triple sum runs to j - i + 1; the remaining factors vanish
    # beyond that point anyway
    total = 0
    for i in range(2, n + 1):
        for j in range(i, n):
            w = comb0(i - 1 + n - j, i - 1)
            for s in range(0, j - i - 3 + 1):
                total -= w * comb0(i - 1 + n - j, s + i) \
                    * comb0(2 * j - 2 * i, j - i - s - 3)
            for s in range(0, j - i + 1 + 1):
                total += w * comb0(i - 1 + n - j, s + i) \
                    * comb0(2 * j - 2 * i, j - i - s + 1)
    return total


def eval_sixfold_terms(n: int) -> Tuple[Rat, Rat, Rat]:
    if n < 3:
        raise ValueError("eval_sixfold_terms needs n >= 3")
    return Fraction(sixfold_t1(n)), Fraction(sixfold_t2(n)), Fraction(sixfold_t3(n))


def t1_closed(n: int) -> int:
    return (n - 1) * binom_int(2 * n - 2, n - 1)


def s1_section3(n: int) -> int:
    return sum(comb0(2 * n - i, n + 1) - comb0(2 * n - i, n) for i in range(2, n + 1))


def s1_section3_closed(n: int) -> int:
    return comb0(2 * n - 1, n + 2) - comb0(2 * n - 1, n + 1)


def s2_section3(n: int) -> int:
    total = 0
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            total += comb0(i - 1 + n - j, n - j) \
                * (comb0(n - i + j, j) - comb0(n - i + j, j + 1))
    return total


def s2_section3_closed(n: int) -> int:
    return -(n - 1) - binom_int(2 * n, n) + 2 * binom_int(2 * n, n + 1)


def t2_closed(n: int) -> int:
    return comb0(2 * n - 1, n + 2) - comb0(2 * n - 1, n + 1) - (n - 1) \
        - binom_int(2 * n, n) + 2 * binom_int(2 * n, n + 1)


def t3_closed(n: int) -> Rat:
    return Fraction(2 ** (2 * n - 1) + (n - 1) - binom_int(2 * n, n + 1)
                    - binom_int(2 * n + 1, n) + binom_int(2 * n, n)) \
        - Fraction(2, n) * binom_int(2 * n, n - 2)


def lmm3_sum(m: int, a: int, b: int) -> Rat:
    """Sum over s of C(m,s) C(s,a+b-s) C(2s-a-b,s-a) / (s-b+1)."""
    if not (m >= a + b and a >= b >= 1):
        raise ValueError("needs m >= a+b and a >= b >= 1")
    total = Fraction(0)
    for s in range(a, a + b + 1):
        total += Fraction(comb0(m, s) * comb0(s, a + b - s)
                          * comb0(2 * s - a - b, s - a), s - b + 1)
    return total


def lmm3_closed(m: int, a: int, b: int) -> Rat:
    return Fraction(binom_int(m + 1, a + 1) * binom_int(m + 1, b), m + 1)


# ---------------------------------------------------------------------------
# Set partitions and dominated paths
# ---------------------------------------------------------------------------


def set_partitions_count(n: int, k: int) -> int:
    """Exhaustive count of partitions of an n-set into k nonempty blocks."""
    if not (0 <= k <= n <= 10):
        raise ValueError("set_partitions_count supports 0 <= k <= n <= 10")
    if n == 0:
        return 1 if k == 0 else 0

    count = 0
    # restricted growth strings: element i joins a block numbered at most
    # one past the largest block seen so far
    def rec(i: int, mx: int):
        nonlocal count
        if mx + 1 > k or mx + 1 + (n - i) < k:
            return
        if i == n:
            count += 1
            return
        for b in range(min(mx + 1, k - 1) + 1):
            rec(i + 1, max(mx, b))

    rec(0, -1)
    return count


def dominated_path_count(big_x: int, big_y: int) -> int:
    """Monotone paths from the origin to (X, Y) with y <= x throughout."""
    if big_x < 0 or big_y < 0:
        raise ValueError("coordinates must be nonnegative")
    if big_y > big_x:
        return 0
    grid = [[0] * (big_y + 1) for _ in range(big_x + 1)]
    grid[0][0] = 1
    for x in range(big_x + 1):
        for y in range(min(x, big_y) + 1):
            if x == 0 and y == 0:
                continue
            v = 0
            if x > 0:
                v += grid[x - 1][y]
            if y > 0 and y - 1 <= x:
                v += grid[x][y - 1]
            grid[x][y] = v
    return grid[big_x][big_y]


# ---------------------------------------------------------------------------
# Unit-sum identity (three-variable integral form)
# ---------------------------------------------------------------------------


def _sum_S(a: int, b: int, c: int, beta2: Rat, beta3: Rat) -> Rat:
    out = Fraction(0)
    for k in range(b + 1):
        for l in range(c + 1):
            out += Fraction(factorial(a + k + l),
                            factorial(a) * factorial(k) * factorial(l)) \
                * beta2 ** k * beta3 ** l
    return (1 - beta2 - beta3) ** (a + 1) * out


def _sum_T(a: int, b: int, c: int, beta1: Rat, beta2: Rat, beta3: Rat) -> Rat:
    pre = Fraction(factorial(a + b + 1), factorial(a) * factorial(b)) \
        * (1 - beta3) ** (a + b + 2)
    mid = Fraction(0)
    for m in range(b + 1):
        term = Fraction((-1) ** m * binom_int(b, m), a + m + 1)
        mid += term * ((1 - beta2 / (1 - beta3)) ** (a + m + 1)
                       - (beta1 / (1 - beta3)) ** (a + m + 1))
    tail = sum(binom_int(a + b + k + 1, k) * beta3 ** k for k in range(c + 1))
    return pre * mid * tail


def _integral_R(s1: int, s2: int, s3: int, a1: Rat, a2: Rat, a3: Rat) -> Rat:
    x = MPoly.var(("x", "y"), "x")
    y = MPoly.var(("x", "y"), "y")
    integrand = (x ** s1) * (y ** s2) * ((1 - x - y) ** s3)
    anti_y = integrand.integrate("y")
    upper = anti_y.subst("y", MPoly.const(("x",), 1 - a3) - MPoly.var(("x",), "x"))
    lower = anti_y.subst("y", as_rat(a2))
    inner = upper - lower
    anti_x = inner.integrate("x")
    val = anti_x.eval_all({"x": 1 - a2 - a3}) - anti_x.eval_all({"x": a1})
    pre = Fraction(factorial(s1 + s2 + s3 + 2),
                   factorial(s1) * factorial(s2) * factorial(s3))
    return pre * val


def eval_2F_lhs(s1: int, s2: int, s3: int,
                a1: Scalar, a2: Scalar, a3: Scalar) -> Rat:
    """Full left side of the three-variable unit identity, exactly."""
    a1, a2, a3 = as_rat(a1), as_rat(a2), as_rat(a3)
    if min(s1, s2, s3) < 0:
        raise ValueError("exponents must be nonnegative")
    if not (a1 > 0 and a2 > 0 and a3 > 0 and a1 + a2 + a3 < 1):
        raise ValueError("parameters must be positive with sum below 1")
    total = _sum_S(s1, s2, s3, a2, a3) + _sum_S(s2, s1, s3, a1, a3) \
        + _sum_S(s3, s1, s2, a1, a2)
    total -= _sum_T(s1, s2, s3, a1, a2, a3)
    total -= _sum_T(s2, s3, s1, a2, a3, a1)
    total -= _sum_T(s1, s3, s2, a1, a3, a2)
    total += _integral_R(s1, s2, s3, a1, a2, a3)
    return total


def integral_R(s1: int, s2: int, s3: int, a1: Scalar, a2: Scalar, a3: Scalar) -> Rat:
    return _integral_R(s1, s2, s3, as_rat(a1), as_rat(a2), as_rat(a3))


# ---------------------------------------------------------------------------
# Partition-of-unity sums (n variables, rising-factorial multinomials)
# ---------------------------------------------------------------------------


def eval_Ss_alpha(z: Sequence[Scalar], s: Sequence[int], alpha: Scalar,
                  total: Scalar = 1) -> Rat:
    """Direct nested summation of the n-variable partition sum."""
    z = [as_rat(v) for v in z]
    s = list(s)
    alpha = as_rat(alpha)
    if len(z) != len(s):
        raise ValueError("z and s must have equal length")
    if any(v < 0 for v in s):
        raise ValueError("s must be nonnegative")
    if sum(z) != as_rat(total):
        raise ValueError(f"sum of z must be {total}")
    n = len(z)
    out = Fraction(0)
    for lead in range(n):
        others = [j for j in range(n) if j != lead]
        term = Fraction(0)

        def rec(pos: int, jvec: list[int]):
            nonlocal term
            if pos == len(others):
                parts = [s[lead]] + jvec
                w = multinomial_general(alpha, parts)
                for idx, jv in zip(others, jvec):
                    w *= z[idx] ** jv
                term += w
                return
            for jv in range(s[others[pos]] + 1):
                rec(pos + 1, jvec + [jv])

        rec(0, [])
        out += z[lead] ** (s[lead] + 1) * term
    return out


def eval_Ss_alpha_grid(z: Sequence[Scalar], smax: Sequence[int], alpha: Scalar,
                       total: Scalar = 1) -> dict[Tuple[int, ...], Rat]:
    """All values on the hypercube s <= smax, by shared prefix sums.

    Same direct summation as :func:`eval_Ss_alpha`, with the inner lattice
    sums accumulated once per leading index.
    """
    z = [as_rat(v) for v in z]
    smax = list(smax)
    alpha = as_rat(alpha)
    if sum(z) != as_rat(total):
        raise ValueError(f"sum of z must be {total}")
    n = len(z)
    shape = [m + 1 for m in smax]

    def lattice(dims: Sequence[int]) -> Iterable[Tuple[int, ...]]:
        out = [()]
        for d in dims:
            out = [t + (v,) for t in out for v in range(d)]
        return out

    # per leading index and leading exponent: prefix sums over the j-lattice
    tables: list[dict[int, dict[Tuple[int, ...], Rat]]] = []
    for lead in range(n):
        others = [j for j in range(n) if j != lead]
        odims = [shape[j] for j in others]
        per_lead: dict[int, dict[Tuple[int, ...], Rat]] = {}
        for sl in range(shape[lead]):
            w: dict[Tuple[int, ...], Rat] = {}
            for jvec in lattice(odims):
                val = multinomial_general(alpha, [sl] + list(jvec))
                for idx, jv in zip(others, jvec):
                    if jv:
                        val *= z[idx] ** jv
                w[jvec] = val
            # cumulative sums along each axis give all partial lattice sums
            for axis in range(len(others)):
                for jvec in sorted(w):
                    if jvec[axis] > 0:
                        prev = jvec[:axis] + (jvec[axis] - 1,) + jvec[axis + 1:]
                        w[jvec] += w[prev]
            per_lead[sl] = w
        tables.append(per_lead)
    out: dict[Tuple[int, ...], Rat] = {}
    for svec in lattice(shape):
        acc = Fraction(0)
        for lead in range(n):
            others = [j for j in range(n) if j != lead]
            jvec = tuple(svec[j] for j in others)
            acc += z[lead] ** (svec[lead] + 1) * tables[lead][svec[lead]][jvec]
        out[svec] = acc
    return out


# ---------------------------------------------------------------------------
# Even-power residue identity (double sum over index and compositions)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _weak_compositions(m: int, q: int) -> Tuple[Tuple[int, ...], ...]:
    if q == 1:
        return ((m,),)
    out = []
    for first in range(m + 1):
        for rest in _weak_compositions(m - first, q - 1):
            out.append((first,) + rest)
    return tuple(out)


def eval_KK1_lhs(s: int, alpha: Sequence[int], gamma: Sequence[Scalar],
                 d: int) -> Rat:
    """Alternating double sum over j and weak compositions beta.

    Each summand is prod over i of C(beta_i + gamma_i, beta_i) *
    (2 beta_i + gamma_i + 1)^alpha_i / alpha_i!.
    """
    alpha = list(alpha)
    gamma = [as_rat(g) for g in gamma]
    if d < 0 or len(alpha) != d + 1 or len(gamma) != d + 1:
        raise ValueError("alpha and gamma must have length d+1")
    if any(a < 0 for a in alpha):
        raise ValueError("alpha must be nonnegative")
    if sum(alpha) != 2 * s + 1:
        raise ValueError("alpha must sum to 2s+1")
    top = d + sum(alpha) + sum(gamma)
    # per-coordinate weight vectors, convolved across coordinates
    vecs = []
    for i in range(d + 1):
        v = [binom_general(b + gamma[i], b)
             * (2 * b + gamma[i] + 1) ** alpha[i] / factorial(alpha[i])
             for b in range(s + 1)]
        vecs.append(v)
    conv = vecs[0][:]
    for v in vecs[1:]:
        new = [Fraction(0)] * (s + 1)
        for x, cx in enumerate(conv):
            if cx == 0:
                continue
            for y, cy in enumerate(v):
                if x + y <= s:
                    new[x + y] += cx * cy
        conv = new
    out = Fraction(0)
    for j in range(s + 1):
        out += Fraction(-1) ** j * binom_general(top, j) * conv[s - j]
    return out


def eval_KK1_lhs_literal(s: int, alpha: Sequence[int], gamma: Sequence[Scalar],
                         d: int) -> Rat:
    """Same double sum with the composition enumeration written out."""
    alpha = list(alpha)
    gamma = [as_rat(g) for g in gamma]
    if sum(alpha) != 2 * s + 1:
        raise ValueError("alpha must sum to 2s+1")
    top = d + sum(alpha) + sum(gamma)
    out = Fraction(0)
    for j in range(s + 1):
        inner = Fraction(0)
        for beta in _weak_compositions(s - j, d + 1):
            term = Fraction(1)
            for b, a, g in zip(beta, alpha, gamma):
                term *= binom_general(b + g, b) * (2 * b + g + 1) ** a \
                    / factorial(a)
            inner += term
        out += Fraction(-1) ** j * binom_general(top, j) * inner
    return out


def kk_rhs(s: int, alpha: Sequence[int], gamma: Sequence[Scalar]) -> Rat:
    out = Fraction(4) ** s
    for a, g in zip(alpha, gamma):
        out *= binom_general(as_rat(g) + a, a)
    return out


# ---------------------------------------------------------------------------
# Lyndon words
# ---------------------------------------------------------------------------


def lyndon_count(q: int, n: int) -> int:
    """Count aperiodic strings of length n over q letters, up to rotation,
    by checking each string against its proper rotations."""
    if q < 1 or n < 1:
        raise ValueError("lyndon_count needs q, n >= 1")
    count = 0
    for code in range(q ** n):
        word = []
        c = code
        for _ in range(n):
            word.append(c % q)
            c //= q
        word = tuple(word)
        if all(word < word[k:] + word[:k] for k in range(1, n)):
            count += 1
    return count
