"""Univariate truncated formal Laurent series over exact rationals.

A series carries a sparse coefficient map and an explicit validity window:
coefficients at exponents >= ``trunc`` are unknown.  ``trunc is None`` marks
an exact series (a Laurent polynomial) whose unstated coefficients are truly
zero.  Every operation computes the tightest window that is sound for its
operands; reading a coefficient outside the window raises ``WindowError``
rather than returning a silent zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .numeric import Rat, Scalar, as_rat, binom_general

# Width of the validity window used when an exact series must be expanded
# into an infinite one (inversion, exp, log, reversion).
DEFAULT_WIDTH = 32


class SeriesError(ValueError):
    pass


class WindowError(SeriesError):
    """Coefficient query or residue outside the known window."""


def _min2(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentSeries:
    __slots__ = ("variable", "coeffs", "trunc")

    def __init__(self, variable: str, coeffs: dict[int, Rat],
                 trunc: Optional[int], _trusted: bool = False):
        if not _trusted:
            clean: dict[int, Rat] = {}
            for e, c in coeffs.items():
                c = as_rat(c)
                if c == 0:
                    continue
                if trunc is not None and e >= trunc:
                    raise SeriesError(
                        f"exponent {e} is outside the window (trunc={trunc})")
                clean[e] = c
            coeffs = clean
        self.variable = variable
        self.coeffs = coeffs
        self.trunc = trunc

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero(variable: str, trunc: Optional[int] = None) -> "LaurentSeries":
        return LaurentSeries(variable, {}, trunc, _trusted=True)

    @staticmethod
    def one(variable: str) -> "LaurentSeries":
        return LaurentSeries(variable, {0: Fraction(1)}, None, _trusted=True)

    @staticmethod
    def const(variable: str, c: Scalar) -> "LaurentSeries":
        return LaurentSeries(variable, {0: as_rat(c)}, None)

    @staticmethod
    def var(variable: str) -> "LaurentSeries":
        return LaurentSeries(variable, {1: Fraction(1)}, None, _trusted=True)

    # -- predicates and bookkeeping -----------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def order(self) -> int:
        """Least exponent with a nonzero coefficient; undefined for 0."""
        if not self.coeffs:
            raise SeriesError("order of the zero series is undefined")
        return min(self.coeffs)

    def _ord_bound(self) -> Optional[int]:
        """Sound lower bound for the order of any (known or unknown) term.

        None means the series is exactly zero.
        """
        if self.coeffs:
            m = min(self.coeffs)
            return m if self.trunc is None else min(m, self.trunc)
        return self.trunc  # empty: zero up to trunc (or exactly zero)

    def check_window(self, k: int) -> None:
        if self.trunc is not None and k >= self.trunc:
            raise WindowError(
                f"coefficient at {self.variable}^{k} is outside the window "
                f"(trunc={self.trunc})")

    # -- coefficient access --------------------------------------------------

    def coeff(self, k: int) -> Rat:
        self.check_window(k)
        return self.coeffs.get(k, Fraction(0))

    def res(self) -> Rat:
        """Formal residue: the coefficient at exponent -1."""
        return self.coeff(-1)

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    # -- equality ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.const(self.variable, other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.variable != other.variable and self.coeffs and other.coeffs:
            return False
        t = _min2(self.trunc, other.trunc)
        keys = set(self.coeffs) | set(other.coeffs)
        for e in keys:
            if t is not None and e >= t:
                continue
            if self.coeffs.get(e, 0) != other.coeffs.get(e, 0):
                return False
        return True

    def __hash__(self):
        return hash((self.variable, self.trunc, tuple(sorted(self.coeffs.items()))))

    # -- ring operations -----------------------------------------------------

    def _require_same_var(self, other: "LaurentSeries") -> None:
        if self.variable != other.variable:
            raise SeriesError(
                f"variable mismatch: {self.variable!r} vs {other.variable!r}")

    def __add__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.const(self.variable, other)
        self._require_same_var(other)
        t = _min2(self.trunc, other.trunc)
        coeffs: dict[int, Rat] = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = coeffs.get(e, Fraction(0)) + c
            if v:
                coeffs[e] = v
            else:
                coeffs.pop(e, None)
        if t is not None:
            coeffs = {e: c for e, c in coeffs.items() if e < t}
        return LaurentSeries(self.variable, coeffs, t, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.variable, {e: -c for e, c in self.coeffs.items()},
                             self.trunc, _trusted=True)

    def __sub__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.const(self.variable, other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentSeries":
        return (-self) + other

    def scale(self, c: Scalar) -> "LaurentSeries":
        c = as_rat(c)
        if c == 0:
            return LaurentSeries.zero(self.variable, self.trunc)
        return LaurentSeries(self.variable, {e: c * v for e, v in self.coeffs.items()},
                             self.trunc, _trusted=True)

    def __mul__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._require_same_var(other)
        a, b = self, other
        if (a.is_zero and a.trunc is None) or (b.is_zero and b.trunc is None):
            return LaurentSeries.zero(a.variable)
        t: Optional[int] = None
        if a.trunc is not None:
            ob = b._ord_bound()
            t = _min2(t, None if ob is None else a.trunc + ob)
        if b.trunc is not None:
            oa = a._ord_bound()
            t = _min2(t, None if oa is None else b.trunc + oa)
        coeffs: dict[int, Rat] = {}
        for ea, ca in a.coeffs.items():
            for eb, cb in b.coeffs.items():
                e = ea + eb
                if t is not None and e >= t:
                    continue
                v = coeffs.get(e, Fraction(0)) + ca * cb
                if v:
                    coeffs[e] = v
                else:
                    coeffs.pop(e, None)
        return LaurentSeries(a.variable, coeffs, t, _trusted=True)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by variable**k."""
        t = None if self.trunc is None else self.trunc + k
        return LaurentSeries(self.variable, {e + k: c for e, c in self.coeffs.items()},
                             t, _trusted=True)

    def inverse(self, width: Optional[int] = None) -> "LaurentSeries":
        """Multiplicative inverse; the zero series is rejected."""
        if self.is_zero:
            raise SeriesError("cannot invert a series that is zero on its window")
        m = self.order()
        if self.trunc is None and len(self.coeffs) == 1:
            c = self.coeffs[m]
            return LaurentSeries(self.variable, {-m: 1 / c}, None, _trusted=True)
        if self.trunc is not None:
            w = self.trunc - m
        else:
            w = width if width is not None else DEFAULT_WIDTH
        u = [self.coeffs.get(m + i, Fraction(0)) for i in range(w)]
        v = [Fraction(0)] * w
        v[0] = 1 / u[0]
        for k in range(1, w):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if u[i]:
                    acc += u[i] * v[k - i]
            v[k] = -acc / u[0]
        coeffs = {-m + k: c for k, c in enumerate(v) if c}
        return LaurentSeries(self.variable, coeffs, -m + w, _trusted=True)

    def pow_int(self, e: int, width: Optional[int] = None) -> "LaurentSeries":
        if e == 0:
            return LaurentSeries.one(self.variable)
        base = self if e > 0 else self.inverse(width)
        n = abs(e)
        result = None
        acc = base
        while n:
            if n & 1:
                result = acc if result is None else result * acc
            n >>= 1
            if n:
                acc = acc * acc
        return result

    __pow__ = pow_int

    def __truediv__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / as_rat(other))
        return self * other.inverse()

    def derivative(self) -> "LaurentSeries":
        coeffs = {e - 1: e * c for e, c in self.coeffs.items() if e != 0}
        t = None if self.trunc is None else self.trunc - 1
        return LaurentSeries(self.variable, coeffs, t, _trusted=True)

    # -- substitution and reversion -------------------------------------------

    def compose(self, inner: "LaurentSeries") -> "LaurentSeries":
        """Substitute ``inner`` for this series' variable.

        Allowed when ``inner`` has order >= 1, or when this series is exact
        (finitely many terms, any exponents) and ``inner`` is invertible
        wherever negative powers are required.
        """
        var = inner.variable
        if self.is_zero and self.trunc is None:
            return LaurentSeries.zero(var)
        inner_ord = inner._ord_bound()
        positive_inner = inner_ord is not None and inner_ord >= 1
        if self.trunc is not None and not positive_inner:
            raise SeriesError(
                "substitution needs an inner series of order >= 1 unless the "
                "outer series is exact")
        exps = sorted(self.coeffs)
        neg = [e for e in exps if e < 0]
        pos = [e for e in exps if e >= 0]
        pieces: list[LaurentSeries] = []
        if neg:
            inv = inner.inverse()
            power = LaurentSeries.one(var)
            cur = 0
            for e in sorted(neg, reverse=True):
                while cur < -e:
                    power = power * inv
                    cur += 1
                pieces.append(power.scale(self.coeffs[e]))
        if pos:
            power = LaurentSeries.one(var)
            kmax = max(pos)
            for e in range(0, kmax + 1):
                c = self.coeffs.get(e)
                if c:
                    pieces.append(power.scale(c))
                if e < kmax:
                    power = power * inner
        out = LaurentSeries.zero(var)
        for p in pieces:
            out = out + p
        if self.trunc is not None:
            # terms of the outer series beyond its window contribute
            # O(inner^trunc)
            cap = inner_ord * self.trunc
            t = _min2(out.trunc, cap)
            coeffs = {e: c for e, c in out.coeffs.items()
                      if t is None or e < t}
            out = LaurentSeries(var, coeffs, t, _trusted=True)
        return out

    def reverse(self, width: Optional[int] = None) -> "LaurentSeries":
        """Compositional inverse of an order-1 series, by Lagrange inversion."""
        if self.is_zero or self.order() != 1:
            raise SeriesError("reversion needs a series of order exactly 1")
        f = self.shift(-1)  # order 0
        g = f.inverse(width)
        w = g.trunc if g.trunc is not None else (width or DEFAULT_WIDTH)
        coeffs: dict[int, Rat] = {}
        gk = g
        for k in range(1, w + 1):
            if k - 1 < (gk.trunc if gk.trunc is not None else k):
                c = gk.coeffs.get(k - 1, Fraction(0))
                if c:
                    coeffs[k] = c / k
            if k < w:
                gk = gk * g
        return LaurentSeries(self.variable, coeffs, w + 1, _trusted=True)

    def __repr__(self) -> str:
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for e in self.support():
                c = self.coeffs[e]
                if e == 0:
                    parts.append(f"{c}")
                elif e == 1:
                    parts.append(f"{c}*{self.variable}")
                else:
                    parts.append(f"{c}*{self.variable}^{e}")
            body = " + ".join(parts)
        tail = "" if self.trunc is None else f" + O({self.variable}^{self.trunc})"
        return body + tail


# -- module-level operation surface ------------------------------------------


def make(variable: str, terms: Iterable[Tuple[int, Scalar]],
         trunc: Optional[int] = None) -> LaurentSeries:
    """Build a series from (exponent, coefficient) pairs."""
    coeffs: dict[int, Rat] = {}
    for e, c in terms:
        if e in coeffs:
            raise SeriesError(f"duplicate exponent {e}")
        coeffs[e] = as_rat(c)
    return LaurentSeries(variable, coeffs, trunc)


def add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def inv(a: LaurentSeries, width: Optional[int] = None) -> LaurentSeries:
    return a.inverse(width)


def pow_int(a: LaurentSeries, e: int) -> LaurentSeries:
    return a.pow_int(e)


def coeff(a: LaurentSeries, k: int) -> Rat:
    return a.coeff(k)


def res(a: LaurentSeries) -> Rat:
    return a.res()


def compose(outer: LaurentSeries, inner: LaurentSeries) -> LaurentSeries:
    return outer.compose(inner)


def reverse(h: LaurentSeries, width: Optional[int] = None) -> LaurentSeries:
    return h.reverse(width)


def derive(a: LaurentSeries) -> LaurentSeries:
    return a.derivative()


def binom_pow(c: Scalar, a: Scalar, variable: str, trunc: int) -> LaurentSeries:
    """Expansion of (1 + c*w)**a truncated at ``trunc``.

    Exact (polynomial) when a is a nonnegative integer.
    """
    c = as_rat(c)
    a = as_rat(a)
    if a.denominator == 1 and a >= 0:
        n = a.numerator
        coeffs = {k: binom_general(n, k) * c ** k for k in range(n + 1)}
        return LaurentSeries(variable, coeffs, None)
    coeffs = {k: binom_general(a, k) * c ** k for k in range(max(trunc, 0))}
    return LaurentSeries(variable, coeffs, trunc)


def exp_series(a: LaurentSeries, width: Optional[int] = None) -> LaurentSeries:
    """Formal exponential; requires order >= 1."""
    if a.coeffs and a.order() < 1:
        raise SeriesError("exp needs a series of order >= 1")
    if not a.coeffs and a.trunc is not None and a.trunc < 1:
        raise SeriesError("exp needs a window reaching exponent 1")
    if a.is_zero and a.trunc is None:
        return LaurentSeries.one(a.variable)
    w = a.trunc if a.trunc is not None else (width or DEFAULT_WIDTH)
    d = a.order() if a.coeffs else a.trunc
    out = LaurentSeries.one(a.variable) + LaurentSeries.zero(a.variable, w)
    power = LaurentSeries.one(a.variable)
    fact = 1
    k = 1
    while k * d < w:
        power = power * a
        fact *= k
        out = out + power.scale(Fraction(1, fact))
        k += 1
    return out


def log_series(a: LaurentSeries, width: Optional[int] = None) -> LaurentSeries:
    """Formal logarithm of 1 + (order >= 1 tail)."""
    if a.coeffs.get(0) != 1:
        raise SeriesError("log needs constant term 1")
    b = a - 1
    if b.coeffs and b.order() < 1:
        raise SeriesError("log needs a series of the form 1 + O(w)")
    if b.is_zero and b.trunc is None:
        return LaurentSeries.zero(a.variable)
    w = b.trunc if b.trunc is not None else (width or DEFAULT_WIDTH)
    d = b.order() if b.coeffs else b.trunc
    out = LaurentSeries.zero(a.variable, w)
    power = LaurentSeries.one(a.variable)
    k = 1
    while k * d < w:
        power = power * b
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
        k += 1
    return out


def geom_sum_finite(q: LaurentSeries, n: int) -> LaurentSeries:
    """Sum of q**k for k < n, via the closed form (1 - q**n) / (1 - q)."""
    if n < 0:
        raise SeriesError("geom_sum_finite needs n >= 0")
    one = LaurentSeries.one(q.variable)
    if n == 0:
        return LaurentSeries.zero(q.variable)
    denom = one - q
    if denom.is_zero:
        raise SeriesError("q equals 1 on its window; sum the terms directly")
    return (one - q.pow_int(n)) * denom.inverse()
