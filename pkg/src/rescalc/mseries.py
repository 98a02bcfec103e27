"""Sparse multivariate exact polynomials and truncated multivariate series.

``MPoly`` is an exact polynomial over named variables with nonnegative
exponents; rational-function identities are decided by cross-multiplied
polynomial equality, never by sampling.

``MSeries`` extends the univariate window discipline to several variables.
Truncation is a per-variable degree cap: a term is known when every
exponent is below its variable's cap (``None`` means exact in that
variable).  Each series also carries a per-variable exponent floor bounding
every term, known or unknown, so products can tighten windows soundly in
the presence of negative exponents.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from .numeric import Rat, Scalar, as_rat, binom_general
from .series import LaurentSeries, SeriesError, WindowError

Expvec = Tuple[int, ...]

MV_DEFAULT_WIDTH = 12


def _min2(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _inside(ev: Expvec, trunc: Sequence[Optional[int]]) -> bool:
    return all(t is None or e < t for e, t in zip(ev, trunc))


# ---------------------------------------------------------------------------
# Exact polynomials
# ---------------------------------------------------------------------------


class MPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: dict[Expvec, Rat],
                 _trusted: bool = False):
        variables = tuple(variables)
        if not _trusted:
            clean: dict[Expvec, Rat] = {}
            for ev, c in terms.items():
                ev = tuple(ev)
                if len(ev) != len(variables):
                    raise ValueError(f"exponent vector {ev} has wrong arity")
                if any(e < 0 for e in ev):
                    raise ValueError(f"negative exponent in {ev}")
                c = as_rat(c)
                if c:
                    clean[ev] = c
            terms = clean
        self.variables = variables
        self.terms = terms

    @staticmethod
    def const(variables: Sequence[str], c: Scalar) -> "MPoly":
        variables = tuple(variables)
        z = tuple(0 for _ in variables)
        c = as_rat(c)
        return MPoly(variables, {z: c} if c else {}, _trusted=True)

    @staticmethod
    def var(variables: Sequence[str], name: str) -> "MPoly":
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        ev = tuple(1 if v == name else 0 for v in variables)
        return MPoly(variables, {ev: Fraction(1)}, _trusted=True)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def extend(self, variables: Sequence[str]) -> "MPoly":
        variables = tuple(variables)
        if variables == self.variables:
            return self
        idx = {}
        for i, v in enumerate(self.variables):
            if v in variables:
                idx[i] = variables.index(v)
            elif any(ev[i] for ev in self.terms):
                raise ValueError(f"cannot drop used variable {v!r}")
        terms: dict[Expvec, Rat] = {}
        for ev, c in self.terms.items():
            new = [0] * len(variables)
            for i, e in enumerate(ev):
                if e:
                    new[idx[i]] = e
            terms[tuple(new)] = c
        return MPoly(variables, terms, _trusted=True)

    def _aligned(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        if self.variables == other.variables:
            return self, other
        merged = list(self.variables)
        for v in other.variables:
            if v not in merged:
                merged.append(v)
        return self.extend(merged), other.extend(merged)

    def __add__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.variables, other)
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for ev, c in b.terms.items():
            v = terms.get(ev, Fraction(0)) + c
            if v:
                terms[ev] = v
            else:
                terms.pop(ev, None)
        return MPoly(a.variables, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.variables, {ev: -c for ev, c in self.terms.items()},
                     _trusted=True)

    def __sub__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.variables, other)
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            c = as_rat(other)
            if not c:
                return MPoly(self.variables, {}, _trusted=True)
            return MPoly(self.variables,
                         {ev: c * v for ev, v in self.terms.items()},
                         _trusted=True)
        a, b = self._aligned(other)
        terms: dict[Expvec, Rat] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                ev = tuple(x + y for x, y in zip(ea, eb))
                v = terms.get(ev, Fraction(0)) + ca * cb
                if v:
                    terms[ev] = v
                else:
                    terms.pop(ev, None)
        return MPoly(a.variables, terms, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MPoly":
        if e < 0:
            raise ValueError("MPoly power must be nonnegative")
        out = MPoly.const(self.variables, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.variables, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self.terms.items()))))

    def subst(self, name: str, value: Union["MPoly", Scalar]) -> "MPoly":
        """Substitute a polynomial or constant for one variable."""
        if name not in self.variables:
            return self
        i = self.variables.index(name)
        rest = tuple(v for v in self.variables if v != name)
        if isinstance(value, (int, Fraction)):
            value = MPoly.const(rest, value)
        out = MPoly(rest, {}, _trusted=True)
        powers: dict[int, MPoly] = {}

        def value_pow(k: int) -> MPoly:
            if k not in powers:
                powers[k] = value ** k
            return powers[k]

        for ev, c in self.terms.items():
            k = ev[i]
            rest_ev = tuple(e for j, e in enumerate(ev) if j != i)
            base = MPoly(rest, {rest_ev: c}, _trusted=True)
            out = out + (base * value_pow(k) if k else base)
        return out

    def integrate(self, name: str) -> "MPoly":
        """Antiderivative with respect to one variable."""
        i = self.variables.index(name)
        terms: dict[Expvec, Rat] = {}
        for ev, c in self.terms.items():
            new = list(ev)
            new[i] += 1
            terms[tuple(new)] = c / new[i]
        return MPoly(self.variables, terms, _trusted=True)

    def eval_all(self, values: dict[str, Scalar]) -> Rat:
        out = Fraction(0)
        for ev, c in self.terms.items():
            v = c
            for name, e in zip(self.variables, ev):
                if e:
                    v *= as_rat(values[name]) ** e
            out += v
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for ev in sorted(self.terms):
            mono = "*".join(f"{v}^{e}" for v, e in zip(self.variables, ev) if e)
            c = self.terms[ev]
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


def ratfun_equal(num_lhs: MPoly, den_lhs: MPoly,
                 num_rhs: MPoly, den_rhs: MPoly) -> bool:
    """Exact rational-function equality by cross multiplication."""
    if den_lhs.is_zero or den_rhs.is_zero:
        raise ValueError("denominator polynomial is zero")
    return num_lhs * den_rhs == num_rhs * den_lhs


# ---------------------------------------------------------------------------
# Truncated multivariate series
# ---------------------------------------------------------------------------


class MSeries:
    __slots__ = ("variables", "terms", "trunc", "floor")

    def __init__(self, variables: Sequence[str], terms: dict[Expvec, Rat],
                 trunc: Sequence[Optional[int]],
                 floor: Optional[Sequence[int]] = None,
                 _trusted: bool = False):
        variables = tuple(variables)
        trunc = tuple(trunc)
        if len(trunc) != len(variables):
            raise ValueError("trunc arity mismatch")
        if not _trusted:
            clean: dict[Expvec, Rat] = {}
            for ev, c in terms.items():
                ev = tuple(ev)
                if len(ev) != len(variables):
                    raise ValueError(f"exponent vector {ev} has wrong arity")
                for e, t in zip(ev, trunc):
                    if t is not None and e >= t:
                        raise SeriesError(
                            f"exponent {ev} is outside the window {trunc}")
                c = as_rat(c)
                if c:
                    clean[ev] = c
            terms = clean
        if floor is None:
            n = len(variables)
            if terms:
                floor = tuple(min(min(ev[i] for ev in terms), 0) for i in range(n))
            else:
                floor = tuple(0 for _ in range(n))
        self.variables = variables
        self.terms = terms
        self.trunc = trunc
        self.floor = tuple(floor)

    # -- construction -------------------------------------------------------

    @staticmethod
    def zero(variables: Sequence[str],
             trunc: Optional[Sequence[Optional[int]]] = None) -> "MSeries":
        variables = tuple(variables)
        t = tuple(trunc) if trunc is not None else tuple(None for _ in variables)
        return MSeries(variables, {}, t, tuple(0 for _ in variables), _trusted=True)

    @staticmethod
    def const(variables: Sequence[str], c: Scalar) -> "MSeries":
        variables = tuple(variables)
        z = tuple(0 for _ in variables)
        c = as_rat(c)
        terms = {z: c} if c else {}
        return MSeries(variables, terms, tuple(None for _ in variables),
                       tuple(0 for _ in variables), _trusted=True)

    @staticmethod
    def var(variables: Sequence[str], name: str) -> "MSeries":
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        ev = tuple(1 if v == name else 0 for v in variables)
        return MSeries(variables, {ev: Fraction(1)},
                       tuple(None for _ in variables),
                       tuple(0 for _ in variables), _trusted=True)

    @staticmethod
    def monomial(variables: Sequence[str], exps: Sequence[int],
                 c: Scalar = 1) -> "MSeries":
        variables = tuple(variables)
        ev = tuple(exps)
        c = as_rat(c)
        return MSeries(variables, {ev: c} if c else {},
                       tuple(None for _ in variables),
                       tuple(min(e, 0) for e in ev), _trusted=True)

    @staticmethod
    def from_poly(p: MPoly) -> "MSeries":
        return MSeries(p.variables, dict(p.terms),
                       tuple(None for _ in p.variables),
                       tuple(0 for _ in p.variables), _trusted=True)

    @staticmethod
    def from_series(s: LaurentSeries) -> "MSeries":
        if s.coeffs:
            f = min(min(s.coeffs), 0)
            if s.trunc is not None:
                f = min(f, s.trunc)
        else:
            f = min(s.trunc, 0) if s.trunc is not None else 0
        return MSeries((s.variable,), {(e,): c for e, c in s.coeffs.items()},
                       (s.trunc,), (f,), _trusted=True)

    def to_series(self) -> LaurentSeries:
        if len(self.variables) != 1:
            raise ValueError("only single-variable series convert")
        return LaurentSeries(self.variables[0],
                             {ev[0]: c for ev, c in self.terms.items()},
                             self.trunc[0], _trusted=True)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def exact(self) -> bool:
        return all(t is None for t in self.trunc)

    # -- alignment -----------------------------------------------------------

    def extend(self, variables: Sequence[str]) -> "MSeries":
        variables = tuple(variables)
        if variables == self.variables:
            return self
        n = len(variables)
        idx = {}
        for i, v in enumerate(self.variables):
            if v in variables:
                idx[i] = variables.index(v)
            else:
                used = any(ev[i] for ev in self.terms)
                if used or self.trunc[i] is not None:
                    raise ValueError(f"cannot drop variable {v!r}")
        terms: dict[Expvec, Rat] = {}
        for ev, c in self.terms.items():
            new = [0] * n
            for i, e in enumerate(ev):
                if e:
                    new[idx[i]] = e
            terms[tuple(new)] = c
        trunc: list[Optional[int]] = [None] * n
        floor = [0] * n
        for i, v in enumerate(self.variables):
            if i in idx:
                trunc[idx[i]] = self.trunc[i]
                floor[idx[i]] = self.floor[i]
        return MSeries(variables, terms, tuple(trunc), tuple(floor), _trusted=True)

    def _aligned(self, other: "MSeries") -> tuple["MSeries", "MSeries"]:
        if self.variables == other.variables:
            return self, other
        merged = list(self.variables)
        for v in other.variables:
            if v not in merged:
                merged.append(v)
        return self.extend(merged), other.extend(merged)

    # -- coefficient access ----------------------------------------------------

    def coeff(self, exps: Sequence[int]) -> Rat:
        ev = tuple(exps)
        for v, e, t in zip(self.variables, ev, self.trunc):
            if t is not None and e >= t:
                raise WindowError(
                    f"coefficient at {v}^{e} is outside the window (trunc={t})")
        return self.terms.get(ev, Fraction(0))

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction)):
            other = MSeries.const(self.variables, other)
        a, b = self._aligned(other)
        trunc = tuple(_min2(x, y) for x, y in zip(a.trunc, b.trunc))
        floor = tuple(min(x, y) for x, y in zip(a.floor, b.floor))
        terms = dict(a.terms)
        for ev, c in b.terms.items():
            v = terms.get(ev, Fraction(0)) + c
            if v:
                terms[ev] = v
            else:
                terms.pop(ev, None)
        terms = {ev: c for ev, c in terms.items() if _inside(ev, trunc)}
        return MSeries(a.variables, terms, trunc, floor, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "MSeries":
        return MSeries(self.variables, {ev: -c for ev, c in self.terms.items()},
                       self.trunc, self.floor, _trusted=True)

    def __sub__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction)):
            other = MSeries.const(self.variables, other)
        return self + (-other)

    def __rsub__(self, other) -> "MSeries":
        return (-self) + other

    def scale(self, c: Scalar) -> "MSeries":
        c = as_rat(c)
        if not c:
            return MSeries.zero(self.variables, self.trunc)
        return MSeries(self.variables, {ev: c * v for ev, v in self.terms.items()},
                       self.trunc, self.floor, _trusted=True)

    def __mul__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self._aligned(other)
        if (a.is_zero and a.exact) or (b.is_zero and b.exact):
            return MSeries.zero(a.variables)
        fa, fb = a.floor, b.floor
        trunc: list[Optional[int]] = []
        for i in range(len(a.variables)):
            t: Optional[int] = None
            if a.trunc[i] is not None:
                t = _min2(t, a.trunc[i] + fb[i])
            if b.trunc[i] is not None:
                t = _min2(t, b.trunc[i] + fa[i])
            trunc.append(t)
        floor = tuple(x + y for x, y in zip(fa, fb))
        terms: dict[Expvec, Rat] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                ev = tuple(x + y for x, y in zip(ea, eb))
                if not _inside(ev, trunc):
                    continue
                v = terms.get(ev, Fraction(0)) + ca * cb
                if v:
                    terms[ev] = v
                else:
                    terms.pop(ev, None)
        return MSeries(a.variables, terms, tuple(trunc), floor, _trusted=True)

    __rmul__ = __mul__

    def pow_int(self, e: int,
                trunc: Optional[Sequence[Optional[int]]] = None) -> "MSeries":
        if e == 0:
            return MSeries.const(self.variables, 1)
        base = self if e > 0 else self.inverse(trunc)
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    __pow__ = pow_int

    def _loop_windows(self, tail_terms: dict[Expvec, Rat],
                      trunc: Optional[Sequence[Optional[int]]],
                      what: str) -> Tuple[Optional[int], ...]:
        """Window vector for Neumann-style loops; guarantees termination."""
        if self.exact:
            if trunc is not None:
                wt = tuple(trunc)
            else:
                wt = tuple(MV_DEFAULT_WIDTH for _ in self.variables)
        else:
            wt = self.trunc
        used = {i for ev in tail_terms for i, e in enumerate(ev) if e > 0}
        if any(wt[i] is None for i in used):
            raise SeriesError(
                f"{what} needs a finite window in every variable it involves; "
                "pass trunc")
        return wt

    def inverse(self, trunc: Optional[Sequence[Optional[int]]] = None) -> "MSeries":
        """Inverse of a series that is a monomial times a unit.

        After factoring out the per-variable minimum exponents the remaining
        series must have a nonzero constant term and nonnegative exponents.
        """
        if self.is_zero:
            raise SeriesError("cannot invert a series that is zero on its window")
        n = len(self.variables)
        shift = tuple(min(ev[i] for ev in self.terms) for i in range(n))
        if not self.exact and any(f != s for f, s in zip(self.floor, shift)):
            raise SeriesError("cannot invert: unknown terms may fall below the "
                              "stored exponent floor")
        zero = tuple(0 for _ in range(n))
        shifted = {tuple(e - s for e, s in zip(ev, shift)): c
                   for ev, c in self.terms.items()}
        c0 = shifted.get(zero)
        if not c0:
            raise SeriesError("cannot invert: no unit term after factoring the "
                              "minimal monomial")
        if len(shifted) == 1:
            inv_terms = {tuple(-s for s in shift): 1 / c0}
            if self.exact:
                t_out: Tuple[Optional[int], ...] = tuple(None for _ in range(n))
            else:
                t_out = tuple(None if t is None else t - 2 * s
                              for t, s in zip(self.trunc, shift))
            return MSeries(self.variables, inv_terms, t_out,
                           tuple(-s for s in shift), _trusted=True)
        if any(e < 0 for ev in shifted for e in ev):
            raise SeriesError("cannot invert: mixed-sign exponents after "
                              "factoring the minimal monomial")
        r_terms = {ev: -c / c0 for ev, c in shifted.items() if ev != zero}
        if self.exact:
            wt = self._loop_windows(r_terms, trunc, "inverting an exact series")
        else:
            wt = tuple(None if t is None else t - s
                       for t, s in zip(self.trunc, shift))
            wt = MSeries(self.variables, r_terms, wt,
                         zero, _trusted=True)._loop_windows(r_terms, None, "inversion")
        r = MSeries(self.variables,
                    {ev: c for ev, c in r_terms.items() if _inside(ev, wt)},
                    wt, zero, _trusted=True)
        acc = MSeries.const(self.variables, 1) + MSeries.zero(self.variables, wt)
        power = MSeries.const(self.variables, 1)
        while True:
            power = power * r
            if not power.terms:
                break
            acc = acc + power
        inv_unit = acc.scale(1 / c0)
        terms = {tuple(e - s for e, s in zip(ev, shift)): c
                 for ev, c in inv_unit.terms.items()}
        trunc_out = tuple(None if t is None else t - s
                          for t, s in zip(inv_unit.trunc, shift))
        return MSeries(self.variables, terms, trunc_out,
                       tuple(-s for s in shift), _trusted=True)

    def pow_general(self, e: Scalar,
                    trunc: Optional[Sequence[Optional[int]]] = None) -> "MSeries":
        """Binomial-series power of a series with constant term 1."""
        n = len(self.variables)
        zero = tuple(0 for _ in range(n))
        if self.terms.get(zero) != 1:
            raise SeriesError("general power needs constant term 1")
        e = as_rat(e)
        if e.denominator == 1 and e >= 0:
            return self.pow_int(e.numerator)
        rest = {ev: c for ev, c in self.terms.items() if ev != zero}
        if any(x < 0 for ev in rest for x in ev):
            raise SeriesError("general power needs nonnegative exponents")
        wt = self._loop_windows(rest, trunc, "a general power")
        b = MSeries(self.variables,
                    {ev: c for ev, c in rest.items() if _inside(ev, wt)},
                    wt, zero, _trusted=True)
        out = MSeries.const(self.variables, 1) + MSeries.zero(self.variables, wt)
        power = MSeries.const(self.variables, 1)
        k = 1
        while True:
            power = power * b
            if not power.terms:
                break
            out = out + power.scale(binom_general(e, k))
            k += 1
        return out

    def exp(self, trunc: Optional[Sequence[Optional[int]]] = None) -> "MSeries":
        """Formal exponential of a series with no constant term."""
        n = len(self.variables)
        zero = tuple(0 for _ in range(n))
        if zero in self.terms:
            raise SeriesError("exp needs zero constant term")
        if any(x < 0 for ev in self.terms for x in ev):
            raise SeriesError("exp needs nonnegative exponents")
        wt = self._loop_windows(self.terms, trunc, "exp")
        b = MSeries(self.variables,
                    {ev: c for ev, c in self.terms.items() if _inside(ev, wt)},
                    wt, zero, _trusted=True)
        out = MSeries.const(self.variables, 1) + MSeries.zero(self.variables, wt)
        power = MSeries.const(self.variables, 1)
        fact = 1
        k = 1
        while True:
            power = power * b
            if not power.terms:
                break
            fact *= k
            out = out + power.scale(Fraction(1, fact))
            k += 1
        return out

    # -- extraction and substitution ------------------------------------------

    def res(self, names: Union[str, Sequence[str]]) -> Union["MSeries", Rat]:
        """Iterated coefficient extraction at exponent -1, left to right."""
        if isinstance(names, str):
            names = [names]
        out = self
        for name in names:
            out = out._res_one(name)
        if not out.variables:
            return out.terms.get((), Fraction(0))
        return out

    def _res_one(self, name: str) -> "MSeries":
        if name not in self.variables:
            raise ValueError(f"unknown variable {name!r}")
        i = self.variables.index(name)
        t = self.trunc[i]
        if t is not None and -1 >= t:
            raise WindowError(
                f"residue in {name} is outside the window (trunc={t})")
        rest = tuple(v for j, v in enumerate(self.variables) if j != i)
        terms: dict[Expvec, Rat] = {}
        for ev, c in self.terms.items():
            if ev[i] == -1:
                terms[tuple(e for j, e in enumerate(ev) if j != i)] = c
        trunc = tuple(t for j, t in enumerate(self.trunc) if j != i)
        floor = tuple(f for j, f in enumerate(self.floor) if j != i)
        return MSeries(rest, terms, trunc, floor, _trusted=True)

    def _drop(self, i: int) -> Tuple[Tuple[str, ...], Tuple[Optional[int], ...], Expvec]:
        rest = tuple(v for j, v in enumerate(self.variables) if j != i)
        trunc = tuple(t for j, t in enumerate(self.trunc) if j != i)
        floor = tuple(f for j, f in enumerate(self.floor) if j != i)
        return rest, trunc, floor

    def subst(self, name: str, value: Union["MSeries", Scalar]) -> "MSeries":
        """Substitute for one variable.

        Supported shapes: a constant (series exact in that variable, or the
        constant 0 against a window of at least 1); a monomial in other
        variables with nonnegative exponents and positive total degree; any
        series of positive total order when this series is fully exact.
        """
        if name not in self.variables:
            raise ValueError(f"unknown variable {name!r}")
        i = self.variables.index(name)
        rest, rtrunc, rfloor = self._drop(i)
        tvar = self.trunc[i]

        if isinstance(value, (int, Fraction)):
            value = as_rat(value)
            if value == 0:
                if tvar is not None and tvar < 1:
                    raise WindowError("constant-term slice is outside the window")
                if any(ev[i] < 0 for ev in self.terms):
                    raise SeriesError("substituting 0 into a negative power")
                terms = {tuple(e for j, e in enumerate(ev) if j != i): c
                         for ev, c in self.terms.items() if ev[i] == 0}
                return MSeries(rest, terms, rtrunc, rfloor, _trusted=True)
            if tvar is not None:
                raise SeriesError("substituting a nonzero constant requires the "
                                  "series to be exact in that variable")
            terms2: dict[Expvec, Rat] = {}
            for ev, c in self.terms.items():
                rest_ev = tuple(e for j, e in enumerate(ev) if j != i)
                v = terms2.get(rest_ev, Fraction(0)) + c * value ** ev[i]
                if v:
                    terms2[rest_ev] = v
                else:
                    terms2.pop(rest_ev, None)
            terms2 = {ev: c for ev, c in terms2.items() if _inside(ev, rtrunc)}
            return MSeries(rest, terms2, rtrunc, rfloor, _trusted=True)

        if name in value.variables:
            value = value.extend(tuple(v for v in value.variables if v != name))
        if len(value.terms) == 1 and value.exact:
            (mono_ev, mono_c), = value.terms.items()
            if all(e >= 0 for e in mono_ev) and sum(mono_ev) >= 1:
                return self._subst_monomial(i, value.variables, mono_ev, mono_c)
        if not self.exact:
            raise SeriesError("general substitution requires a fully exact series")
        if value.is_zero or any(e < 0 for ev in value.terms for e in ev) or \
                min(sum(ev) for ev in value.terms) < 1:
            raise SeriesError("substituted value must have positive total order")
        out: Optional[MSeries] = None
        powers: dict[int, MSeries] = {}

        def vpow(k: int) -> MSeries:
            if k not in powers:
                powers[k] = value.pow_int(k) if k >= 0 \
                    else value.inverse().pow_int(-k)
            return powers[k]

        for ev, c in self.terms.items():
            k = ev[i]
            rest_ev = tuple(e for j, e in enumerate(ev) if j != i)
            piece = MSeries(rest, {rest_ev: c}, rtrunc,
                            tuple(min(f, e) for f, e in zip(rfloor, rest_ev)),
                            _trusted=True)
            if k:
                piece = piece * vpow(k)
            out = piece if out is None else out + piece
        return out if out is not None else MSeries.zero(rest)

    def _subst_monomial(self, i: int, mvars: Sequence[str],
                        mono_ev: Expvec, mono_c: Rat) -> "MSeries":
        rest = tuple(v for j, v in enumerate(self.variables) if j != i)
        merged = list(rest)
        for v in mvars:
            if v not in merged:
                merged.append(v)
        merged_t = tuple(merged)
        d = {v: e for v, e in zip(mvars, mono_ev)}
        n = len(merged_t)
        trunc: list[Optional[int]] = [None] * n
        floor = [0] * n
        for j, v in enumerate(merged_t):
            src = self.variables.index(v) if v in self.variables else None
            base_t = self.trunc[src] if src is not None else None
            base_f = self.floor[src] if src is not None else 0
            dv = d.get(v, 0)
            t: Optional[int] = None
            if base_t is not None:
                t = base_t + self.floor[i] * dv
            if dv and self.trunc[i] is not None:
                t = _min2(t, base_f + self.trunc[i] * dv)
            trunc[j] = t
            floor[j] = base_f + self.floor[i] * dv
        terms: dict[Expvec, Rat] = {}
        for ev, c in self.terms.items():
            k = ev[i]
            new = [0] * n
            for j, v in enumerate(merged_t):
                if v in self.variables:
                    new[j] = ev[self.variables.index(v)]
                new[j] += k * d.get(v, 0)
            newt = tuple(new)
            if not _inside(newt, trunc):
                continue
            v2 = terms.get(newt, Fraction(0)) + c * mono_c ** k
            if v2:
                terms[newt] = v2
            else:
                terms.pop(newt, None)
        return MSeries(merged_t, terms, tuple(trunc), tuple(floor), _trusted=True)

    # -- equality ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MSeries.const(self.variables, other)
        if not isinstance(other, MSeries):
            return NotImplemented
        a, b = self._aligned(other)
        trunc = tuple(_min2(x, y) for x, y in zip(a.trunc, b.trunc))
        for ev in set(a.terms) | set(b.terms):
            if not _inside(ev, trunc):
                continue
            if a.terms.get(ev, 0) != b.terms.get(ev, 0):
                return False
        return True

    def __hash__(self):
        return hash((self.variables, self.trunc,
                     tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            parts = []
            for ev in sorted(self.terms):
                mono = "*".join(f"{v}^{e}" for v, e in zip(self.variables, ev) if e)
                c = self.terms[ev]
                parts.append(f"{c}*{mono}" if mono else f"{c}")
            body = " + ".join(parts)
        w = ", ".join(f"{v}<{t}" if t is not None else f"{v}:exact"
                      for v, t in zip(self.variables, self.trunc))
        return f"{body}  [{w}]"


# -- module-level operation surface ------------------------------------------


def mv_make(variables: Sequence[str], terms: Iterable[Tuple[Sequence[int], Scalar]],
            trunc: Sequence[Optional[int]],
            floor: Optional[Sequence[int]] = None) -> MSeries:
    d: dict[Expvec, Rat] = {}
    for ev, c in terms:
        ev = tuple(ev)
        if ev in d:
            raise SeriesError(f"duplicate exponent vector {ev}")
        d[ev] = as_rat(c)
    return MSeries(variables, d, trunc, floor)


def mv_add(a: MSeries, b: MSeries) -> MSeries:
    return a + b


def mv_mul(a: MSeries, b: MSeries) -> MSeries:
    return a * b


def mv_inv(a: MSeries, trunc: Optional[Sequence[Optional[int]]] = None) -> MSeries:
    return a.inverse(trunc)


def mv_pow_general(a: MSeries, e: Scalar,
                   trunc: Optional[Sequence[Optional[int]]] = None) -> MSeries:
    return a.pow_general(e, trunc)


def mv_res(a: MSeries, names: Union[str, Sequence[str]]) -> Union[MSeries, Rat]:
    return a.res(names)


def mv_subst(a: MSeries, name: str, value: Union[MSeries, Scalar]) -> MSeries:
    return a.subst(name, value)
