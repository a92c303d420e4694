"""Rational functions p/q over Q.

No multivariate gcd is taken.  Normalization removes a common monomial
factor, divides out the denominator when it divides the numerator
exactly, and scales so that the denominator is a primitive integer
polynomial with positive leading coefficient (constant denominators are
folded into the numerator).  Zero testing only looks at the numerator,
which is sound on uncancelled fractions.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DenominatorVanishes, DivisionByZero
from .poly import Poly, format_poly, mono_div, mono_gcd, mono_lcm
from .variables import Var

_ONE = Poly.const(1)


def _make(num: Poly, den: Poly) -> "RatFn":
    if not den.terms:
        raise DivisionByZero("denominator is the zero polynomial")
    if not num.terms:
        return RatFn._raw(Poly(), _ONE)
    if den.is_constant():
        c = den.constant_value()
        return RatFn._raw(num if c == 1 else num.scale(1 / c), _ONE)
    g = mono_gcd(num.mono_content(), den.mono_content())
    if g:
        num, den = num.div_mono(g), den.div_mono(g)
        if den.is_constant():
            return RatFn._raw(num.scale(1 / den.constant_value()), _ONE)
    if len(den.terms) > 1:
        q = num.divexact(den)
        if q is not None:
            return RatFn._raw(q, _ONE)
        if len(num.terms) > 1:
            q = den.divexact(num)
            if q is not None:
                num, den = _ONE, q
                if den.is_constant():
                    return RatFn._raw(num.scale(1 / den.constant_value()), _ONE)
    f = den.integer_normalizer()
    if f != 1:
        num, den = num.scale(f), den.scale(f)
    return RatFn._raw(num, den)


def _coerce(x) -> "RatFn":
    if isinstance(x, RatFn):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFn._raw(Poly.const(x), _ONE)
    if isinstance(x, Poly):
        return RatFn._raw(x, _ONE)
    if isinstance(x, Var):
        return RatFn._raw(Poly.var(x), _ONE)
    raise TypeError(f"cannot convert {type(x).__name__} to RatFn")


class RatFn:
    """Exact rational function; the universal scalar of the package."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        num = _coerce(num)
        if den is None:
            self.num, self.den = num.num, num.den
        else:
            r = num / _coerce(den)
            self.num, self.den = r.num, r.den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFn":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def var(cls, v: Var) -> "RatFn":
        return cls._raw(Poly.var(v), _ONE)

    @classmethod
    def const(cls, c) -> "RatFn":
        return cls._raw(Poly.const(c), _ONE)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def __bool__(self):
        return bool(self.num.terms)

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return self.num.terms == other.num.terms
        return (self.num * other.den).terms == (other.num * self.den).terms

    __hash__ = None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "RatFn":
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            return RatFn._raw(self.num + other.num, _ONE)
        if d1.terms == d2.terms:
            return _make(self.num + other.num, d1)
        if d1.is_monomial() and d2.is_monomial():
            (m1, c1), = d1.terms.items()
            (m2, c2), = d2.terms.items()
            m = mono_lcm(m1, m2)
            n = self.num.mul_mono(mono_div(m, m1)).scale(1 / c1) + other.num.mul_mono(
                mono_div(m, m2)
            ).scale(1 / c2)
            return _make(n, Poly({m: Fraction(1)}))
        if d2.is_one():
            return _make(self.num + other.num * d1, d1)
        if d1.is_one():
            return _make(self.num * d2 + other.num, d2)
        return _make(self.num * d2 + other.num * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "RatFn":
        return RatFn._raw(-self.num, self.den)

    def __sub__(self, other) -> "RatFn":
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFn._raw(self.num - other.num, _ONE)
        return self + (-other)

    def __rsub__(self, other) -> "RatFn":
        return _coerce(other) - self

    def __mul__(self, other) -> "RatFn":
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFn._raw(Poly(), _ONE)
            return RatFn._raw(self.num.scale(other), self.den)
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFn._raw(self.num * other.num, _ONE)
        if not self.num.terms or not other.num.terms:
            return RatFn._raw(Poly(), _ONE)
        return _make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFn":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return RatFn._raw(self.num.scale(1 / Fraction(other)), self.den)
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if not other.num.terms:
            raise DivisionByZero("division by zero")
        return _make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFn":
        return _coerce(other) / self

    def __pow__(self, n: int) -> "RatFn":
        if n < 0:
            return RatFn.const(1) / (self**-n)
        if self.den.is_one():
            return RatFn._raw(self.num**n, _ONE)
        return _make(self.num**n, self.den**n)

    # -- calculus / evaluation -------------------------------------------

    def diff(self, v: Var) -> "RatFn":
        if self.den.is_one():
            return RatFn._raw(self.num.diff(v), _ONE)
        dd = self.den.diff(v)
        if not dd.terms:
            return _make(self.num.diff(v), self.den)
        return _make(self.num.diff(v) * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point: dict) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise DivisionByZero("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def substitute(self, bindings: dict) -> "RatFn":
        bindings = {v: _coerce(x) for v, x in bindings.items()}
        if all(b.den.is_one() for b in bindings.values()):
            polys = {v: b.num for v, b in bindings.items()}
            num = self.num.substitute(polys)
            den = self.den.substitute(polys) if not self.den.is_one() else _ONE
            if not den.terms:
                raise DenominatorVanishes("substituted denominator is zero")
            return _make(num, den)
        num = _subs_rational(self.num, bindings)
        den = _subs_rational(self.den, bindings)
        if den.is_zero():
            raise DenominatorVanishes("substituted denominator is zero")
        return num / den

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def collect(self, vs) -> dict:
        """Coefficients of the monomials in ``vs``; den must not involve ``vs``."""
        if self.den.variables() & set(vs):
            raise ValueError("denominator depends on the collected variables")
        return {m: _make(p, self.den) for m, p in self.num.collect(vs).items()}

    def __str__(self) -> str:
        return format_ratfn(self)

    def __repr__(self) -> str:
        return f"RatFn({format_ratfn(self)})"


def _subs_rational(p: Poly, bindings: dict) -> RatFn:
    from .variables import var_of

    out = RatFn.const(0)
    cache: dict = {}
    for m, c in p.terms.items():
        term = RatFn.const(c)
        for w, e in m:
            v = var_of(w)
            b = bindings.get(v)
            if b is None:
                term = term * RatFn.var(v) ** e
            else:
                key = (w, e)
                if key not in cache:
                    cache[key] = b**e
                term = term * cache[key]
        out = out + term
    return out


def _wrap(p: Poly, is_den: bool) -> str:
    s = format_poly(p)
    if len(p.terms) > 1:
        return f"({s})"
    if is_den:
        (m, c), = p.terms.items()
        if c != 1 or len(m) > 1 or (m and m[0][1] > 1):
            return f"({s})"
    return s


def format_ratfn(x: RatFn) -> str:
    if x.den.is_one():
        return format_poly(x.num)
    return f"{_wrap(x.num, False)}/{_wrap(x.den, True)}"


ZERO = RatFn.const(0)
ONE = RatFn.const(1)


# -- functional API ---------------------------------------------------------


def add(x, y) -> RatFn:
    return _coerce(x) + _coerce(y)


def mul(x, y) -> RatFn:
    return _coerce(x) * _coerce(y)


def differentiate(x, v: Var) -> RatFn:
    return _coerce(x).diff(v)


def substitute(x, bindings: dict) -> RatFn:
    return _coerce(x).substitute(bindings)


def evaluate(x, point: dict) -> Fraction:
    return _coerce(x).evaluate(point)


def is_zero(x) -> bool:
    return _coerce(x).is_zero()


def as_ratfn(x) -> RatFn:
    return _coerce(x)
