"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(var_id, exponent)`` pairs sorted by id with
no zero exponents; the empty tuple is the constant monomial.  A `Poly`
maps monomials to nonzero `Fraction` coefficients, so equal polynomials
have equal term maps.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .errors import UnboundVariable
from .variables import Var, position, registry_version, var_id, var_of

Monomial = tuple  # tuple[tuple[int, int], ...]

ONE_MONO: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_div(a: Monomial, b: Monomial):
    """a / b, or None if b does not divide a."""
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        r = d.get(v, 0) - e
        if r < 0:
            return None
        if r:
            d[v] = r
        else:
            del d[v]
    return tuple(sorted(d.items()))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    if not a or not b:
        return ONE_MONO
    db = dict(b)
    return tuple((v, min(e, db[v])) for v, e in a if v in db)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        if e > d.get(v, 0):
            d[v] = e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


_key_cache: dict = {}
_key_version = [-1]


def mono_key(m: Monomial):
    """Sort key realising graded-lex order (larger key = larger monomial)."""
    if _key_version[0] != registry_version():
        _key_cache.clear()
        _key_version[0] = registry_version()
    k = _key_cache.get(m)
    if k is None:
        ordered = sorted(((position(v), e) for v, e in m))
        k = (sum(e for _, e in m), tuple((-p, e) for p, e in ordered))
        _key_cache[m] = k
    return k


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Polynomial over Q in the registered variables. Immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly":
        c = _frac(c)
        return cls({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, v: Var, exp: int = 1) -> "Poly":
        if exp == 0:
            return cls({ONE_MONO: Fraction(1)})
        return cls({((var_id(v), exp),): Fraction(1)})

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and ONE_MONO in t)

    def is_one(self) -> bool:
        t = self.terms
        return len(t) == 1 and t.get(ONE_MONO) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        return self.terms.get(ONE_MONO, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s += c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly(t)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = -c
            else:
                s -= c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly(t)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            if not mb:
                if cb == 1:
                    return Poly(dict(a))
                return Poly({m: c * cb for m, c in a.items()})
            return Poly({mono_mul(m, mb): c * cb for m, c in a.items()})
        t: dict = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                s = t.get(m)
                t[m] = ca * cb if s is None else s + ca * cb
        return Poly({m: c for m, c in t.items() if c})

    def scale(self, c) -> "Poly":
        c = _frac(c)
        if not c:
            return Poly()
        if c == 1:
            return self
        return Poly({m: v * c for m, v in self.terms.items()})

    def mul_mono(self, mono: Monomial) -> "Poly":
        if not mono:
            return self
        return Poly({mono_mul(m, mono): c for m, c in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus / evaluation -------------------------------------------

    def diff(self, v: Var) -> "Poly":
        i = var_id(v)
        t: dict = {}
        for m, c in self.terms.items():
            for k, (w, e) in enumerate(m):
                if w == i:
                    nm = m[:k] + ((w, e - 1),) + m[k + 1:] if e > 1 else m[:k] + m[k + 1:]
                    t[nm] = t.get(nm, 0) + c * e
                    break
        return Poly({m: c for m, c in t.items() if c})

    def evaluate(self, point: dict) -> Fraction:
        """Exact value; ``point`` maps `Var` to rationals."""
        values = {}
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for w, e in m:
                x = values.get(w)
                if x is None:
                    v = var_of(w)
                    if v not in point:
                        raise UnboundVariable(f"no value bound for variable {v}")
                    x = values[w] = _frac(point[v])
                term *= x**e
            total += term
        return total

    def substitute(self, bindings: dict) -> "Poly":
        """Simultaneous substitution of `Poly` values for variables."""
        ids = {var_id(v): p for v, p in bindings.items()}
        powers: dict = {}
        t: dict = {}
        for m, c in self.terms.items():
            keep = []
            acc = None
            for w, e in m:
                p = ids.get(w)
                if p is None:
                    keep.append((w, e))
                    continue
                pw = powers.get((w, e))
                if pw is None:
                    pw = powers[(w, e)] = p**e
                acc = pw if acc is None else acc * pw
            keep = tuple(keep)
            if acc is None:
                t[keep] = t.get(keep, 0) + c
                continue
            for mm, cc in acc.terms.items():
                mm = mono_mul(mm, keep)
                t[mm] = t.get(mm, 0) + c * cc
        return Poly({m: c for m, c in t.items() if c})

    # -- structure --------------------------------------------------------

    def variables(self) -> set:
        return {var_of(w) for m in self.terms for w, _ in m}

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0]), reverse=True)

    def leading(self):
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def mono_content(self) -> Monomial:
        it = iter(self.terms)
        g = next(it, ONE_MONO)
        for m in it:
            if not g:
                break
            g = mono_gcd(g, m)
        return g

    def div_mono(self, mono: Monomial) -> "Poly":
        if not mono:
            return self
        return Poly({mono_div(m, mono): c for m, c in self.terms.items()})

    def integer_normalizer(self) -> Fraction:
        """Factor turning self into a primitive integer polynomial with positive leading coefficient."""
        cs = self.terms.values()
        den = reduce(lcm, (c.denominator for c in cs), 1)
        num = reduce(gcd, (c.numerator for c in cs), 0)
        f = Fraction(den, num)
        return -f if self.leading()[1] < 0 else f

    def divexact(self, q: "Poly"):
        """Quotient self/q if q divides self exactly, else None."""
        if not q.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return Poly()
        if len(q.terms) == 1:
            (mq, cq), = q.terms.items()
            out = {}
            for m, c in self.terms.items():
                d = mono_div(m, mq)
                if d is None:
                    return None
                out[d] = c / cq
            return Poly(out)
        if self.total_degree() < q.total_degree():
            return None
        lm_q, lc_q = q.leading()
        rest = [(m, c) for m, c in q.terms.items() if m != lm_q]
        r = dict(self.terms)
        out = {}
        while r:
            m = max(r, key=mono_key)
            t = mono_div(m, lm_q)
            if t is None:
                return None
            c = r.pop(m) / lc_q
            out[t] = c
            for mq, cq in rest:
                mm = mono_mul(mq, t)
                s = r.get(mm, 0) - c * cq
                if s:
                    r[mm] = s
                else:
                    r.pop(mm, None)
        return Poly(out)

    def collect(self, vs) -> dict:
        """Split by the monomials in ``vs``: {monomial-in-vs: coefficient Poly}."""
        ids = {var_id(v) for v in vs}
        out: dict = {}
        for m, c in self.terms.items():
            inside = tuple(p for p in m if p[0] in ids)
            outside = tuple(p for p in m if p[0] not in ids)
            out.setdefault(inside, {})[outside] = c
        return {k: Poly(t) for k, t in out.items()}

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)})"


def format_mono(m: Monomial) -> str:
    parts = []
    for p, w, e in sorted((position(w), w, e) for w, e in m):
        s = str(var_of(w))
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def _format_coeff_term(c: Fraction, m: Monomial) -> str:
    """Render |c|*m (sign handled by caller)."""
    c = abs(c)
    if not m:
        return str(c)
    mono = format_mono(m)
    if c == 1:
        return mono
    return f"{c}*{mono}"


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        body = _format_coeff_term(c, m)
        if k == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)
