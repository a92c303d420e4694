"""Affine Szabó operators, their characteristic polynomials and nilpotency."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .symexpr import ONE, ZERO, RatFn, Var, as_ratfn
from .tensorcalc import Connection, _alpha_monomials, cov_deriv_curvature


class SzaboMatrix:
    """Matrix of S(X) for the generic direction X = sum a_i d_i.

    Column ``m`` holds the components of S(X) d_m, so ``entries[l][m]`` is
    the ``l`` component.  Entries are cubic forms in ``directions``.
    """

    def __init__(self, entries, directions: Sequence[Var]):
        self.entries = [[as_ratfn(x) for x in row] for row in entries]
        self.dim = len(self.entries)
        self.directions = tuple(directions)

    def __getitem__(self, lm) -> RatFn:
        l, m = lm
        return self.entries[l][m]

    def column(self, m: int) -> list:
        return [row[m] for row in self.entries]

    def zero_pattern(self) -> list:
        """0/1 matrix marking structurally nonzero entries."""
        return [[0 if x.is_zero() else 1 for x in row] for row in self.entries]

    def substitute(self, bindings: dict) -> "SzaboMatrix":
        return SzaboMatrix([[x.substitute(bindings) for x in row] for row in self.entries], self.directions)

    def at_direction(self, components) -> list:
        """Entries with the direction variables replaced by ``components``."""
        b = dict(zip(self.directions, components))
        return [[x.substitute(b) for x in row] for row in self.entries]

    def trace(self) -> RatFn:
        acc = ZERO
        for i in range(self.dim):
            acc = acc + self.entries[i][i]
        return acc

    def __repr__(self):
        return f"SzaboMatrix(dim={self.dim}, pattern={self.zero_pattern()})"


def szabo_matrix(c: Connection) -> SzaboMatrix:
    """S(X) d_m = sum a_i a_j a_k (nabla_i R)(d_m, d_j) d_k."""

    def build():
        n, D = c.dim, cov_deriv_curvature(c)
        mono = _alpha_monomials(c)
        entries = []
        for l in range(n):
            row = []
            for m in range(n):
                grouped: dict = {}
                for i, j, k in product(range(n), repeat=3):
                    x = D[i, l, k, m, j]
                    if not x.is_zero():
                        key = tuple(sorted((i, j, k)))
                        grouped[key] = grouped[key] + x if key in grouped else x
                acc = ZERO
                for key, x in sorted(grouped.items()):
                    if not x.is_zero():
                        acc = acc + x * mono(*key)
                row.append(acc)
            entries.append(row)
        return SzaboMatrix(entries, c.directions())

    return c.cached("szabo", build)


# -- dense matrix helpers (RatFn or Fraction entries) -----------------------


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    zero = _zero_like(a)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if x and y:
                    acc = x * y if acc is None else acc + x * y
            row.append(zero if acc is None else acc)
        out.append(row)
    return out


def _zero_like(a):
    return ZERO if isinstance(a[0][0], RatFn) else Fraction(0)


def _is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def char_poly(m: SzaboMatrix | list) -> list:
    """sigma_1..sigma_n with P(t) = t^n - sigma_1 t^(n-1) + ... + (-1)^n sigma_n.

    Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    """
    a = m.entries if isinstance(m, SzaboMatrix) else [[as_ratfn(x) for x in row] for row in m]
    n = len(a)
    coeffs = [ZERO] * (n + 1)  # coeffs[k] multiplies t^k
    coeffs[n] = ONE
    mk = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        prev = coeffs[n - k + 1]
        if k == 1:
            mk = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        else:
            mk = _matmul(a, mk)
            for i in range(n):
                mk[i][i] = mk[i][i] + prev
        am = _matmul(a, mk)
        tr = ZERO
        for i in range(n):
            tr = tr + am[i][i]
        coeffs[n - k] = tr * Fraction(-1, k)
    return [coeffs[n - k] if k % 2 == 0 else -coeffs[n - k] for k in range(1, n + 1)]


@dataclass
class SzaboVerdict:
    """Outcome of the affine Szabó test: the flag plus the sigma witnesses."""

    holds: bool
    sigma: list = field(default_factory=list)

    def __bool__(self):
        return self.holds


def is_affine_szabo(c: Connection) -> SzaboVerdict:
    """True iff every sigma_k vanishes identically in directions and coordinates."""
    sigma = char_poly(szabo_matrix(c))
    return SzaboVerdict(all(s.is_zero() for s in sigma), sigma)


def szabo_apply(m: SzaboMatrix, y: Sequence) -> list:
    y = [as_ratfn(v) for v in y]
    if len(y) != m.dim:
        raise ValueError(f"expected {m.dim} components, got {len(y)}")
    out = []
    for row in m.entries:
        acc = ZERO
        for x, v in zip(row, y):
            if not x.is_zero() and not v.is_zero():
                acc = acc + x * v
        out.append(acc)
    return out


def nilpotency_degree(m: SzaboMatrix, direction: Sequence | dict, point: dict | None = None):
    """Smallest k <= dim with M^k = 0 after fixing the direction, else None.

    ``direction`` gives the components of X (sequence, or a mapping from
    direction variables).  With ``point`` the entries are evaluated to
    rationals first; without it the powers are formed symbolically and
    vanishing is decided exactly.
    """
    if isinstance(direction, dict):
        bindings = {v: as_ratfn(x) for v, x in direction.items()}
    else:
        bindings = {v: as_ratfn(x) for v, x in zip(m.directions, direction)}
    mat = [[x.substitute(bindings) for x in row] for row in m.entries]
    if point is not None:
        mat = [[x.evaluate(point) for x in row] for row in mat]
    power = mat
    for k in range(1, m.dim + 1):
        if _is_zero_matrix(power):
            return k
        power = _matmul(power, mat)
    return None


def matrix_power(mat, k: int):
    out = mat
    for _ in range(k - 1):
        out = _matmul(out, mat)
    return out
