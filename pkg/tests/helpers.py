"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product

from affszabo.symexpr import ZERO, RatFn, base, direction, param
from affszabo.tensorcalc import Connection

ACCEPTANCE: dict = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    """Log an acceptance verdict for the terminal summary."""
    ACCEPTANCE[criterion] = (ok, detail)


U = [RatFn.var(base(i)) for i in range(1, 5)]
ALPHA = [RatFn.var(direction(i)) for i in range(1, 5)]


def generic_function(name: str, n: int, degree: int = 2) -> RatFn:
    """Polynomial of the given degree with one fresh parameter per monomial."""
    acc = ZERO
    for e in product(range(degree + 1), repeat=n):
        if sum(e) <= degree:
            t = RatFn.var(param(f"{name}m" + "".join(map(str, e))))
            for u, k in zip(U, e):
                if k:
                    t = t * u**k
            acc = acc + t
    return acc


def random_poly(rng: random.Random, n: int, degree: int = 2, max_terms: int = 3) -> RatFn:
    acc = ZERO
    for _ in range(rng.randint(1, max_terms)):
        t = RatFn.const(rng.choice([-3, -2, -1, 1, 2, 3]))
        for _ in range(rng.randint(0, degree)):
            t = t * U[rng.randrange(n)]
        acc = acc + t
    return acc


def random_connection(rng: random.Random, n: int, density: float = 0.4, degree: int = 2) -> Connection:
    """Sparse torsion-free connection with polynomial entries of degree <= ``degree``."""
    entries = {}
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if rng.random() < density:
                    entries[k, i, j] = random_poly(rng, n, degree)
    return Connection.from_entries(n, entries)


def random_point(rng: random.Random, vs, lo=-7, hi=7) -> dict:
    return {v: Fraction(rng.randint(lo, hi), rng.randint(1, 5)) for v in vs}


# -- oracles ------------------------------------------------------------------


def det_leibniz(m) -> Fraction:
    """Determinant by the permutation expansion."""
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        p = Fraction(sign)
        for i in range(n):
            p *= m[i][perm[i]]
        total += p
    return total


def principal_minor_sums(m) -> list:
    """sigma_k as sums of principal k x k minors (numeric matrices)."""
    n = len(m)
    out = []
    for k in range(1, n + 1):
        s = Fraction(0)
        for rows in _subsets(range(n), k):
            s += det_leibniz([[m[i][j] for j in rows] for i in rows])
        out.append(s)
    return out


def _subsets(seq, k):
    seq = list(seq)
    if k == 0:
        yield ()
        return
    for i, x in enumerate(seq):
        for rest in _subsets(seq[i + 1:], k - 1):
            yield (x,) + rest


def central_difference(f, point: dict, v, h=Fraction(1, 10**6)) -> float:
    """Numeric partial derivative of a RatFn at a point."""
    up, dn = dict(point), dict(point)
    up[v] = point[v] + h
    dn[v] = point[v] - h
    return float((f.evaluate(up) - f.evaluate(dn)) / (2 * h))


def vector_covariant(c: Connection, X, Y) -> list:
    """nabla_X Y for component lists, straight from the definition."""
    n = c.dim
    out = []
    for k in range(n):
        acc = ZERO
        for i in range(n):
            acc = acc + X[i] * Y[k].diff(c.coords[i])
            for j in range(n):
                acc = acc + X[i] * Y[j] * c.gamma[k][i][j]
        out.append(acc)
    return out


def curvature_by_definition(c: Connection, k: int, l: int, j: int) -> list:
    """R(d_k, d_l) d_j = nabla_k nabla_l d_j - nabla_l nabla_k d_j (coordinate fields commute)."""
    n = c.dim
    e = [[RatFn.const(int(a == b)) for b in range(n)] for a in range(n)]
    first = vector_covariant(c, e[k], vector_covariant(c, e[l], e[j]))
    second = vector_covariant(c, e[l], vector_covariant(c, e[k], e[j]))
    return [x - y for x, y in zip(first, second)]
