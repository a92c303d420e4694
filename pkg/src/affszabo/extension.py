"""Riemannian and twisted Riemannian extensions on the cotangent bundle.

Coordinates on T*M are (u1..un, u1'..un'); fiber variable ui' sits at
index n+i-1.  An extension metric has the block form

    g = [[B, I], [I, 0]],   B = Phi - 2 sum_k uk' Gamma^k

whose inverse is [[0, I], [I, -B]], so no symbolic matrix inversion is
ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .symexpr import ONE, ZERO, RatFn, as_ratfn, base, fiber, param
from .szabo import SzaboMatrix, char_poly, nilpotency_degree, szabo_matrix
from .tensorcalc import Connection


class DimensionMismatch(ValueError):
    pass


class PhiTensor:
    """Symmetric (0,2) tensor on the base; entries depend on base coordinates only."""

    def __init__(self, comps: Sequence[Sequence]):
        n = len(comps)
        self.dim = n
        self.comps = [[as_ratfn(x) for x in row] for row in comps]
        if any(len(row) != n for row in self.comps):
            raise DimensionMismatch("Phi must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if self.comps[i][j] != self.comps[j][i]:
                    raise ValueError(f"Phi is not symmetric at ({i + 1},{j + 1})")
        for row in self.comps:
            for x in row:
                bad = [v for v in x.variables() if v.rank in (1, 2)]
                if bad:
                    raise ValueError(f"Phi entries may not involve {bad[0]}")

    @classmethod
    def zero(cls, n: int) -> "PhiTensor":
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def from_entries(cls, n: int, entries: dict) -> "PhiTensor":
        """1-based ``{(i, j): value}``; mirrors are filled in."""
        m = [[ZERO] * n for _ in range(n)]
        for (i, j), v in entries.items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexError(f"Phi index {(i, j)} out of range for dim {n}")
            m[i - 1][j - 1] = m[j - 1][i - 1] = as_ratfn(v)
        return cls(m)

    def __getitem__(self, ij) -> RatFn:
        i, j = ij
        return self.comps[i][j]


def _exponents(n: int, degree: int):
    for e in product(range(degree + 1), repeat=n):
        if sum(e) <= degree:
            yield e


def generic_phi(n: int, degree: int = 3) -> PhiTensor:
    """Phi_ij = sum of p{i}{j}m{e} * u^e over all monomials of degree <= ``degree``.

    Degree 3 makes every jet that enters nabla R at a point independent,
    so identities in these coefficients hold for arbitrary smooth Phi.
    """
    us = [RatFn.var(base(i + 1)) for i in range(n)]
    m = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = ZERO
            for e in _exponents(n, degree):
                term = RatFn.var(param(f"p{i + 1}{j + 1}m" + "".join(map(str, e))))
                for u, k in zip(us, e):
                    if k:
                        term = term * u**k
                acc = acc + term
            m[i][j] = m[j][i] = acc
    return PhiTensor(m)


@dataclass
class Metric:
    """Extension metric on 2n coordinates with its closed-form inverse."""

    comps: list
    inverse: list
    coords: tuple
    block: str = "extension"
    base_dim: int = 0

    @property
    def dim(self) -> int:
        return len(self.comps)

    def __getitem__(self, ij) -> RatFn:
        i, j = ij
        return self.comps[i][j]


def _coords(n: int) -> tuple:
    return tuple(base(i + 1) for i in range(n)) + tuple(fiber(i + 1) for i in range(n))


def twisted_extension(c: Connection, phi: PhiTensor) -> Metric:
    n = c.dim
    if phi.dim != n:
        raise DimensionMismatch(f"connection has dim {n}, Phi has dim {phi.dim}")
    fib = [RatFn.var(fiber(k + 1)) for k in range(n)]
    B = [[ZERO] * n for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        acc = phi.comps[i][j]
        for k in range(n):
            gk = c.gamma[k][i][j]
            if not gk.is_zero():
                acc = acc - 2 * fib[k] * gk
        B[i][j] = acc
    N = 2 * n
    g = [[ZERO] * N for _ in range(N)]
    inv = [[ZERO] * N for _ in range(N)]
    for i in range(n):
        g[i][n + i] = g[n + i][i] = ONE
        inv[i][n + i] = inv[n + i][i] = ONE
        for j in range(n):
            g[i][j] = B[i][j]
            inv[n + i][n + j] = -B[i][j]
    tag = "riemannian-extension" if all(x.is_zero() for r in phi.comps for x in r) else "twisted-extension"
    return Metric(g, inv, _coords(n), tag, n)


def riemannian_extension(c: Connection) -> Metric:
    return twisted_extension(c, PhiTensor.zero(c.dim))


def levi_civita(g: Metric) -> Connection:
    """Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)."""
    N, x = g.dim, g.coords
    dg = {(l, i, j): g.comps[i][j].diff(x[l]) for l, i, j in product(range(N), repeat=3)}
    gamma = [[[ZERO] * N for _ in range(N)] for _ in range(N)]
    for i in range(N):
        for j in range(i, N):
            low = []
            for l in range(N):
                low.append(dg[i, j, l] + dg[j, i, l] - dg[l, i, j])
            for k in range(N):
                acc = ZERO
                for l in range(N):
                    h = g.inverse[k][l]
                    if not h.is_zero() and not low[l].is_zero():
                        acc = acc + h * low[l]
                acc = acc * Fraction(1, 2)
                gamma[k][i][j] = gamma[k][j][i] = acc
    return Connection(gamma, x)


def metric_compatibility_residual(g: Metric, c: Connection) -> dict:
    """d_i g_jk - Gamma^l_ij g_lk - Gamma^l_ik g_jl, keyed (i, j, k)."""
    N = g.dim
    out = {}
    for i, j, k in product(range(N), repeat=3):
        acc = g.comps[j][k].diff(g.coords[i])
        for l in range(N):
            a = c.gamma[l][i][j]
            if not a.is_zero() and not g.comps[l][k].is_zero():
                acc = acc - a * g.comps[l][k]
            a = c.gamma[l][i][k]
            if not a.is_zero() and not g.comps[j][l].is_zero():
                acc = acc - a * g.comps[j][l]
        out[i, j, k] = acc
    return out


def pseudo_norm(g: Metric, X: Sequence, point: dict) -> Fraction:
    """g(X, X) evaluated at ``point``."""
    X = [as_ratfn(v) for v in X]
    if len(X) != g.dim:
        raise DimensionMismatch(f"vector needs {g.dim} components")
    acc = ZERO
    for i, j in product(range(g.dim), repeat=2):
        if not X[i].is_zero() and not X[j].is_zero() and not g.comps[i][j].is_zero():
            acc = acc + g.comps[i][j] * X[i] * X[j]
    return acc.evaluate(point)


@dataclass
class DirectionReport:
    direction: tuple
    degree: int | None
    pseudo_norm: Fraction | None = None


@dataclass
class ExtensionReport:
    metric: Metric
    connection: Connection
    szabo: SzaboMatrix
    zero_pattern: list
    directions: list = field(default_factory=list)

    def degrees(self) -> list:
        return [d.degree for d in self.directions]

    def sigma(self) -> list:
        return char_poly(self.szabo)


def extension_szabo_report(
    c: Connection,
    phi: PhiTensor | None,
    directions: Sequence[Sequence],
    point: dict | None = None,
) -> ExtensionReport:
    """Szabó data of the twisted extension, one nilpotency degree per direction.

    Without ``point`` degrees are decided symbolically (identically in
    coordinates and Phi parameters); with a point they are evaluated there.
    Pseudo-norms need every variable bound and are only filled in with a point.
    """
    phi = phi if phi is not None else PhiTensor.zero(c.dim)
    g = twisted_extension(c, phi)
    lc = levi_civita(g)
    S = szabo_matrix(lc)
    rows = []
    for X in directions:
        X = tuple(as_ratfn(v) for v in X)
        if len(X) != g.dim:
            raise DimensionMismatch(f"direction needs {g.dim} components")
        deg = nilpotency_degree(S, X, point)
        norm = pseudo_norm(g, X, point) if point is not None else None
        rows.append(DirectionReport(X, deg, norm))
    return ExtensionReport(g, lc, S, S.zero_pattern(), rows)
