"""Coordinate tensor calculus for an affine connection.

Index conventions (0-based in code, 1-based in printed names):

* ``gamma[k][i][j]`` is the Christoffel symbol with ``nabla_{d_i} d_j = gamma[k][i][j] d_k``.
* curvature ``R[i, j, k, l]`` is defined by ``R(d_k, d_l) d_j = sum_i R[i, j, k, l] d_i``.
* Ricci ``Ric[j, k] = sum_i R[i, k, i, j]``, i.e. Ric(X, Y) = tr(Z -> R(Z, X)Y).
* ``nabla_Ric[i, j, k]`` is (nabla_{d_i} Ric)(d_j, d_k).
* ``nabla_R[i, l, m, j, k]`` is the ``l`` component of (nabla_{d_i} R)(d_j, d_k) d_m.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .symexpr import ZERO, RatFn, Var, as_ratfn, base, direction

SHAPES = {
    "torsion": (1, 2),
    "curvature": (1, 3),
    "ricci": (0, 2),
    "cov_ricci": (0, 3),
    "cov_curvature": (1, 4),
}


class TensorField:
    """Dense component array of `RatFn` with an (upper, lower) arity."""

    def __init__(self, name: str, shape: tuple, dim: int, comps: dict):
        self.name = name
        self.shape = shape
        self.dim = dim
        self.comps = comps

    @property
    def rank(self) -> int:
        return self.shape[0] + self.shape[1]

    def __getitem__(self, idx) -> RatFn:
        return self.comps[idx]

    def indices(self):
        return product(range(self.dim), repeat=self.rank)

    def items(self):
        for idx in self.indices():
            yield idx, self.comps[idx]

    def nonzero(self):
        return [(idx, x) for idx, x in self.items() if not x.is_zero()]

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.comps.values())

    def __repr__(self):
        return f"TensorField({self.name}, shape={self.shape}, dim={self.dim}, nonzero={len(self.nonzero())})"


class Connection:
    """Christoffel symbols in a coordinate chart.

    ``coords`` lists the coordinate variables in index order; by default
    the base coordinates u1..un.  Symmetry in the lower indices is not
    assumed.  Derived tensors are cached on the instance, which is
    otherwise immutable.
    """

    def __init__(self, gamma: Sequence, coords: Sequence[Var] | None = None):
        n = len(gamma)
        self.dim = n
        self.gamma = tuple(
            tuple(tuple(as_ratfn(gamma[k][i][j]) for j in range(n)) for i in range(n))
            for k in range(n)
        )
        self.coords = tuple(coords) if coords is not None else tuple(base(i + 1) for i in range(n))
        if len(self.coords) != n:
            raise ValueError("coordinate list does not match the dimension")
        self._cache: dict = {}

    @classmethod
    def zero(cls, n: int, coords=None) -> "Connection":
        return cls([[[ZERO] * n for _ in range(n)] for _ in range(n)], coords)

    @classmethod
    def from_entries(cls, n: int, entries: dict, symmetric: bool = True, coords=None) -> "Connection":
        """Build from 1-based ``{(k, i, j): value}``; missing entries are zero.

        With ``symmetric`` the mirror entry (k, j, i) is filled in as well.
        """
        g = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (k, i, j), v in entries.items():
            if not all(1 <= x <= n for x in (k, i, j)):
                raise IndexError(f"Christoffel index {(k, i, j)} out of range for dim {n}")
            g[k - 1][i - 1][j - 1] = as_ratfn(v)
            if symmetric:
                g[k - 1][j - 1][i - 1] = as_ratfn(v)
        return cls(g, coords)

    def __getitem__(self, kij) -> RatFn:
        k, i, j = kij
        return self.gamma[k][i][j]

    def directions(self) -> tuple:
        return tuple(direction(i + 1) for i in range(self.dim))

    def is_torsion_free(self) -> bool:
        n = self.dim
        return all(
            self.gamma[k][i][j] == self.gamma[k][j][i]
            for k in range(n) for i in range(n) for j in range(i + 1, n)
        )

    def d(self, x: RatFn, i: int) -> RatFn:
        return x.diff(self.coords[i])

    def substitute(self, bindings: dict) -> "Connection":
        n = self.dim
        return Connection(
            [[[self.gamma[k][i][j].substitute(bindings) for j in range(n)] for i in range(n)] for k in range(n)],
            self.coords,
        )

    def variables(self) -> set:
        out = set()
        for plane in self.gamma:
            for row in plane:
                for x in row:
                    out |= x.variables()
        return out

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]


def _sum(terms: Iterable[RatFn]) -> RatFn:
    acc = ZERO
    for t in terms:
        if not t.is_zero():
            acc = acc + t
    return acc


def torsion(c: Connection) -> TensorField:
    n, g = c.dim, c.gamma
    comps = {(k, i, j): g[k][i][j] - g[k][j][i] for k, i, j in product(range(n), repeat=3)}
    return TensorField("T", SHAPES["torsion"], n, comps)


def _curvature(c: Connection) -> TensorField:
    n, g = c.dim, c.gamma
    dg = {}
    for i, l, j in product(range(n), repeat=3):
        for k in range(n):
            dg[k, i, l, j] = c.d(g[i][l][j], k)
    comps = {}
    for i, j, k, l in product(range(n), repeat=4):
        if k == l:
            comps[i, j, k, l] = ZERO
            continue
        if l < k:
            comps[i, j, k, l] = -comps[i, j, l, k]
            continue
        x = dg[k, i, l, j] - dg[l, i, k, j]
        for p in range(n):
            a = g[i][k][p]
            if not a.is_zero():
                b = g[p][l][j]
                if not b.is_zero():
                    x = x + a * b
            a = g[i][l][p]
            if not a.is_zero():
                b = g[p][k][j]
                if not b.is_zero():
                    x = x - a * b
        comps[i, j, k, l] = x
    return TensorField("R", SHAPES["curvature"], n, comps)


def curvature(c: Connection) -> TensorField:
    """R^i_{jkl} with R(d_k, d_l) d_j = R^i_{jkl} d_i."""
    return c.cached("R", lambda: _curvature(c))


def ricci(c: Connection) -> TensorField:
    def build():
        n, R = c.dim, curvature(c)
        comps = {(j, k): _sum(R[i, k, i, j] for i in range(n)) for j, k in product(range(n), repeat=2)}
        return TensorField("Ric", SHAPES["ricci"], n, comps)

    return c.cached("Ric", build)


def cov_deriv_ricci(c: Connection) -> TensorField:
    """(nabla_i Ric)_{jk} = d_i Ric_{jk} - G^p_{ij} Ric_{pk} - G^p_{ik} Ric_{jp}."""

    def build():
        n, g, Ric = c.dim, c.gamma, ricci(c)
        comps = {}
        for i, j, k in product(range(n), repeat=3):
            x = c.d(Ric[j, k], i)
            for p in range(n):
                if not g[p][i][j].is_zero() and not Ric[p, k].is_zero():
                    x = x - g[p][i][j] * Ric[p, k]
                if not g[p][i][k].is_zero() and not Ric[j, p].is_zero():
                    x = x - g[p][i][k] * Ric[j, p]
            comps[i, j, k] = x
        return TensorField("nablaRic", SHAPES["cov_ricci"], n, comps)

    return c.cached("nablaRic", build)


def cov_deriv_curvature(c: Connection) -> TensorField:
    """Standard covariant derivative of the (1,3) curvature tensor.

    Stored as ``[i, l, m, j, k]``: the ``l`` component of (nabla_i R)(d_j, d_k) d_m.
    """

    def build():
        n, g, R = c.dim, c.gamma, curvature(c)
        comps = {}
        for i, l, m, j, k in product(range(n), repeat=5):
            if j == k:
                comps[i, l, m, j, k] = ZERO
                continue
            if k < j:
                comps[i, l, m, j, k] = -comps[i, l, m, k, j]
                continue
            x = c.d(R[l, m, j, k], i)
            for p in range(n):
                t = g[l][i][p]
                if not t.is_zero():
                    r = R[p, m, j, k]
                    if not r.is_zero():
                        x = x + t * r
                t = g[p][i][m]
                if not t.is_zero():
                    r = R[l, p, j, k]
                    if not r.is_zero():
                        x = x - t * r
                t = g[p][i][j]
                if not t.is_zero():
                    r = R[l, m, p, k]
                    if not r.is_zero():
                        x = x - t * r
                t = g[p][i][k]
                if not t.is_zero():
                    r = R[l, m, j, p]
                    if not r.is_zero():
                        x = x - t * r
            comps[i, l, m, j, k] = x
        return TensorField("nablaR", SHAPES["cov_curvature"], n, comps)

    return c.cached("nablaR", build)


def _alpha_monomials(c: Connection):
    al = [RatFn.var(v) for v in c.directions()]
    cache = {}

    def mono(*idx):
        key = tuple(sorted(idx))
        if key not in cache:
            x = al[key[0]]
            for t in key[1:]:
                x = x * al[t]
            cache[key] = x
        return cache[key]

    return mono


def cyclic_parallel_residual(c: Connection) -> RatFn:
    """(nabla_X Ric)(X, X) for X = sum a_i d_i, a cubic form in the direction variables."""

    def build():
        n, D = c.dim, cov_deriv_ricci(c)
        mono = _alpha_monomials(c)
        # group by sorted index triple first: fewer products
        grouped: dict = {}
        for i, j, k in product(range(n), repeat=3):
            x = D[i, j, k]
            if not x.is_zero():
                key = tuple(sorted((i, j, k)))
                grouped[key] = grouped[key] + x if key in grouped else x
        return _sum(x * mono(*key) for key, x in sorted(grouped.items()))

    return c.cached("cyclic", build)


def cyclic_sums(c: Connection) -> dict:
    """(nabla_i Ric)_{jk} + (nabla_j Ric)_{ki} + (nabla_k Ric)_{ij} for i <= j <= k."""
    n, D = c.dim, cov_deriv_ricci(c)
    out = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                out[i, j, k] = D[i, j, k] + D[j, k, i] + D[k, i, j]
    return out


def is_flat(c: Connection) -> bool:
    return curvature(c).is_zero()


def is_cyclic_parallel(c: Connection) -> bool:
    return cyclic_parallel_residual(c).is_zero()
