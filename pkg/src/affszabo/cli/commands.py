"""Command dispatch: manifest + options -> Report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

from ..extension import extension_szabo_report, levi_civita, twisted_extension
from ..homogeneous import (
    TYPE_A_RESIDUAL_NAMES,
    TypeAParams,
    TypeBAsymmetric,
    TypeBParams,
    killing_residual,
    type_a_connection,
    type_a_parallel_ricci,
    type_b_check,
)
from ..symexpr import format_expr
from ..szabo import char_poly, is_affine_szabo, nilpotency_degree, szabo_matrix
from ..tensorcalc import (
    cov_deriv_ricci,
    curvature,
    cyclic_parallel_residual,
    is_flat,
    ricci,
    torsion,
)
from .manifest import Manifest
from .report import Report

COMMANDS = (
    "curvature", "ricci", "cov-ricci", "torsion", "cyclic-parallel", "szabo", "char-poly",
    "check-szabo", "classify-type-a", "classify-type-b", "killing", "extend", "extend-szabo",
    "nilpotency",
)


class CommandError(ValueError):
    """The command cannot run on this input (missing directions, wrong family, ...)."""


@dataclass
class Options:
    direction: str | None = None
    point: dict = field(default_factory=dict)
    grid: tuple | None = None
    corrected: bool = False


def _need(m: Manifest | None, cmd: str) -> Manifest:
    if m is None:
        raise CommandError(f"{cmd} needs --manifest")
    return m


def _point(m: Manifest, opts: Options) -> dict | None:
    pt = dict(m.point)
    pt.update(opts.point)
    return pt or None


def _directions(m: Manifest, opts: Options, length: int) -> list:
    items = [(k, v) for k, v in m.directions.items() if len(v) == length]
    if opts.direction is not None:
        if opts.direction not in m.directions:
            raise CommandError(f"unknown direction {opts.direction!r}")
        if len(m.directions[opts.direction]) != length:
            raise CommandError(f"direction {opts.direction!r} needs {length} components")
        items = [(opts.direction, m.directions[opts.direction])]
    if not items:
        raise CommandError(f"no direction with {length} components in [directions]")
    return items


def _tensor_listing(t, label) -> dict:
    return {label(idx): format_expr(x) for idx, x in t.nonzero()}


def _one(*idx) -> tuple:
    return tuple(i + 1 for i in idx)


def _curvature(m, opts):
    R = curvature(m.connection())
    return None, {"components": _tensor_listing(R, lambda ix: "R^{}_{}{}{}".format(*_one(*ix))),
                  "flat": R.is_zero()}


def _ricci(m, opts):
    Ric = ricci(m.connection())
    return None, {"components": _tensor_listing(Ric, lambda ix: "Ric_{}{}".format(*_one(*ix)))}


def _cov_ricci(m, opts):
    D = cov_deriv_ricci(m.connection())
    return None, {"components": _tensor_listing(D, lambda ix: "(nabla_{} Ric)_{}{}".format(*_one(*ix)))}


def _torsion(m, opts):
    T = torsion(m.connection())
    return T.is_zero(), {"components": _tensor_listing(T, lambda ix: "T^{}_{}{}".format(*_one(*ix)))}


def _cyclic(m, opts):
    r = cyclic_parallel_residual(m.connection())
    return r.is_zero(), {"residual_names": ["(nabla_X Ric)(X,X)"], "residuals": [format_expr(r)]}


def _szabo(m, opts):
    S = szabo_matrix(m.connection())
    comps = {f"S_{l + 1}{c + 1}": format_expr(S[l, c]) for l in range(S.dim) for c in range(S.dim)
             if not S[l, c].is_zero()}
    return None, {"components": comps, "zero_pattern": S.zero_pattern()}


def _char_poly(m, opts):
    return None, {"sigma": [format_expr(s) for s in char_poly(szabo_matrix(m.connection()))]}


def _check_szabo(m, opts):
    c = m.connection()
    v = is_affine_szabo(c)
    return v.holds, {"sigma": [format_expr(s) for s in v.sigma], "flat": is_flat(c)}


def _grid(opts, k):
    lo, hi = opts.grid
    return product(range(lo, hi + 1), repeat=k)


def _classify_a(m, opts):
    if opts.grid is not None:
        n = szabo = 0
        bad = []
        for t in _grid(opts, 6):
            p = TypeAParams(*t)
            res = type_a_parallel_ricci(p)
            sz = is_affine_szabo(type_a_connection(p)).holds
            n += 1
            szabo += sz
            if sz != res.parallel or not res.agrees:
                bad.append(list(t))
        return not bad, {"tuples": n, "affine_szabo": szabo, "disagreements": bad}
    m = _need(m, "classify-type-a")
    if m.family != "typeA":
        raise CommandError("classify-type-a needs 'family = typeA' with params, or --grid")
    p = TypeAParams(*m.params)
    res = type_a_parallel_ricci(p)
    return res.parallel, {
        "residual_names": list(TYPE_A_RESIDUAL_NAMES),
        "residuals": [format_expr(x) for x in res.residuals.values()],
        "affine_szabo": is_affine_szabo(type_a_connection(p)).holds,
        "closed_form_matches": res.agrees,
    }


def _classify_b(m, opts):
    if opts.grid is not None:
        n = szabo = 0
        bad = []
        for a, b, c, d, e in _grid(opts, 5):
            r = type_b_check(TypeBParams(a, b, c, d, e, -c), corrected=opts.corrected)
            n += 1
            szabo += r["affine_szabo"]
            if not r["agree"]:
                bad.append([a, b, c, d, e])
        return not bad, {"tuples": n, "affine_szabo": szabo, "disagreements": bad,
                         "corrected": opts.corrected}
    m = _need(m, "classify-type-b")
    if m.family != "typeB":
        raise CommandError("classify-type-b needs 'family = typeB' with params, or --grid")
    try:
        r = type_b_check(TypeBParams(*m.params), corrected=opts.corrected)
    except TypeBAsymmetric as e:
        raise CommandError(str(e)) from e
    return all(x.is_zero() for x in r["residuals"]), {
        "residual_names": [f"condition_{k}" for k in range(1, 5)],
        "residuals": [format_expr(x) for x in r["residuals"]],
        "affine_szabo": r["affine_szabo"],
        "agree": r["agree"],
        "corrected": opts.corrected,
    }


def _killing(m, opts):
    c = m.connection()
    name, X = _directions(m, opts, c.dim)[0]
    K = killing_residual(c, X)
    return K.is_zero(), {
        "field": name,
        "components": _tensor_listing(K, lambda ix: "K^{}_{}{}".format(*_one(*ix))),
    }


def _extend(m, opts):
    g = twisted_extension(m.connection(), m.phi_tensor())
    lc = levi_civita(g)
    N = g.dim
    metric = {f"g_{i + 1}{j + 1}": format_expr(g[i, j]) for i in range(N) for j in range(i, N)
              if not g[i, j].is_zero()}
    gam = {f"Gamma^{k + 1}_{i + 1}{j + 1}": format_expr(lc.gamma[k][i][j])
           for k in range(N) for i in range(N) for j in range(i, N) if not lc.gamma[k][i][j].is_zero()}
    return None, {"metric": metric, "components": gam}


def _nil_rows(items, degree_of):
    return [{"direction": name, "degree": degree_of(X)} for name, X in items]


def _extend_szabo(m, opts):
    n = m.dim
    items = _directions(m, opts, 2 * n)
    pt = _point(m, opts)
    rep = extension_szabo_report(m.connection(), m.phi_tensor(), [X for _, X in items], pt)
    rows = [{"direction": name, "degree": d.degree} for (name, _), d in zip(items, rep.directions)]
    data = {"nilpotency": rows, "zero_pattern": rep.zero_pattern}
    if pt is not None:
        data["pseudo_norms"] = [str(d.pseudo_norm) for d in rep.directions]
    return None, data


def _nilpotency(m, opts):
    c = m.connection()
    S = szabo_matrix(c)
    pt = _point(m, opts)
    items = _directions(m, opts, c.dim)
    return None, {"nilpotency": _nil_rows(items, lambda X: nilpotency_degree(S, X, pt))}


_DISPATCH = {
    "curvature": _curvature,
    "ricci": _ricci,
    "cov-ricci": _cov_ricci,
    "torsion": _torsion,
    "cyclic-parallel": _cyclic,
    "szabo": _szabo,
    "char-poly": _char_poly,
    "check-szabo": _check_szabo,
    "classify-type-a": _classify_a,
    "classify-type-b": _classify_b,
    "killing": _killing,
    "extend": _extend,
    "extend-szabo": _extend_szabo,
    "nilpotency": _nilpotency,
}
_MANIFEST_OPTIONAL = {"classify-type-a", "classify-type-b"}


def run_command(m: Manifest | None, cmd: str, options: Options | None = None) -> Report:
    if cmd not in _DISPATCH:
        raise CommandError(f"unknown command {cmd!r}")
    opts = options or Options()
    if cmd not in _MANIFEST_OPTIONAL or opts.grid is None:
        m = _need(m, cmd)
    t0 = time.perf_counter()
    verdict, data = _DISPATCH[cmd](m, opts)
    return Report(cmd, verdict, data, (time.perf_counter() - t0) * 1000)
