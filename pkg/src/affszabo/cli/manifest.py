"""Sectioned, line-oriented connection manifests.

Example::

    [meta]
    dim = 2
    [christoffel]
    1,1,1 = u1 + u2
    2,2,2 = u1 + u2 + 1
    [directions]
    X1 = 1, 0, 1, 0
    [point]
    u1 = 1/2

Sections: meta, vars, christoffel, phi, directions, point.  ``#`` starts
a comment.  The canonical names u1..un, u1'..un' and a1..a(2n) are
always available; anything else must be declared under [vars].
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from ..extension import PhiTensor, generic_phi
from ..homogeneous import TypeAParams, TypeBParams, type_a_connection, type_b_connection
from ..symexpr import ExprSyntaxError, RatFn, UnknownIdentifier, VarTable, base, fiber, format_expr, param, parse_expr
from ..symexpr.errors import SymexprError
from ..tensorcalc import Connection

SECTIONS = ("meta", "vars", "christoffel", "phi", "directions", "point")
_HEADER = re.compile(r"\[\s*([A-Za-z]+)\s*\]\s*$")
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9']*$")


class ManifestError(Exception):
    """Any problem with manifest input; carries 1-based line and column."""

    def __init__(self, msg: str, line: int | None = None, col: int | None = None, source: str = ""):
        self.msg, self.line, self.col, self.source = msg, line, col, source
        where = ""
        if line is not None:
            where = f"{source or '<manifest>'}:{line}:{col or 1}: "
        super().__init__(where + msg)


class ManifestSyntaxError(ManifestError):
    pass


class ValidationError(ManifestError):
    pass


@dataclass
class _Line:
    key: str
    value: str
    line: int
    key_col: int
    value_col: int


@dataclass
class Manifest:
    dim: int
    torsion: str = "symmetric"
    family: str | None = None
    params: tuple | None = None
    variables: dict = field(default_factory=dict)     # declared name -> Var
    christoffel: dict = field(default_factory=dict)   # (k, i, j) 1-based -> RatFn
    phi: dict = field(default_factory=dict)           # (i, j) 1-based -> RatFn
    phi_generic: int | None = None
    directions: dict = field(default_factory=dict)    # name -> tuple of RatFn
    point: dict = field(default_factory=dict)         # Var -> Fraction
    source: str = ""

    def table(self) -> VarTable:
        t = VarTable.standard(self.dim)
        for name, v in self.variables.items():
            t.declare(name, v)
        return t

    def connection(self) -> Connection:
        if self.family == "typeA":
            return type_a_connection(TypeAParams(*self.params))
        if self.family == "typeB":
            return type_b_connection(TypeBParams(*self.params))
        return Connection.from_entries(self.dim, self.christoffel, symmetric=self.torsion == "symmetric")

    def phi_tensor(self) -> PhiTensor:
        if self.phi_generic is not None:
            return generic_phi(self.dim, self.phi_generic)
        return PhiTensor.from_entries(self.dim, self.phi)


def _split(text: str, source: str) -> dict:
    sections: dict = {s: [] for s in SECTIONS}
    seen = set()
    current = None
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        lead = len(body) - len(body.lstrip())
        stripped = body.strip()
        if stripped.startswith("["):
            m = _HEADER.match(stripped)
            if not m:
                raise ManifestSyntaxError("malformed section header", n, lead + 1, source)
            name = m.group(1).lower()
            if name not in SECTIONS:
                raise ManifestSyntaxError(f"unknown section [{name}]", n, lead + 1, source)
            if name in seen:
                raise ValidationError(f"section [{name}] appears twice", n, lead + 1, source)
            seen.add(name)
            current = name
            continue
        if current is None:
            raise ManifestSyntaxError("entry before any section header", n, lead + 1, source)
        if "=" not in body:
            raise ManifestSyntaxError("expected 'key = value'", n, lead + 1, source)
        k, v = body.split("=", 1)
        vcol = len(k) + 2 + (len(v) - len(v.lstrip()))
        if not v.strip():
            raise ManifestSyntaxError("missing value", n, len(k) + 2, source)
        sections[current].append(_Line(k.strip(), v.strip(), n, lead + 1, vcol))
    return sections


class _Loader:
    def __init__(self, source: str):
        self.source = source

    def fail(self, cls, msg, ln: _Line, value=False, offset=0):
        col = (ln.value_col if value else ln.key_col) + offset
        raise cls(msg, ln.line, col, self.source)

    def expr(self, ln: _Line, table: VarTable, text: str | None = None, shift: int = 0) -> RatFn:
        try:
            return parse_expr(text if text is not None else ln.value, table)
        except ExprSyntaxError as e:
            cls = ValidationError if isinstance(e, UnknownIdentifier) else ManifestSyntaxError
            self.fail(cls, str(e), ln, True, shift + e.offset)
        except SymexprError as e:
            self.fail(ValidationError, str(e), ln, True, shift)

    def expr_list(self, ln: _Line, table: VarTable) -> list:
        out, pos = [], 0
        for part in ln.value.split(","):
            lead = len(part) - len(part.lstrip())
            out.append(self.expr(ln, table, part.strip(), pos + lead))
            pos += len(part) + 1
        return out

    def indices(self, ln: _Line, count: int, dim: int) -> tuple:
        parts = [p.strip() for p in ln.key.split(",")]
        if len(parts) != count or not all(p.isdigit() for p in parts):
            self.fail(ManifestSyntaxError, f"expected {count} comma-separated indices", ln)
        idx = tuple(int(p) for p in parts)
        if not all(1 <= x <= dim for x in idx):
            self.fail(ValidationError, f"index {ln.key} out of range for dim {dim}", ln)
        return idx


def _meta(ld: _Loader, lines) -> tuple:
    meta, where = {}, {}
    for ln in lines:
        if ln.key in meta:
            ld.fail(ValidationError, f"duplicate key {ln.key!r}", ln)
        if ln.key not in ("dim", "torsion", "family", "params", "phi"):
            ld.fail(ValidationError, f"unknown meta key {ln.key!r}", ln)
        meta[ln.key], where[ln.key] = ln.value, ln
    return meta, where


def parse_manifest(text: str, source: str = "") -> Manifest:
    ld = _Loader(source)
    sec = _split(text, source)
    meta, where = _meta(ld, sec["meta"])

    family = meta.get("family")
    if family is not None and family not in ("typeA", "typeB"):
        ld.fail(ValidationError, "family must be typeA or typeB", where["family"], True)
    if "dim" in meta:
        if not meta["dim"].isdigit() or int(meta["dim"]) < 1:
            ld.fail(ValidationError, "dim must be a positive integer", where["dim"], True)
        dim = int(meta["dim"])
    elif family:
        dim = 2
    else:
        raise ValidationError("missing [meta] dim", None, None, source)
    if family and dim != 2:
        ld.fail(ValidationError, "Type A/B families are two-dimensional", where["dim"], True)
    torsion = meta.get("torsion", "symmetric")
    if torsion not in ("symmetric", "explicit"):
        ld.fail(ValidationError, "torsion must be symmetric or explicit", where["torsion"], True)

    m = Manifest(dim=dim, torsion=torsion, family=family, source=source)
    for ln in sec["vars"]:
        if not _NAME.match(ln.key):
            ld.fail(ManifestSyntaxError, f"bad identifier {ln.key!r}", ln)
        if ln.key in m.variables:
            ld.fail(ValidationError, f"duplicate key {ln.key!r}", ln)
        kind = ln.value.split()
        try:
            if kind == ["parameter"]:
                v = param(ln.key)
            elif len(kind) == 2 and kind[0] in ("base", "fiber") and kind[1].isdigit():
                i = int(kind[1])
                if not 1 <= i <= dim:
                    ld.fail(ValidationError, f"coordinate index {i} out of range for dim {dim}", ln, True)
                v = base(i) if kind[0] == "base" else fiber(i)
            else:
                ld.fail(ManifestSyntaxError, "expected 'base N', 'fiber N' or 'parameter'", ln, True)
            m.table().declare(ln.key, v)
        except ValueError as e:
            if isinstance(e, ManifestError):
                raise
            ld.fail(ValidationError, str(e), ln)
        m.variables[ln.key] = v
    table = m.table()

    if "params" in meta:
        if not family:
            ld.fail(ValidationError, "params given without a family", where["params"])
        vals = ld.expr_list(where["params"], table)
        if len(vals) != 6:
            ld.fail(ValidationError, "family params need six values a, b, c, d, e, f", where["params"], True)
        m.params = tuple(vals)
    elif family:
        raise ValidationError(f"family {family} needs params", None, None, source)

    if "phi" in meta:
        g = meta["phi"]
        mm = re.fullmatch(r"generic(?::(\d+))?", g)
        if not mm:
            ld.fail(ValidationError, "phi must be 'generic' or 'generic:DEGREE'", where["phi"], True)
        m.phi_generic = int(mm.group(1) or 3)

    for ln in sec["christoffel"]:
        if family:
            ld.fail(ValidationError, "christoffel entries conflict with a family", ln)
        k, i, j = ld.indices(ln, 3, dim)
        key = (k, min(i, j), max(i, j)) if torsion == "symmetric" else (k, i, j)
        if key in m.christoffel:
            ld.fail(ValidationError, f"duplicate key {ln.key}", ln)
        m.christoffel[key] = ld.expr(ln, table)

    for ln in sec["phi"]:
        if m.phi_generic is not None:
            ld.fail(ValidationError, "phi entries conflict with 'phi = generic'", ln)
        i, j = ld.indices(ln, 2, dim)
        key = (min(i, j), max(i, j))
        if key in m.phi:
            ld.fail(ValidationError, f"duplicate key {ln.key}", ln)
        x = ld.expr(ln, table)
        if any(v.rank in (1, 2) for v in x.variables()):
            ld.fail(ValidationError, "phi entries may only depend on base coordinates and parameters", ln, True)
        m.phi[key] = x

    for ln in sec["directions"]:
        if not _NAME.match(ln.key):
            ld.fail(ManifestSyntaxError, f"bad direction name {ln.key!r}", ln)
        if ln.key in m.directions:
            ld.fail(ValidationError, f"duplicate key {ln.key!r}", ln)
        comps = ld.expr_list(ln, table)
        if len(comps) not in (dim, 2 * dim):
            ld.fail(ValidationError, f"direction needs {dim} or {2 * dim} components", ln, True)
        m.directions[ln.key] = tuple(comps)

    for ln in sec["point"]:
        if ln.key not in table:
            ld.fail(ValidationError, f"undeclared identifier {ln.key!r}", ln)
        v = table[ln.key]
        if v in m.point:
            ld.fail(ValidationError, f"duplicate key {ln.key!r}", ln)
        x = ld.expr(ln, VarTable())
        m.point[v] = x.constant_value()
    return m


def load_manifest(path) -> Manifest:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ManifestError(f"cannot read {p}: {e}") from e
    return parse_manifest(text, str(p))


def parse_point(spec: str, table: VarTable) -> dict:
    """``u1=1/2,u2=3`` -> {Var: Fraction}."""
    out = {}
    for part in filter(None, (s.strip() for s in spec.split(","))):
        if "=" not in part:
            raise ManifestSyntaxError(f"bad point binding {part!r}")
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in table:
            raise ValidationError(f"undeclared identifier {k!r} in --point")
        try:
            out[table[k]] = parse_expr(v, VarTable()).constant_value()
        except SymexprError as e:
            raise ManifestSyntaxError(f"bad value for {k}: {e}") from e
    return out


def write_manifest(m: Manifest) -> str:
    """Serialize; ``parse_manifest(write_manifest(m))`` is equivalent to ``m``."""
    out = ["[meta]", f"dim = {m.dim}"]
    if m.torsion != "symmetric":
        out.append(f"torsion = {m.torsion}")
    if m.family:
        out.append(f"family = {m.family}")
        out.append("params = " + ", ".join(format_expr(x) for x in m.params))
    if m.phi_generic is not None:
        out.append(f"phi = generic:{m.phi_generic}")
    if m.variables:
        out.append("[vars]")
        for name, v in m.variables.items():
            kind = {0: f"base {v.index}", 1: f"fiber {v.index}"}.get(v.rank, "parameter")
            out.append(f"{name} = {kind}")
    if m.christoffel:
        out.append("[christoffel]")
        for (k, i, j), x in sorted(m.christoffel.items()):
            out.append(f"{k},{i},{j} = {format_expr(x)}")
    if m.phi:
        out.append("[phi]")
        for (i, j), x in sorted(m.phi.items()):
            out.append(f"{i},{j} = {format_expr(x)}")
    if m.directions:
        out.append("[directions]")
        for name, comps in m.directions.items():
            out.append(f"{name} = " + ", ".join(format_expr(x) for x in comps))
    if m.point:
        out.append("[point]")
        for v, x in m.point.items():
            out.append(f"{v} = {x}")
    return "\n".join(out) + "\n"


def same_manifest(a: Manifest, b: Manifest) -> bool:
    """Semantic equality (expressions compared as rational functions)."""

    def eqmap(x, y):
        return x.keys() == y.keys() and all(x[k] == y[k] for k in x)

    def eqdirs(x, y):
        return list(x) == list(y) and all(
            len(x[k]) == len(y[k]) and all(p == q for p, q in zip(x[k], y[k])) for k in x
        )

    return (
        a.dim == b.dim
        and a.torsion == b.torsion
        and a.family == b.family
        and (a.params is None) == (b.params is None)
        and (a.params is None or all(p == q for p, q in zip(a.params, b.params)))
        and a.variables == b.variables
        and eqmap(a.christoffel, b.christoffel)
        and eqmap(a.phi, b.phi)
        and a.phi_generic == b.phi_generic
        and eqdirs(a.directions, b.directions)
        and a.point == b.point
    )
