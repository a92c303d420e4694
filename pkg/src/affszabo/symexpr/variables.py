"""Variables and the global variable registry.

Every variable belongs to one of four classes, ordered
base < fiber < direction < parameter, and within a class by index
(parameters by name).  Monomials refer to variables through small
integer ids handed out by the registry; the ordering used for printing
and for leading terms is computed from the `Var` keys, never from ids.
"""

from __future__ import annotations

import re
from typing import NamedTuple

KINDS = ("base", "fiber", "direction", "parameter")
_RANK = {k: r for r, k in enumerate(KINDS)}

_RESERVED = re.compile(r"^(u\d+'?|a\d+)$")
_IDENT = re.compile(r"^[A-Za-z][A-Za-z0-9']*$")


class Var(NamedTuple):
    """A variable.  ``rank`` is the class position in `KINDS`.

    Parameters carry ``index == 0`` and are identified by ``name``.
    """

    rank: int
    index: int
    name: str = ""

    @property
    def kind(self) -> str:
        return KINDS[self.rank]

    def __str__(self) -> str:
        if self.rank == 0:
            return f"u{self.index}"
        if self.rank == 1:
            return f"u{self.index}'"
        if self.rank == 2:
            return f"a{self.index}"
        return self.name

    def __repr__(self) -> str:
        return f"Var({self.kind}, {str(self)})"


def base(i: int) -> Var:
    if i < 1:
        raise ValueError("variable index must be positive")
    return Var(0, i)


def fiber(i: int) -> Var:
    if i < 1:
        raise ValueError("variable index must be positive")
    return Var(1, i)


def direction(i: int) -> Var:
    if i < 1:
        raise ValueError("variable index must be positive")
    return Var(2, i)


def param(name: str) -> Var:
    if not _IDENT.match(name) or _RESERVED.match(name):
        raise ValueError(f"invalid parameter name {name!r}")
    return Var(3, 0, name)


def make_var(kind: str, index: int = 0, name: str = "") -> Var:
    if kind == "parameter":
        return param(name)
    return {"base": base, "fiber": fiber, "direction": direction}[kind](index)


# -- registry ---------------------------------------------------------------

_ids: dict[Var, int] = {}
_vars: list[Var] = []
# position of each id in the global variable order; rebuilt on registration
_pos: list[int] = []
_version = [0]


def var_id(v: Var) -> int:
    i = _ids.get(v)
    if i is None:
        i = len(_vars)
        _ids[v] = i
        _vars.append(v)
        order = sorted(range(len(_vars)), key=_vars.__getitem__)
        _pos[:] = [0] * len(_vars)
        for p, j in enumerate(order):
            _pos[j] = p
        _version[0] += 1
    return i


def var_of(i: int) -> Var:
    return _vars[i]


def position(i: int) -> int:
    return _pos[i]


def registry_version() -> int:
    return _version[0]
