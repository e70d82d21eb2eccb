"""JSON file formats shared by the library and the command line.

* set file:    ``{"moduli": [8, 8, 8], "points": [[0, 0, 0], [2, 6, 6], ...]}``
* matrix file: ``{"denominator": 8, "rows": [[...], ...]}`` for a rational
  matrix taken mod 1, or ``{"modulus": 8, "rows": ...}`` for an integer one
* graph file:  ``{"n": 4, "edges": [[1, 2], [2, 3]]}`` (1-indexed)

Integers only throughout.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .errors import FugledeError
from .group import GroupSpec, PointSet, make_group
from .hadamard import IntMatrixModN, RationalMatrix
from .reduction import SimpleGraph


class FormatError(FugledeError):
    def __init__(self, field: str, message: str):
        super().__init__(f"field {field!r}: {message}")
        self.field = field


def _int(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(field, f"expected an integer, got {value!r}")
    return value


def _int_list(value: Any, field: str) -> list[int]:
    if not isinstance(value, list):
        raise FormatError(field, f"expected a list of integers, got {value!r}")
    return [_int(v, field) for v in value]


def _rows(doc: dict, field: str = "rows") -> list[list[int]]:
    if field not in doc:
        raise FormatError(field, "missing")
    rows = doc[field]
    if not isinstance(rows, list):
        raise FormatError(field, "expected a list of integer lists")
    out = [_int_list(r, field) for r in rows]
    if len({len(r) for r in out}) > 1:
        raise FormatError(field, "rows have different lengths")
    return out


def _load(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise FugledeError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FugledeError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise FugledeError(f"{path}: expected a JSON object")
    return doc


def dump(doc: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


# --- sets -------------------------------------------------------------------


def set_to_doc(S: PointSet) -> dict:
    return {"moduli": list(S.group.moduli), "points": [list(p) for p in S.points]}


def set_from_doc(doc: dict) -> PointSet:
    if "moduli" not in doc:
        raise FormatError("moduli", "missing")
    moduli = _int_list(doc["moduli"], "moduli")
    try:
        g = make_group(moduli)
    except FugledeError as exc:
        raise FormatError("moduli", str(exc)) from None
    if "points" not in doc:
        raise FormatError("points", "missing")
    pts = _rows(doc, "points")
    for p in pts:
        if not g.is_valid(p):
            raise FormatError("points", f"{p} is not an element of Z{moduli}")
    try:
        return PointSet(g, tuple(tuple(p) for p in pts))
    except FugledeError as exc:
        raise FormatError("points", str(exc)) from None


def load_set(path: str | Path) -> PointSet:
    return set_from_doc(_load(path))


_INLINE = re.compile(r"^\{?\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\}?$")


def parse_set(text: str, group: GroupSpec | None = None) -> PointSet:
    """A set file path, or an inline ``{0,1,3}`` list for a cyclic group."""
    text = text.strip()
    if _INLINE.match(text) and not Path(text).exists():
        if group is None:
            raise FugledeError("inline set needs --group")
        if group.dim != 1:
            raise FugledeError("inline sets are only accepted for cyclic groups; use a set file")
        body = text.strip("{} ")
        vals = [int(v) for v in body.split(",")] if body else []
        return PointSet(group, tuple((v % group.moduli[0],) for v in vals))
    S = load_set(text)
    if group is not None and S.group.moduli != group.moduli:
        raise FormatError("moduli", f"set lives in Z{list(S.group.moduli)}, expected Z{list(group.moduli)}")
    return S


def parse_moduli(text: str) -> GroupSpec:
    try:
        return make_group([int(x) for x in text.replace("x", ",").split(",") if x.strip()])
    except ValueError:
        raise FugledeError(f"cannot parse group {text!r}; expected e.g. 8,8,8") from None


# --- matrices -----------------------------------------------------------------


def matrix_to_doc(M: RationalMatrix | IntMatrixModN) -> dict:
    if isinstance(M, RationalMatrix):
        return {"denominator": M.den, "rows": [list(r) for r in M.rows]}
    return {"modulus": M.modulus, "rows": [list(r) for r in M.rows]}


def matrix_from_doc(doc: dict) -> RationalMatrix | IntMatrixModN:
    rows = _rows(doc)
    if "denominator" in doc:
        den = _int(doc["denominator"], "denominator")
        if den < 1:
            raise FormatError("denominator", "must be >= 1")
        return RationalMatrix(den, tuple(tuple(r) for r in rows))
    if "modulus" in doc:
        mod = _int(doc["modulus"], "modulus")
        if mod < 1:
            raise FormatError("modulus", "must be >= 1")
        return IntMatrixModN(mod, tuple(tuple(r) for r in rows))
    raise FormatError("denominator", "missing (neither 'denominator' nor 'modulus' given)")


def load_matrix(path: str | Path) -> RationalMatrix | IntMatrixModN:
    return matrix_from_doc(_load(path))


def as_rational(M: RationalMatrix | IntMatrixModN) -> RationalMatrix:
    if isinstance(M, RationalMatrix):
        return M
    return RationalMatrix(M.modulus, M.rows)


def as_int(M: RationalMatrix | IntMatrixModN, modulus: int | None = None) -> IntMatrixModN:
    if isinstance(M, IntMatrixModN):
        if modulus is not None and modulus != M.modulus:
            return IntMatrixModN(modulus, M.rows, ncols=M.ncols)
        return M
    N = modulus or M.den
    return IntMatrixModN(N, M.rows, ncols=M.shape[1])


# --- graphs -------------------------------------------------------------------


def graph_to_doc(G: SimpleGraph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in sorted(G.edges)]}


def graph_from_doc(doc: dict) -> SimpleGraph:
    if "n" not in doc:
        raise FormatError("n", "missing")
    n = _int(doc["n"], "n")
    edges = _rows(doc, "edges") if "edges" in doc else []
    if any(len(e) != 2 for e in edges):
        raise FormatError("edges", "every edge must be a pair")
    try:
        return SimpleGraph(n, edges)
    except FugledeError as exc:
        raise FormatError("edges", str(exc)) from None


def load_graph(path: str | Path) -> SimpleGraph:
    return graph_from_doc(_load(path))
