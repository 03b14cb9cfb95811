"""Canonical JSON files for algebras, modules, cochains and deformations.

Every scalar is written as a string (``"3"``, ``"-1/2"``) so no value passes
through a JSON number.  Serialization is canonical: sparse entries are
sorted, zero entries omitted, and keys appear in a fixed order, so parsing
and re-serializing a canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import GeneralHomTripleSystem, HomTripleSystem
from .cohomology import Cochain
from .deformation import FormalIsomorphism, TruncatedDeformation
from .field import GF, QQ, Field, FieldError
from .representation import Representation

__all__ = [
    "ParseError",
    "dumps",
    "parse_field",
    "field_to_json",
    "parse_algebra",
    "algebra_to_json",
    "parse_representation",
    "representation_to_json",
    "parse_cochain",
    "cochain_to_json",
    "parse_deformation",
    "deformation_to_json",
    "parse_isomorphism",
    "isomorphism_to_json",
    "matrix_to_json",
    "load_json",
]


class ParseError(ValueError):
    """Malformed or invalid input file; ``where`` locates the offending field."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def load_json(text: str | bytes, source: str = "<input>"):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 ({exc})", source) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", source) from None


# -- small validators -------------------------------------------------------

def _require(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    if key not in obj:
        raise ParseError(f"missing field {key!r}", where)
    val = obj[key]
    if kind is int:
        if isinstance(val, bool) or not isinstance(val, int):
            raise ParseError(f"{key!r} must be an integer", where)
    elif not isinstance(val, kind):
        raise ParseError(f"{key!r} has the wrong type", where)
    return val


def _no_extra(obj, allowed, where):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ParseError(f"unknown field(s) {extra}", where)


def _scalar(F: Field, s, where):
    if not isinstance(s, str):
        raise ParseError("scalars must be strings such as \"3\" or \"-1/2\"", where)
    try:
        val = F.scalar(s)
    except FieldError as exc:
        raise ParseError(str(exc), where) from None
    if F.format(val) != s:
        raise ParseError(f"{s!r} is not canonical (write {F.format(val)!r})", where)
    return val


def _matrix(F: Field, rows, shape, where) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != shape[0]:
        raise ParseError(f"expected {shape[0]} rows", where)
    out = F.zeros(shape)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise ParseError(f"row {i} must have {shape[1]} entries", where)
        for j, s in enumerate(row):
            out[i, j] = _scalar(F, s, f"{where}[{i}][{j}]")
    return out


def _index(v, bound, where):
    if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < bound:
        raise ParseError(f"index must be an integer in [0, {bound})", where)
    return v


def matrix_to_json(F: Field, M) -> list:
    return [[F.format(x) for x in row] for row in np.asarray(M)]


def _vector_to_json(F: Field, v) -> list:
    return [F.format(x) for x in np.asarray(v)]


# -- fields -----------------------------------------------------------------

def parse_field(spec, where="field") -> Field:
    try:
        if spec == "Q":
            return QQ
        if isinstance(spec, dict) and set(spec) == {"GF"}:
            p = spec["GF"]
            if isinstance(p, bool) or not isinstance(p, int):
                raise ParseError("GF characteristic must be an integer", where)
            return GF(p)
    except FieldError as exc:
        raise ParseError(str(exc), where) from None
    raise ParseError('expected "Q" or {"GF": p}', where)


def field_to_json(F: Field):
    return "Q" if F.is_rational else {"GF": F.characteristic}


# -- algebras ---------------------------------------------------------------

def parse_algebra(data, where: str = "algebra"):
    """Algebra file -> :class:`HomTripleSystem` (or a general system when ``alpha2`` is present)."""
    if isinstance(data, (str, bytes)):
        data = load_json(data, where)
    _require(data, "field", object, where)
    _no_extra(data, ("field", "dim", "alpha", "alpha2", "bracket", "multiplicative"), where)
    F = parse_field(data["field"], f"{where}.field")
    d = _require(data, "dim", int, where)
    if d < 1:
        raise ParseError("dim must be positive", f"{where}.dim")
    alpha = _matrix(F, _require(data, "alpha", list, where), (d, d), f"{where}.alpha")
    entries = _require(data, "bracket", list, where)
    c = F.zeros((d,) * 4)
    seen = set()
    for n, e in enumerate(entries):
        w = f"{where}.bracket[{n}]"
        if not isinstance(e, dict):
            raise ParseError("expected an object", w)
        _no_extra(e, ("i", "j", "k", "l", "c"), w)
        key = tuple(_index(_require(e, x, int, w), d, f"{w}.{x}") for x in "ijkl")
        if key in seen:
            raise ParseError(f"duplicate entry for (i,j,k,l) = {key}", w)
        seen.add(key)
        c[key] = _scalar(F, _require(e, "c", str, w), f"{w}.c")
    mult = data.get("multiplicative", True)
    if not isinstance(mult, bool):
        raise ParseError("'multiplicative' must be true or false", f"{where}.multiplicative")
    if "alpha2" in data:
        alpha2 = _matrix(F, data["alpha2"], (d, d), f"{where}.alpha2")
        return GeneralHomTripleSystem(F, c, alpha, alpha2)
    return HomTripleSystem(F, c, alpha, multiplicative=mult)


def algebra_to_json(T) -> dict:
    F = T.field
    d = T.dim
    out = {"field": field_to_json(F), "dim": d}
    if isinstance(T, GeneralHomTripleSystem):
        out["alpha"] = matrix_to_json(F, T.alpha1)
        out["alpha2"] = matrix_to_json(F, T.alpha2)
    else:
        out["alpha"] = matrix_to_json(F, T.alpha)
    out["bracket"] = [
        {"i": int(i), "j": int(j), "k": int(k), "l": int(l), "c": F.format(T.bracket[i, j, k, l])}
        for i, j, k, l in np.argwhere(T.bracket != 0)
    ]
    if not isinstance(T, GeneralHomTripleSystem):
        out["multiplicative"] = bool(T.multiplicative)
    return out


# -- representations --------------------------------------------------------

def parse_representation(data, T: HomTripleSystem, where: str = "representation") -> Representation:
    if isinstance(data, (str, bytes)):
        data = load_json(data, where)
    _require(data, "mdim", int, where)
    _no_extra(data, ("mdim", "A", "theta"), where)
    F = T.field
    m = data["mdim"]
    if m < 1:
        raise ParseError("mdim must be positive", f"{where}.mdim")
    A = _matrix(F, _require(data, "A", list, where), (m, m), f"{where}.A")
    theta = F.zeros((T.dim, T.dim, m, m))
    seen = set()
    for n, e in enumerate(_require(data, "theta", list, where)):
        w = f"{where}.theta[{n}]"
        if not isinstance(e, dict):
            raise ParseError("expected an object", w)
        _no_extra(e, ("a", "b", "matrix"), w)
        key = tuple(_index(_require(e, x, int, w), T.dim, f"{w}.{x}") for x in "ab")
        if key in seen:
            raise ParseError(f"duplicate entry for (a,b) = {key}", w)
        seen.add(key)
        theta[key] = _matrix(F, _require(e, "matrix", list, w), (m, m), f"{w}.matrix")
    return Representation(T, theta, A)


def representation_to_json(R: Representation) -> dict:
    F = R.field
    d = R.base.dim
    theta = [
        {"a": a, "b": b, "matrix": matrix_to_json(F, R.theta[a, b])}
        for a in range(d)
        for b in range(d)
        if not F.is_zero(R.theta[a, b])
    ]
    return {"mdim": R.mdim, "A": matrix_to_json(F, R.A), "theta": theta}


# -- cochains ---------------------------------------------------------------

def _cochain_values(data, F: Field, d: int, m: int, where: str) -> np.ndarray:
    n = _require(data, "degree", int, where)
    if n < 1:
        raise ParseError("degree must be >= 1", f"{where}.degree")
    _no_extra(data, ("degree", "values"), where)
    vals = F.zeros((d,) * n + (m,))
    seen = set()
    for k, e in enumerate(_require(data, "values", list, where)):
        w = f"{where}.values[{k}]"
        if not isinstance(e, dict):
            raise ParseError("expected an object", w)
        _no_extra(e, ("idx", "v"), w)
        idx = _require(e, "idx", list, w)
        if len(idx) != n:
            raise ParseError(f"idx must have {n} entries", w)
        idx = tuple(_index(i, d, f"{w}.idx") for i in idx)
        if idx in seen:
            raise ParseError(f"duplicate entry for idx {list(idx)}", w)
        seen.add(idx)
        v = _require(e, "v", list, w)
        if len(v) != m:
            raise ParseError(f"v must have {m} entries", w)
        vals[idx] = [_scalar(F, s, f"{w}.v") for s in v]
    return vals


def parse_cochain(data, R: Representation, where: str = "cochain") -> Cochain:
    if isinstance(data, (str, bytes)):
        data = load_json(data, where)
    vals = _cochain_values(data, R.field, R.base.dim, R.mdim, where)
    return Cochain(R, vals)


def _values_to_json(F: Field, vals: np.ndarray) -> dict:
    n = vals.ndim - 1
    entries = [
        {"idx": [int(i) for i in idx], "v": _vector_to_json(F, vals[tuple(idx)])}
        for idx in np.argwhere(np.any(vals != 0, axis=-1))
    ]
    return {"degree": n, "values": entries}


def cochain_to_json(f: Cochain) -> dict:
    return _values_to_json(f.field, f.values)


# -- deformations and formal isomorphisms -----------------------------------

def parse_deformation(data, T: HomTripleSystem, where: str = "deformation") -> TruncatedDeformation:
    if isinstance(data, (str, bytes)):
        data = load_json(data, where)
    N = _require(data, "order", int, where)
    _no_extra(data, ("order", "jets"), where)
    jets = _require(data, "jets", list, where)
    if len(jets) != N:
        raise ParseError(f"order is {N} but {len(jets)} jets are given", where)
    vals = []
    for i, j in enumerate(jets):
        w = f"{where}.jets[{i}]"
        v = _cochain_values(j, T.field, T.dim, T.dim, w)
        if v.ndim != 4:
            raise ParseError("jets must have degree 3", w)
        vals.append(v)
    return TruncatedDeformation(T, tuple(vals))


def deformation_to_json(D: TruncatedDeformation) -> dict:
    return {"order": D.order, "jets": [cochain_to_json(j) for j in D.jets]}


def parse_isomorphism(data, T: HomTripleSystem, where: str = "isomorphism") -> FormalIsomorphism:
    if isinstance(data, (str, bytes)):
        data = load_json(data, where)
    N = _require(data, "order", int, where)
    _no_extra(data, ("order", "phis"), where)
    phis = _require(data, "phis", list, where)
    if len(phis) != N:
        raise ParseError(f"order is {N} but {len(phis)} matrices are given", where)
    mats = tuple(_matrix(T.field, p, (T.dim, T.dim), f"{where}.phis[{i}]") for i, p in enumerate(phis))
    return FormalIsomorphism(T.field, mats)


def isomorphism_to_json(phi: FormalIsomorphism) -> dict:
    return {"order": phi.order, "phis": [matrix_to_json(phi.field, p) for p in phi.jets]}
