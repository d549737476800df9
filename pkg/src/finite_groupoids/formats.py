"""JSON file formats.

Groupoid:        {"n", "sigma", "tau", "upsilon", "mu"}; mu uses -1 for undefined,
                 upsilon may be null (a bare category).
Algebra:         {"field", "dim", "sc"}; over Q entries are "a/b" strings (or
                 ints), over GF(p) plain residues.
Bimodule:        {"field", "dim", "left", "right"}.
Groupoid object: algebra keys plus "Sigma", "Tau", "Upsilon", "mu", "g2_basis",
                 each a map {"matrix": [[...]]} (rows index the codomain).
Cogroupoid:      algebra keys plus "unit", the maps "S", "T", "U", "m", "i1",
                 "i2" (as {"matrix": ...}) and "Csq": {"dim", "sc", "unit"}.
Action:          {"groupoid": <groupoid>, "m", "phi", "theta"}.
Cayley table:    {"table": [[...]], "unit": e}.

Writers use compact separators and a fixed key order so output is
byte-for-byte reproducible.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from . import linalg as la
from .actions import FiniteAction
from .algebra import AlgebraGroupoidObject, Bimodule, FiniteDimAlgebra
from .cogroupoid import CommAlgebra, Cogroupoid
from .constructions import CayleyTable
from .core import FiniteGroupoid
from .linalg import Field
from .reports import MalformedInput


def dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n"


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}", field="path") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})",
                             field="json") from None


def write_json(path: str | Path, obj: dict) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _require(d: Any, key: str, kind=None):
    if not isinstance(d, dict):
        raise MalformedInput("expected a JSON object", field=key)
    if key not in d:
        raise MalformedInput(f"missing field {key!r}", field=key)
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise MalformedInput(f"field {key!r} has the wrong type", field=key)
    return v


def _int_list(v: Any, key: str) -> list[int]:
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise MalformedInput(f"field {key!r} must be a list of integers", field=key)
    return v


# -- groupoids ----------------------------------------------------------------------

def groupoid_to_json(g: FiniteGroupoid) -> dict:
    return {"n": g.n, "sigma": list(g.sigma), "tau": list(g.tau),
            "upsilon": None if g.upsilon is None else list(g.upsilon),
            "mu": [list(r) for r in g.mu]}


def groupoid_from_json(d: Any) -> FiniteGroupoid:
    n = _require(d, "n", int)
    sigma = _int_list(_require(d, "sigma"), "sigma")
    tau = _int_list(_require(d, "tau"), "tau")
    ups = d.get("upsilon")
    if ups is not None:
        ups = _int_list(ups, "upsilon")
    mu = _require(d, "mu", list)
    for row in mu:
        _int_list(row, "mu")
    if len(sigma) != n:
        raise MalformedInput(f"sigma has {len(sigma)} entries, expected {n}", field="sigma")
    return FiniteGroupoid(n, sigma, tau, ups, mu)


def load_groupoid(path) -> FiniteGroupoid:
    return groupoid_from_json(read_json(path))


def cayley_from_json(d: Any) -> CayleyTable:
    table = _require(d, "table", list)
    for row in table:
        _int_list(row, "table")
    unit = _require(d, "unit", int)
    return CayleyTable(len(table), table, unit)


# -- matrices and algebras ----------------------------------------------------------

def _matrix_out(F: Field, a: np.ndarray) -> list:
    if not isinstance(a, np.ndarray):
        return F.format(a)
    return [_matrix_out(F, x) for x in a]


def _matrix_in(F: Field, v: Any, key: str, shape: tuple[int, ...] | None = None) -> np.ndarray:
    def conv(x):
        if isinstance(x, list):
            return [conv(y) for y in x]
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise MalformedInput(f"field {key!r}: entries must be integers or 'a/b' strings",
                                 field=key)
        return F.parse(x)

    try:
        raw = conv(v)
        arr = np.array(raw, dtype=object)
    except MalformedInput:
        raise
    except ValueError:
        raise MalformedInput(f"field {key!r} is not a rectangular array", field=key) from None
    if shape is not None:
        if any(s == 0 for s in shape) and arr.size == 0:
            return F.zeros(shape)
        if arr.shape != shape:
            raise MalformedInput(f"field {key!r} must have shape {shape}, got {arr.shape}",
                                 field=key)
    return F.array(arr)


def _map_out(F: Field, a: np.ndarray) -> dict:
    return {"matrix": _matrix_out(F, a)}


def _map_in(F: Field, d: Any, key: str, shape: tuple[int, ...] | None = None) -> np.ndarray:
    v = _require(d, key)
    if isinstance(v, dict):
        v = _require(v, "matrix")
    return _matrix_in(F, v, key, shape)


def _field_of(d: Any) -> Field:
    return la.field(_require(d, "field", str))


def algebra_to_json(A: FiniteDimAlgebra) -> dict:
    return {"field": A.F.name, "dim": A.dim, "sc": _matrix_out(A.F, A.sc)}


def algebra_from_json(d: Any) -> FiniteDimAlgebra:
    F = _field_of(d)
    dim = _require(d, "dim", int)
    if dim < 0:
        raise MalformedInput("dim must be nonnegative", field="dim")
    return FiniteDimAlgebra(F, dim, _matrix_in(F, _require(d, "sc"), "sc", (dim, dim, dim)))


def bimodule_to_json(N: Bimodule) -> dict:
    return {"field": N.F.name, "dim": N.dim, "left": _matrix_out(N.F, N.left),
            "right": _matrix_out(N.F, N.right)}


def bimodule_from_json(d: Any, H: FiniteDimAlgebra) -> Bimodule:
    F = _field_of(d)
    if F != H.F:
        raise MalformedInput("bimodule and algebra use different fields", field="field")
    dn = _require(d, "dim", int)
    shape = (H.dim, dn, dn)
    return Bimodule(F, dn, _matrix_in(F, _require(d, "left"), "left", shape),
                    _matrix_in(F, _require(d, "right"), "right", shape))


def groupoid_object_to_json(a: AlgebraGroupoidObject) -> dict:
    F = a.F
    out = algebra_to_json(a.G)
    for key in ("Sigma", "Tau", "Upsilon", "mu", "g2_basis"):
        out[key] = _map_out(F, getattr(a, key))
    return out


def groupoid_object_from_json(d: Any) -> AlgebraGroupoidObject:
    G = algebra_from_json(d)
    F, k = G.F, G.dim
    mats = {key: _map_in(F, d, key, (k, k)) for key in ("Sigma", "Tau", "Upsilon")}
    gb = _map_in(F, d, "g2_basis")
    if gb.size == 0:
        gb = F.zeros((2 * k, 0))
    if gb.ndim != 2:
        raise MalformedInput("g2_basis must be a matrix", field="g2_basis")
    mu = _map_in(F, d, "mu")
    if mu.size == 0:
        mu = F.zeros((k, gb.shape[1]))
    return AlgebraGroupoidObject(G, mats["Sigma"], mats["Tau"], mats["Upsilon"], mu, gb)


def _comm_from(F: Field, d: Any, key_prefix: str = "") -> CommAlgebra:
    dim = _require(d, "dim", int)
    if dim < 0:
        raise MalformedInput("dim must be nonnegative", field=key_prefix + "dim")
    sc = _matrix_in(F, _require(d, "sc"), key_prefix + "sc", (dim, dim, dim))
    unit = _matrix_in(F, _require(d, "unit"), key_prefix + "unit", (dim,))
    return CommAlgebra(F, dim, sc, unit)


def cogroupoid_to_json(c: Cogroupoid) -> dict:
    F = c.F
    out = algebra_to_json(c.C)
    out["unit"] = _matrix_out(F, c.C.unit)
    for key in ("S", "T", "U", "m", "i1", "i2"):
        out[key] = _map_out(F, getattr(c, key))
    out["Csq"] = {"dim": c.Csq.dim, "sc": _matrix_out(F, c.Csq.sc),
                  "unit": _matrix_out(F, c.Csq.unit)}
    return out


def cogroupoid_from_json(d: Any) -> Cogroupoid:
    F = _field_of(d)
    C = _comm_from(F, d)
    Csq = _comm_from(F, _require(d, "Csq", dict), "Csq.")
    k, e = C.dim, Csq.dim
    mats = {key: _map_in(F, d, key, (k, k)) for key in ("S", "T", "U")}
    legs = {key: _map_in(F, d, key, (e, k)) for key in ("m", "i1", "i2")}
    return Cogroupoid(C, mats["S"], mats["T"], mats["U"], Csq, legs["i1"], legs["i2"],
                      legs["m"])


# -- actions ------------------------------------------------------------------

def action_to_json(a: FiniteAction) -> dict:
    return {"groupoid": groupoid_to_json(a.gpd), "m": a.m, "phi": list(a.phi),
            "theta": [list(r) for r in a.theta]}


def action_from_json(d: Any) -> FiniteAction:
    g = groupoid_from_json(_require(d, "groupoid", dict))
    m = _require(d, "m", int)
    phi = _int_list(_require(d, "phi"), "phi")
    theta = _require(d, "theta", list)
    for row in theta:
        _int_list(row, "theta")
    return FiniteAction(g, m, phi, theta)
