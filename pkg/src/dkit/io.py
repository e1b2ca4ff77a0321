"""JSON files for algebras, dimodules, descent specs and loop specs.

Scalars are written as "p/q" strings (or coefficient lists over a quotient
field).  Parse errors carry the JSON path and, when the offending key can be
found in the source text, a line number.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import Algebra, Dimodule
from .errors import DkitError, NotSeparable, ParseError
from .linalg import QQ, ExactMatrix, FieldSpec


def _locate(text: str | None, key: str) -> str:
    if not text:
        return ""
    needle = f'"{key}"'
    for n, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return f"line {n}: "
    return ""


def _read(source):
    """Return (object, raw text or None) from a path, a JSON string, or a dict."""
    if isinstance(source, dict):
        return source, None
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            text = Path(source).read_text()
        except OSError as e:
            raise ParseError(f"cannot read {source}: {e.strerror}") from None
    else:
        text = source
    try:
        return json.loads(text), text
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None


class _Ctx:
    def __init__(self, text):
        self.text = text

    def fail(self, key: str, msg: str):
        raise ParseError(f"{_locate(self.text, key)}{key}: {msg}")

    def need(self, obj: dict, key: str, kind=None):
        if not isinstance(obj, dict) or key not in obj:
            raise ParseError(f"missing field {key!r}")
        v = obj[key]
        if kind is not None and not isinstance(v, kind):
            self.fail(key, f"expected {getattr(kind, '__name__', kind)}, got {type(v).__name__}")
        return v

    def triples(self, items, key: str, field: FieldSpec):
        out = []
        if not isinstance(items, list):
            self.fail(key, "expected a list of [i, j, l, value] entries")
        for n, e in enumerate(items):
            if not (isinstance(e, list) and len(e) == 4 and all(isinstance(x, int) for x in e[:3])):
                self.fail(key, f"entry {n} is not [int, int, int, value]")
            try:
                c = field.parse(e[3])
            except ParseError as err:
                self.fail(key, f"entry {n}: {err}")
            out.append((e[0], e[1], e[2], c))
        return out

    def matrix(self, rows, key: str, field: FieldSpec = QQ) -> ExactMatrix:
        if not (isinstance(rows, list) and all(isinstance(r, list) for r in rows)):
            self.fail(key, "expected a list of rows")
        if len({len(r) for r in rows}) > 1:
            self.fail(key, "rows have different lengths")
        try:
            return ExactMatrix.from_rows([[field.parse(x) for x in r] for r in rows],
                                         len(rows[0]) if rows else 0, field)
        except ParseError as err:
            self.fail(key, str(err))


def field_from_json(obj, ctx: _Ctx | None = None) -> FieldSpec:
    F = FieldSpec.from_json(obj)
    if not F.separable:
        raise NotSeparable(f"{_locate(ctx.text if ctx else None, 'field')}modulus is not separable")
    return F


def algebra_from_obj(obj: dict, text: str | None = None) -> Algebra:
    ctx = _Ctx(text)
    F = field_from_json(obj.get("field", "Q"), ctx)
    dim = ctx.need(obj, "dim", int)
    if dim < 0:
        ctx.fail("dim", "must be non-negative")
    entries = ctx.triples(ctx.need(obj, "structure", list), "structure", F)
    kw = {"flavor": obj.get("flavor", "generic"), "name": obj.get("name")}
    if "basis" in obj:
        kw["basis_names"] = obj["basis"]
    try:
        A = Algebra.from_entries(F, dim, entries, **kw)
    except ParseError:
        raise
    except DkitError as e:
        e.args = (f"{_locate(text, 'structure')}{e}",)
        raise
    for key, aut in obj.get("automorphisms", {}).items():
        A.add_automorphism(key, ctx.matrix(ctx.need(aut, "matrix"), "matrix", F), int(aut.get("order", 0)))
    return A


def load_algebra(source) -> Algebra:
    obj, text = _read(source)
    return algebra_from_obj(obj, text)


def algebra_to_obj(A: Algebra) -> dict:
    F = A.field
    obj = {"field": F.to_json(), "dim": A.dim, "basis": list(A.basis_names), "flavor": A.flavor,
           "structure": [[i, j, l, F.format(c)] for i, j, l, c in A.entries()]}
    if A.name:
        obj["name"] = A.name
    if A.automorphisms:
        obj["automorphisms"] = {k: {"matrix": a.matrix.to_json(F), "order": a.order}
                                for k, a in A.automorphisms.items()}
    return obj


def save_algebra(A: Algebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_obj(A), indent=1))


def load_dimodule(source, A: Algebra) -> Dimodule:
    obj, text = _read(source)
    ctx = _Ctx(text)
    dim = ctx.need(obj, "dim", int)
    left = ctx.triples(obj.get("left", []), "left", A.field)
    right = ctx.triples(obj.get("right", []), "right", A.field)
    return Dimodule.from_entries(A, dim, left, right, name=obj.get("name"))


def dimodule_to_obj(M: Dimodule) -> dict:
    F = M.field
    left = [[i, a, b, F.format(c)] for i in range(M.algebra.dim) for a in range(M.dim)
            for b, c in enumerate(M.left[i][a]) if c != 0]
    right = [[a, i, b, F.format(c)] for a in range(M.dim) for i in range(M.algebra.dim)
             for b, c in enumerate(M.right[a][i]) if c != 0]
    return {"dim": M.dim, "name": M.name, "left": left, "right": right}


def load_descent_spec(source):
    """Returns (A, GaloisSetup, Cocycle)."""
    from .algebra import CommutativeExtension
    from .catalog import catalog_get
    from .descent import Cocycle, GaloisSetup
    obj, text = _read(source)
    ctx = _Ctx(text)
    alg = ctx.need(obj, "algebra")
    A = catalog_get(alg) if isinstance(alg, str) else algebra_from_obj(alg, text)
    S_obj = ctx.need(obj, "S", dict)
    mod = ctx.need(S_obj, "modulus", list)
    try:
        F = FieldSpec.quotient(QQ.parse(c) for c in mod)
    except ValueError as e:
        ctx.fail("modulus", str(e))
    if not F.separable:
        raise NotSeparable(f"{_locate(text, 'modulus')}modulus {mod} is not separable")
    S = CommutativeExtension.from_modulus(F.modulus, name=S_obj.get("name", "S"))
    gamma = {k: ctx.matrix(v, "gamma") for k, v in ctx.need(obj, "gamma", dict).items()}
    setup = GaloisSetup(S, gamma, identity=obj.get("identity", "id"))
    z = {k: ctx.matrix(v, "cocycle") for k, v in ctx.need(obj, "cocycle", dict).items()}
    return A, setup, Cocycle(A, setup, z)


def descent_spec_to_obj(A: Algebra, setup, cocycle) -> dict:
    return {"algebra": A.name if A.name else algebra_to_obj(A),
            "S": {"modulus": [str(c) for c in setup.S.modulus], "name": setup.S.name},
            "identity": setup.identity,
            "gamma": {k: g.to_json() for k, g in setup.gamma.items()},
            "cocycle": {k: z.to_json() for k, z in cocycle.z.items()}}


def load_loop_spec(source) -> dict:
    obj, text = _read(source)
    ctx = _Ctx(text)
    out = {"base": ctx.need(obj, "base", str), "automorphism": ctx.need(obj, "automorphism", str),
           "order": ctx.need(obj, "order", int)}
    d = obj.get("deltas", [0, 0])
    if not (isinstance(d, list) and len(d) == 2 and all(isinstance(x, int) for x in d)):
        ctx.fail("deltas", "expected [lo, hi]")
    out["deltas"] = (d[0], d[1])
    out["window"] = obj.get("window", 10)
    if not isinstance(out["window"], int) or out["window"] < 1:
        ctx.fail("window", "must be a positive integer")
    return out


def spec_kind(source) -> str:
    obj, _ = _read(source)
    if "cocycle" in obj:
        return "descent"
    if "base" in obj:
        return "loop"
    raise ParseError("spec is neither a descent spec (has 'cocycle') nor a loop spec (has 'base')")
