"""JSON module descriptions and compact context strings.

A description looks like::

    {"ring": {"base": "int", "modulus": "6"},
     "module": {"generators": 1, "relations": [["6"]]},
     "ideals": {"I": ["3"]}}

Integers are decimal strings (plain JSON integers are accepted too) and
polynomials are ascending coefficient arrays.  Every validation error names
the offending field, e.g. ``module.relations[2]``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import LocPrimeError
from .linalg import Matrix
from .module import PresentedModule, present
from .ring import IntegerRing, RingContext, ideal_from_generators, make_context


class DescriptionError(ValueError):
    """A module description that does not parse or validate."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class Description:
    context: RingContext
    module: PresentedModule
    ideals: dict = field(default_factory=dict)  # name -> Ideal, in file order


def _element(ctx: RingContext, value, where: str):
    try:
        return ctx.element(value)
    except LocPrimeError as exc:
        raise DescriptionError(where, str(exc)) from None


def parse_ring(obj, where: str = "ring") -> RingContext:
    if not isinstance(obj, dict):
        raise DescriptionError(where, "expected an object")
    unknown = set(obj) - {"base", "char", "modulus"}
    if unknown:
        raise DescriptionError(f"{where}.{sorted(unknown)[0]}", "unknown field")
    base = obj.get("base")
    if base not in ("int", "poly"):
        raise DescriptionError(f"{where}.base", f'must be "int" or "poly", got {base!r}')
    char = obj.get("char")
    if base == "int" and char is not None:
        raise DescriptionError(f"{where}.char", "integer rings carry no characteristic")
    if base == "poly":
        if not isinstance(char, int) or isinstance(char, bool):
            raise DescriptionError(f"{where}.char", "polynomial rings need an integer prime characteristic")
    try:
        ctx = make_context(base, char)
    except LocPrimeError as exc:
        raise DescriptionError(f"{where}.char", str(exc)) from None
    if obj.get("modulus") is None:
        return ctx
    m = _element(ctx, obj["modulus"], f"{where}.modulus")
    try:
        return make_context(base, char, m)
    except LocPrimeError as exc:
        raise DescriptionError(f"{where}.modulus", str(exc)) from None


def parse_module(ctx: RingContext, obj, where: str = "module") -> PresentedModule:
    if not isinstance(obj, dict):
        raise DescriptionError(where, "expected an object")
    unknown = set(obj) - {"generators", "relations"}
    if unknown:
        raise DescriptionError(f"{where}.{sorted(unknown)[0]}", "unknown field")
    g = obj.get("generators")
    if not isinstance(g, int) or isinstance(g, bool) or g < 0:
        raise DescriptionError(f"{where}.generators", f"must be a non-negative integer, got {g!r}")
    rels = obj.get("relations", [])
    if not isinstance(rels, list):
        raise DescriptionError(f"{where}.relations", "expected a list of rows")
    rows = []
    for i, row in enumerate(rels):
        w = f"{where}.relations[{i}]"
        if not isinstance(row, list):
            raise DescriptionError(w, "expected a list of elements")
        if len(row) != g:
            raise DescriptionError(w, f"row has {len(row)} entries, module has {g} generators")
        rows.append(tuple(_element(ctx, x, f"{w}[{j}]") for j, x in enumerate(row)))
    return present(ctx, g, Matrix.from_rows(ctx.base, rows, g))


def parse_ideals(ctx: RingContext, obj, where: str = "ideals") -> dict:
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise DescriptionError(where, "expected an object mapping names to generator lists")
    out = {}
    for name, gens in obj.items():
        w = f"{where}.{name}"
        if not isinstance(gens, list):
            raise DescriptionError(w, "expected a list of generators")
        elems = [_element(ctx, x, f"{w}[{j}]") for j, x in enumerate(gens)]
        out[name] = ideal_from_generators(ctx, elems)
    return out


def parse_description(obj) -> Description:
    if not isinstance(obj, dict):
        raise DescriptionError("<root>", "expected an object")
    unknown = set(obj) - {"ring", "module", "ideals"}
    if unknown:
        raise DescriptionError(sorted(unknown)[0], "unknown field")
    for key in ("ring", "module"):
        if key not in obj:
            raise DescriptionError(key, "missing")
    ctx = parse_ring(obj["ring"])
    return Description(ctx, parse_module(ctx, obj["module"]), parse_ideals(ctx, obj.get("ideals")))


def load_description(path: str) -> Description:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DescriptionError(path, exc.strerror or str(exc)) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptionError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse_description(obj)


def ring_to_json(ctx: RingContext) -> dict:
    R = ctx.base
    out: dict = {"base": "int" if isinstance(R, IntegerRing) else "poly"}
    if not isinstance(R, IntegerRing):
        out["char"] = R.characteristic
    if ctx.modulus is not None:
        out["modulus"] = R.to_json(ctx.modulus)
    return out


def module_to_json(M: PresentedModule) -> dict:
    R = M.context.base
    return {"generators": M.ngens, "relations": [[R.to_json(x) for x in row] for row in M.relations.rows]}


def describe(M: PresentedModule, ideals: dict | None = None) -> dict:
    R = M.context.base
    out = {"ring": ring_to_json(M.context), "module": module_to_json(M)}
    if ideals:
        out["ideals"] = {k: [R.to_json(I.generator)] for k, I in ideals.items()}
    return out


# -- context strings ----------------------------------------------------

_CTX = re.compile(r"^(?:(Z)|F(\d+)\[x\])(?:/(.+))?$")


def parse_context(text: str) -> RingContext:
    """``Z``, ``Z/12``, ``F2[x]`` or ``F2[x]/[0,0,1]`` (modulus as coefficients)."""
    m = _CTX.match(text.strip())
    if not m:
        raise DescriptionError("context", f"cannot parse {text!r}")
    integer, char, mod = m.groups()
    try:
        if integer:
            return make_context("int", None, None if mod is None else mod)
        p = int(char)
        modulus = None
        if mod is not None:
            try:
                modulus = json.loads(mod)
            except json.JSONDecodeError:
                raise DescriptionError("context", f"modulus {mod!r} is not a coefficient array") from None
        return make_context("poly", p, modulus)
    except LocPrimeError as exc:
        raise DescriptionError("context", f"{text!r}: {exc}") from None


def context_string(ctx: RingContext) -> str:
    R = ctx.base
    if ctx.modulus is None:
        return R.name()
    if isinstance(R, IntegerRing):
        return f"Z/{ctx.modulus}"
    return f"{R.name()}/[{','.join(map(str, ctx.modulus))}]"
