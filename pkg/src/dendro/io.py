"""Versioned JSON documents: every payload carries ``"schema": "dendro/1"``."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .categories import FiniteCategory
from .decalage import DecalageData
from .dendroidal.presheaves import NerveBackend, Representable, TruncatedPresheaf
from .operads import CommutativeOperad, FiniteOperad, OperadMorphism, TableOperad, TreeOperad
from .trees import Tree, parse_tree

__all__ = [
    "SCHEMA", "SchemaError", "envelope", "unwrap", "dumps", "load", "tree_to_json", "tree_from_json",
    "operad_to_json", "operad_from_json", "presheaf_from_json", "decalage_from_json",
]

SCHEMA = "dendro/1"


class SchemaError(ValueError):
    pass


def envelope(kind: str, body: Mapping[str, Any]) -> dict:
    return {"schema": SCHEMA, "kind": kind, **body}


def unwrap(data: Mapping[str, Any], kind: str | None = None) -> Mapping[str, Any]:
    """Check the schema tag (and kind, when the document names one)."""
    if data.get("schema") != SCHEMA:
        raise SchemaError(f"expected schema {SCHEMA!r}, got {data.get('schema')!r}")
    if kind is not None and data.get("kind", kind) != kind:
        raise SchemaError(f"expected a {kind} document, got {data.get('kind')!r}")
    return data


def dumps(data: Any, *, compact: bool = False) -> str:
    """Deterministic JSON text."""
    if compact:
        return json.dumps(data, sort_keys=True, separators=(",", ":"), default=repr)
    return json.dumps(data, sort_keys=True, indent=2, default=repr) + "\n"


def load(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# -- trees and operads ------------------------------------------------------------

def tree_to_json(tree: Tree) -> dict:
    return tree.to_json()


def tree_from_json(data: Mapping | str) -> Tree:
    if isinstance(data, str):
        return parse_tree(data)
    return Tree.from_json(data)


def operad_to_json(operad: FiniteOperad, max_arity: int | None = None) -> dict:
    if isinstance(operad, TreeOperad):
        return envelope("operad", {"tree": tree_to_json(operad.tree)})
    if isinstance(operad, CommutativeOperad):
        return envelope("operad", {"commutative": operad.objects[0]})
    table = operad if isinstance(operad, TableOperad) else TableOperad.from_operad(operad, max_arity)
    return envelope("operad", table.to_json())


def operad_from_json(data: Mapping, *, check: bool = True) -> FiniteOperad:
    """A table operad, the free operad on a tree (``"tree"``) or ``Comm`` (``"commutative"``)."""
    unwrap(data, "operad")
    if "tree" in data:
        return TreeOperad(tree_from_json(data["tree"]))
    if "commutative" in data:
        return CommutativeOperad(data["commutative"])
    return TableOperad.from_json(data, check=check)


# -- presheaves --------------------------------------------------------------------

def presheaf_from_json(data: Mapping, bound: int):
    """``{"nerve_of": <operad>}``, ``{"representable": <tree>}``; truncated at ``bound``."""
    unwrap(data, "presheaf")
    max_arity = int(data.get("max_arity", 3))
    if "nerve_of" in data:
        payload = dict(data["nerve_of"])
        payload.setdefault("schema", SCHEMA)
        X = NerveBackend(operad_from_json(payload))
    elif "representable" in data:
        X = Representable(tree_from_json(data["representable"]))
    else:
        raise SchemaError("a presheaf document needs 'nerve_of' or 'representable'")
    return TruncatedPresheaf.from_dendroidal_set(X, bound, max_arity)


# -- décalage ---------------------------------------------------------------------

def decalage_from_json(data: Mapping) -> DecalageData:
    """A décalage on a finite category given by tables.

    Keys: ``category`` (FiniteCategory JSON), ``omega`` (object -> operad),
    ``omega_maps`` (arrow -> ``{"objects": {...}, "ops": {...}}``, op names of
    table operads), ``root``, ``base``, ``shift`` (object -> object),
    ``shift_map`` (arrow -> arrow), ``iota`` and ``gamma`` (object -> arrow).
    Identities may be omitted from ``omega_maps`` and ``shift_map``.
    """
    unwrap(data, "decalage")
    cat = FiniteCategory.from_json(data["category"])
    operads: dict = {}
    for a in cat.objects:
        spec = dict(data["omega"][str(a)])
        spec.setdefault("schema", SCHEMA)
        operads[a] = operad_from_json(spec)
    omega_maps: dict = {}

    def omega_map(f: str) -> OperadMorphism:
        if f not in omega_maps:
            arr = cat.arrows[f]
            src, tgt = operads[arr.source], operads[arr.target]
            entry = data.get("omega_maps", {}).get(f)
            if entry is None and arr.source == arr.target and f == cat.identity(arr.source):
                omega_maps[f] = OperadMorphism(src, tgt, lambda x: x, lambda p: p)
            else:
                if entry is None:
                    raise SchemaError(f"no operad map given for arrow {f!r}")
                objs = {_lookup(src.objects, k): _lookup(tgt.objects, v) for k, v in entry["objects"].items()}
                ops = dict(entry.get("ops", {}))

                def on_ops(p, objs=objs, ops=ops, src=src, tgt=tgt):
                    if src.is_unit(p):
                        return tgt.unit(objs[src.profile(p)[1]])
                    return tgt.op(ops[src.op_key(p)])

                omega_maps[f] = OperadMorphism(src, tgt, objs.__getitem__, on_ops)
        return omega_maps[f]

    shift = {_lookup(cat.objects, k): _lookup(cat.objects, v) for k, v in data["shift"].items()}
    shift_map = dict(data.get("shift_map", {}))

    def shift_arrow(f: str) -> str:
        if f in shift_map:
            return shift_map[f]
        arr = cat.arrows[f]
        if f == cat.identity(arr.source):
            return cat.identity(shift[arr.source])
        raise SchemaError(f"no image of {f!r} under the shift")

    def root(a):
        if not operads[a].objects:
            return None
        return _lookup(operads[a].objects, data["root"][str(a)])

    return DecalageData(
        objects=cat.objects,
        hom=cat.hom,
        compose=cat.compose,
        identity=cat.identity,
        source=lambda f: cat.arrows[f].source,
        target=lambda f: cat.arrows[f].target,
        omega=operads.__getitem__,
        omega_map=omega_map,
        root=root,
        base=_lookup(cat.objects, data["base"]),
        shift=shift.__getitem__,
        shift_map=shift_arrow,
        iota=lambda a: data["iota"][str(a)],
        gamma=lambda a: data["gamma"][str(a)],
        max_arity=int(data.get("max_arity", 3)),
        name=str(data.get("name", "A")),
    )


def _lookup(pool, key):
    """JSON object keys are strings; map them back to the actual objects."""
    for x in pool:
        if x == key or str(x) == str(key):
            return x
    raise SchemaError(f"unknown object {key!r}")
