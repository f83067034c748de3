"""DOT and JSON renderings of trees, operads and operads of elements.

Output is deterministic: nodes and edges are emitted in sorted order.
"""
from __future__ import annotations

from typing import Any

from .elements import ElementsOperad
from .io import dumps, envelope, operad_to_json, tree_to_json
from .operads import FiniteOperad, sort_key
from .trees import Tree

__all__ = ["ExportError", "tree_to_dot", "operad_to_dot", "elements_to_dot", "elements_to_json", "export"]


class ExportError(ValueError):
    pass


def _quote(s: Any) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def tree_to_dot(tree: Tree, name: str = "tree") -> str:
    """One ellipse per edge and one diamond per vertex; arrows point towards the root."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for e in sorted(tree.edges):
        lines.append(f"  {_quote('e:' + e)} [label={_quote(e)}, shape=ellipse];")
    for v in sorted(tree.vertices):
        lines.append(f"  {_quote('v:' + v)} [label=\"\", shape=diamond];")
        for i in tree.inputs(v):
            lines.append(f"  {_quote('e:' + i)} -> {_quote('v:' + v)};")
        lines.append(f"  {_quote('v:' + v)} -> {_quote('e:' + v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _hyper_dot(name: str, objects: list[str], ops: list[tuple[tuple[str, ...], str, str]]) -> str:
    """Objects as ellipses; an operation of arity other than one gets a box node."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for o in sorted(objects):
        lines.append(f"  {_quote(o)} [shape=ellipse];")
    for k, (ins, out, label) in enumerate(sorted(ops)):
        if len(ins) == 1:
            lines.append(f"  {_quote(ins[0])} -> {_quote(out)} [label={_quote(label)}];")
            continue
        node = f"op{k}"
        lines.append(f"  {node} [label={_quote(label)}, shape=box];")
        for j, i in enumerate(ins):
            lines.append(f"  {_quote(i)} -> {node} [label=\"{j}\"];")
        lines.append(f"  {node} -> {_quote(out)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def operad_to_dot(operad: FiniteOperad, max_arity: int | None = None) -> str:
    ops = []
    for p in operad.iter_operations(operad.arity_bound(max_arity)):
        if operad.is_unit(p):
            continue
        ins, out = operad.profile(p)
        ops.append((tuple(sort_key(c) for c in ins), sort_key(out), operad.op_key(p)))
    return _hyper_dot("operad", [sort_key(c) for c in operad.objects], ops)


def _object_label(obj) -> str:
    return repr(obj)


def elements_to_dot(E: ElementsOperad, max_arity: int = 2) -> str:
    """Objects and non-identity operations up to ``max_arity``."""
    ops = []
    for op in E.iter_operations(max_arity):
        if E.is_unit(op):
            continue
        label = ",".join(f(f.source.root) for f in op.maps)
        ops.append((tuple(_object_label(i) for i in op.inputs), _object_label(op.output), label))
    return _hyper_dot("elements", [_object_label(o) for o in E.objects], ops)


def elements_to_json(E: ElementsOperad, max_arity: int | None = None) -> dict:
    body: dict = {
        "bound": E.bound,
        "objects": [{"tree": tree_to_json(o.tree), "shape": o.tree.shape(), "element": repr(o.element)}
                    for o in E.objects],
    }
    if max_arity is not None:
        body["operations"] = [
            {"inputs": [repr(i) for i in op.inputs], "output": repr(op.output),
             "maps": [m.to_json() for m in op.maps]}
            for op in E.iter_operations(max_arity)
        ]
    return envelope("elements", body)


def export(obj: Any, fmt: str, *, max_arity: int | None = None) -> bytes:
    """Render a tree, operad or operad of elements as ``dot`` or ``json`` bytes."""
    if fmt == "dot":
        if isinstance(obj, Tree):
            text = tree_to_dot(obj)
        elif isinstance(obj, ElementsOperad):
            text = elements_to_dot(obj, max_arity or 2)
        elif isinstance(obj, FiniteOperad):
            text = operad_to_dot(obj, max_arity)
        else:
            raise ExportError(f"cannot render {type(obj).__name__} as dot")
    elif fmt == "json":
        if isinstance(obj, Tree):
            text = dumps(tree_to_json(obj), compact=True)
        elif isinstance(obj, ElementsOperad):
            text = dumps(elements_to_json(obj, max_arity))
        elif isinstance(obj, FiniteOperad):
            text = dumps(operad_to_json(obj, max_arity))
        else:
            raise ExportError(f"cannot render {type(obj).__name__} as json")
    else:
        raise ExportError(f"unknown format {fmt!r}")
    return text.encode("utf-8")
