"""Simplicial sets seen as dendroidal sets supported on linear trees."""
from __future__ import annotations

from typing import Hashable

from ..operads import Dendrex, FiniteOperad
from ..trees import Tree
from .morphisms import TreeMorphism

__all__ = ["SimplicialError", "linear_order", "last_vertex", "last_vertex_on_arrow", "simplex_vertices"]


class SimplicialError(ValueError):
    pass


def linear_order(tree: Tree) -> list[str]:
    """Edges of a linear tree from the leaf (vertex 0) to the root (vertex n)."""
    if not tree.is_linear or len(tree.leaves) != 1:
        raise SimplicialError(f"{tree} is not a linear tree")
    path, e = [], tree.leaves[0]
    while e is not None:
        path.append(e)
        e = tree.parent(e)
    return path


def simplex_vertices(x: Dendrex) -> list[Hashable]:
    return [x.color[e] for e in linear_order(x.tree)]


def last_vertex(x: Dendrex) -> Hashable:
    """``([n], f) -> f(n)``."""
    return simplex_vertices(x)[-1]


def _arrows(x: Dendrex) -> list:
    # the arrow f(k-1) -> f(k) for k = 1..n
    order = linear_order(x.tree)
    return [x.vertex_op[e] for e in order[1:]]


def last_vertex_on_arrow(theta: TreeMorphism, x: Dendrex, category: FiniteOperad) -> object:
    """Image of ``theta: ([m], x.theta) -> ([n], x)`` under the last vertex functor.

    It is the composite arrow ``f(theta(m)) -> f(n)`` of the simplex ``x``.
    """
    order = linear_order(x.tree)
    start = order.index(theta.edge_map[linear_order(theta.source)[-1]])
    result = category.unit(x.color[order[start]])
    for op in _arrows(x)[start:]:
        result = category.compose(op, 0, result)
    return result
