"""Gluing truncated copies of the invertible-arrow nerve along chosen arrows."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

from ..trees import Tree, canonical_tree, enumerate_trees
from .morphisms import TreeMorphism
from .presheaves import BoundError, DendroidalSet, TruncatedPresheaf

__all__ = [
    "ISO_LEAF_COLOR", "ISO_ROOT_COLOR", "iso_nerve_elements", "iso_nerve", "arrow_image",
    "Glued", "localize_truncated", "canonical_corolla1", "nondegenerate",
]

ISO_LEAF_COLOR = 0
ISO_ROOT_COLOR = 1


def canonical_corolla1() -> Tree:
    """The canonical unary corolla: root ``"0"``, leaf ``"1"``."""
    return Tree("0", {"0": ["1"]})


def _path_from_leaf(tree: Tree) -> list[str]:
    """Edges of a linear tree listed from the leaf to the root."""
    path = []
    e = tree.leaves[0]
    while e is not None:
        path.append(e)
        e = tree.parent(e)
    return path


def iso_nerve_elements(tree: Tree) -> tuple[tuple[int, ...], ...]:
    """Dendrices of the nerve of the groupoid with two isomorphic objects.

    Only linear trees without stumps carry dendrices; a dendrex is a choice of
    object per edge, listed from the leaf to the root.
    """
    if not tree.is_linear or len(tree.leaves) != 1:
        return ()
    n = len(tree.edges)
    return tuple(tuple((k >> i) & 1 for i in range(n)) for k in range(2 ** n))


def arrow_image(coloring: tuple[int, ...]) -> bool:
    """Whether a coloring comes from the arrow ``0 -> 1``: monotone from leaf to root."""
    return all(a <= b for a, b in zip(coloring, coloring[1:]))


def nondegenerate(coloring: tuple[int, ...]) -> bool:
    return all(a != b for a, b in zip(coloring, coloring[1:]))


def _pull_coloring(m: TreeMorphism, coloring: tuple[int, ...]) -> tuple[int, ...]:
    target_path = _path_from_leaf(m.target)
    color = dict(zip(target_path, coloring))
    return tuple(color[m.edge_map[e]] for e in _path_from_leaf(m.source))


def iso_nerve(bound: int) -> TruncatedPresheaf:
    elements = {t.shape(): iso_nerve_elements(t) for t in enumerate_trees(bound, 1)}
    return TruncatedPresheaf(bound, elements, lambda m, c: _pull_coloring(m, c), max_arity=1, name="J")


def _to_corolla1(tree: Tree, coloring: tuple[int, ...]) -> TreeMorphism:
    # the map to the unary corolla classified by a monotone coloring
    c1 = canonical_corolla1()
    m = {e: ("1" if c == ISO_LEAF_COLOR else "0") for e, c in zip(_path_from_leaf(tree), coloring)}
    return TreeMorphism.from_map(tree, c1, m)


@dataclass(frozen=True)
class Glued:
    """A dendrex of an attached copy of the groupoid nerve, outside the attaching arrow."""

    arrow: Hashable
    coloring: tuple[int, ...]


def localize_truncated(X: TruncatedPresheaf, arrows: Iterable[Hashable], bound: int | None = None) -> TruncatedPresheaf:
    """The pushout of ``X`` and one copy of the truncated groupoid nerve per arrow.

    Dendrices are those of ``X`` together with ``Glued(s, c)`` for every
    coloring ``c`` not coming from the arrow ``0 -> 1``. Restrictions that land
    in the image of the arrow are sent into ``X`` through ``s``.
    """
    k = X.bound if bound is None else bound
    if k < 1:
        raise BoundError("the bound must allow the unary corolla")
    if k > X.bound:
        raise BoundError("the bound exceeds that of the presheaf")
    arrows = tuple(arrows)
    c1 = canonical_corolla1()
    known = set(X.dendrices(c1))
    for s in arrows:
        if s not in known:
            raise ValueError(f"{s!r} is not a dendrex at the unary corolla")

    elements = {}
    for t in enumerate_trees(k, X.max_arity):
        glued = tuple(Glued(s, c) for s in arrows for c in iso_nerve_elements(t) if not arrow_image(c))
        elements[t.shape()] = tuple(X.dendrices(t)) + glued

    def action(m: TreeMorphism, x: Hashable) -> Hashable:
        if not isinstance(x, Glued):
            return X.act(m, x)
        c = _pull_coloring(m, x.coloring)
        if arrow_image(c):
            return X.act(_to_corolla1(m.source, c), x.arrow)
        return Glued(x.arrow, c)

    return TruncatedPresheaf(k, elements, action, max_arity=X.max_arity, name=f"{X.name}[loc]")
