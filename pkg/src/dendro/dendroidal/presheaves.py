"""Dendroidal sets: nerves of finite operads and explicit truncated presheaves."""
from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from typing import Callable, Hashable, Iterable, Mapping

from ..operads import Dendrex, FiniteOperad, TreeOperad, nerve_dendrices
from ..trees import Tree, canonical_tree, enumerate_trees
from .morphisms import TreeMorphism, automorphisms, enumerate_tree_morphisms, normalize_by_automorphism

__all__ = [
    "DendroidalSet", "NerveBackend", "TruncatedPresheaf", "BoundError",
    "representable", "Representable", "is_normal", "normality_witness", "check_functoriality",
    "dendrex_to_morphism", "morphism_to_dendrex",
]


class BoundError(ValueError):
    pass


class DendroidalSet(ABC):
    """A presheaf on trees, queried one tree at a time."""

    #: bound on vertices of trees the presheaf knows about (``None``: unbounded)
    bound: int | None = None

    @abstractmethod
    def dendrices(self, tree: Tree) -> tuple: ...

    @abstractmethod
    def act(self, morphism: TreeMorphism, x: Hashable) -> Hashable:
        """``X(morphism)(x)`` for ``x`` a dendrex at ``morphism.target``."""

    def root_color(self, tree: Tree, x: Hashable) -> Hashable:
        """Restriction of ``x`` to the root edge."""
        eta = Tree(tree.root)
        return self.act(TreeMorphism.from_map(eta, tree, {tree.root: tree.root}), x)

    def max_arity_hint(self) -> int | None:
        return None


class NerveBackend(DendroidalSet):
    """The dendroidal nerve of a finite operad, computed on demand."""

    def __init__(self, operad: FiniteOperad):
        self.operad = operad
        self._cache: dict[Tree, tuple[Dendrex, ...]] = {}

    def dendrices(self, tree: Tree) -> tuple[Dendrex, ...]:
        cached = self._cache.get(tree)
        if cached is None:
            cached = tuple(nerve_dendrices(tree, self.operad))
            self._cache[tree] = cached
        return cached

    def act(self, morphism: TreeMorphism, x: Dendrex) -> Dendrex:
        if x.tree != morphism.target:
            raise ValueError("dendrex does not live on the target of the morphism")
        return x.pull_back(morphism)

    def root_color(self, tree: Tree, x: Dendrex) -> Hashable:
        return x.color[tree.root]

    def evaluate(self, x: Dendrex, leaves, root):
        return x.evaluate(leaves, root)

    def max_arity_hint(self) -> int | None:
        return self.operad.max_arity

    def __repr__(self) -> str:
        return f"NerveBackend({self.operad!r})"


class Representable(DendroidalSet):
    """``Omega[T]``: dendrices at ``S`` are the tree morphisms ``S -> T``.

    This agrees with the nerve of the free operad on ``T`` (see
    :func:`morphism_to_dendrex`) but restriction is plain composition.
    """

    def __init__(self, tree: Tree):
        self.tree = tree
        self.operad = TreeOperad(tree)
        self._cache: dict[Tree, tuple[TreeMorphism, ...]] = {}

    def dendrices(self, tree: Tree) -> tuple[TreeMorphism, ...]:
        cached = self._cache.get(tree)
        if cached is None:
            cached = tuple(enumerate_tree_morphisms(tree, self.tree))
            self._cache[tree] = cached
        return cached

    def act(self, morphism: TreeMorphism, x: TreeMorphism) -> TreeMorphism:
        return morphism.then(x)

    def representatives(self, tree: Tree) -> list[TreeMorphism]:
        """One dendrex per orbit of ``Aut(tree)``."""
        return enumerate_tree_morphisms(tree, self.tree, up_to_automorphism=True)

    def normalize(self, x: TreeMorphism) -> tuple[TreeMorphism, dict[str, str]]:
        """The representative ``x . a`` of the orbit of ``x``, with the automorphism ``a``."""
        return normalize_by_automorphism(x)

    def root_color(self, tree: Tree, x: TreeMorphism) -> str:
        return x(tree.root)

    def evaluate(self, x: TreeMorphism, leaves, root):
        return tuple(x(l) for l in leaves), x(root)

    def max_arity_hint(self) -> int | None:
        return self.operad.max_arity

    def __repr__(self) -> str:
        return f"Representable({self.tree})"


def representable(tree: Tree) -> Representable:
    """``Omega[T]``."""
    return Representable(tree)


def dendrex_to_morphism(x: Dendrex | TreeMorphism) -> TreeMorphism:
    if isinstance(x, TreeMorphism):
        return x
    if not isinstance(x.operad, TreeOperad):
        raise TypeError("only dendrices of a representable are tree morphisms")
    return TreeMorphism.from_map(x.tree, x.operad.tree, x.color)


def morphism_to_dendrex(f: TreeMorphism) -> Dendrex:
    operad = TreeOperad(f.target)
    m = f.edge_map
    ops = tuple((v, (tuple(m[c] for c in f.source.inputs(v)), m[v])) for v in f.source.vertices)
    return Dendrex(f.source, tuple((e, m[e]) for e in f.source.edges), ops, operad)


class TruncatedPresheaf(DendroidalSet):
    """A presheaf given on canonical trees with at most ``bound`` vertices.

    ``elements`` maps shape strings of canonical trees to tuples of elements;
    ``action(m, x)`` computes the action of a morphism between canonical
    trees. Non-canonical trees are transported along their canonical
    isomorphism.
    """

    def __init__(self, bound: int, elements: Mapping[str, Iterable[Hashable]],
                 action: Callable[[TreeMorphism, Hashable], Hashable], *, max_arity: int = 3,
                 name: str = "X"):
        self.bound = bound
        self.max_arity = max_arity
        self.elements = {s: tuple(xs) for s, xs in elements.items()}
        self._action = action
        self.name = name

    def _check(self, tree: Tree) -> None:
        if tree.n_vertices > self.bound:
            raise BoundError(f"{tree} exceeds the truncation bound {self.bound}")

    def dendrices(self, tree: Tree) -> tuple:
        self._check(tree)
        return self.elements.get(tree.shape(), ())

    def act(self, morphism: TreeMorphism, x: Hashable) -> Hashable:
        self._check(morphism.source)
        self._check(morphism.target)
        src, to_src = canonical_tree(morphism.source)
        tgt, to_tgt = canonical_tree(morphism.target)
        if src == morphism.source and tgt == morphism.target:
            return self._action(morphism, x)
        inv = {v: k for k, v in to_src.items()}
        m = TreeMorphism.from_map(src, tgt, {e: to_tgt[morphism.edge_map[inv[e]]] for e in src.edges})
        return self._action(m, x)

    def max_arity_hint(self) -> int | None:
        return self.max_arity

    def trees(self) -> list[Tree]:
        return enumerate_trees(self.bound, self.max_arity)

    @classmethod
    def from_dendroidal_set(cls, X: DendroidalSet, bound: int, max_arity: int = 3) -> "TruncatedPresheaf":
        elements = {t.shape(): tuple(X.dendrices(t)) for t in enumerate_trees(bound, max_arity)}
        return cls(bound, elements, X.act, max_arity=max_arity, name=f"trunc({X!r})")

    @classmethod
    def from_table(cls, bound: int, elements: Mapping[str, Iterable[Hashable]],
                   table: Mapping[tuple[tuple, Hashable], Hashable], *, max_arity: int = 3) -> "TruncatedPresheaf":
        """Action looked up by ``(morphism.mapping, source shape, target shape)`` and element."""

        def action(m: TreeMorphism, x: Hashable) -> Hashable:
            return table[((m.source.shape(), m.target.shape(), m.mapping), x)]

        return cls(bound, elements, action, max_arity=max_arity)

    def tabulate(self) -> dict:
        """Materialize the action on every morphism between bounded trees."""
        table = {}
        trees = self.trees()
        for s, t in itertools.product(trees, trees):
            for m in enumerate_tree_morphisms(s, t):
                for x in self.dendrices(t):
                    table[((s.shape(), t.shape(), m.mapping), x)] = self.act(m, x)
        return table

    def __repr__(self) -> str:
        return f"TruncatedPresheaf({self.name}, bound={self.bound})"


def normality_witness(X: DendroidalSet, bound: int, max_arity: int = 3):
    for tree in enumerate_trees(bound, max_arity):
        autos = [a for a in automorphisms(tree) if any(k != v for k, v in a.mapping)]
        if not autos:
            continue
        for x in X.dendrices(tree):
            for a in autos:
                if X.act(a, x) == x:
                    return tree, x, a
    return None


def is_normal(X: DendroidalSet, bound: int, max_arity: int = 3) -> bool:
    """Whether every automorphism group acts freely on the dendrices."""
    return normality_witness(X, bound, max_arity) is None


def check_functoriality(X: DendroidalSet, trees: Iterable[Tree], limit: int = 5) -> list[str]:
    """``X(g f) = X(f) X(g)`` and ``X(id) = id`` over all composable pairs in ``trees``."""
    trees = list(trees)
    problems = []
    homs = {(s, t): enumerate_tree_morphisms(s, t) for s in trees for t in trees}
    for t in trees:
        ident = TreeMorphism.from_map(t, t, {e: e for e in t.edges})
        for x in X.dendrices(t):
            if X.act(ident, x) != x:
                problems.append(f"identity of {t} acts nontrivially")
    for s, t, u in itertools.product(trees, trees, trees):
        for f in homs[(s, t)]:
            for g in homs[(t, u)]:
                gf = f.then(g)
                for x in X.dendrices(u):
                    if X.act(gf, x) != X.act(f, X.act(g, x)):
                        problems.append(f"functoriality fails at {f} then {g}")
                        if len(problems) >= limit:
                            return problems
    return problems
