"""Finite rooted non-planar trees.

A tree is stored as its root edge plus a map from each vertex, identified by
its output edge, to the tuple of its input edges. Children are kept sorted by
name; non-planarity is handled through :func:`canonical_form`, which compares
trees by a recursive digest of sorted child shapes.
"""
from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Tree", "TreeError", "TreeSyntaxError", "CanonicalForm",
    "parse_tree", "print_tree", "eta", "corolla", "linear",
    "edge_leq", "enumerate_subtrees", "graft", "graft_with_maps",
    "canonical_form", "canonical_tree", "is_isomorphic", "join_eta",
    "enumerate_trees", "fresh_name", "tree_from_shape",
]

_EDGE_RE = re.compile(r"[A-Za-z0-9_]+")


class TreeError(ValueError):
    pass


class TreeSyntaxError(TreeError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Tree:
    """An immutable finite rooted non-planar tree with named edges."""

    def __init__(self, root: str, vertices: Mapping[str, Iterable[str]] = ()):
        verts = {str(out): tuple(sorted(str(e) for e in ins)) for out, ins in dict(vertices).items()}
        self._root = str(root)
        self._vertices = dict(sorted(verts.items()))
        self._validate()
        self._hash = hash((self._root, tuple(self._vertices.items())))

    def _validate(self) -> None:
        if not _EDGE_RE.fullmatch(self._root):
            raise TreeError(f"invalid edge name {self._root!r}")
        seen = {self._root}
        stack = [self._root]
        while stack:
            e = stack.pop()
            for c in self._vertices.get(e, ()):
                if not _EDGE_RE.fullmatch(c):
                    raise TreeError(f"invalid edge name {c!r}")
                if c in seen:
                    raise TreeError(f"edge {c!r} occurs twice")
                seen.add(c)
                stack.append(c)
        stray = set(self._vertices) - seen
        if stray:
            raise TreeError(f"vertices not connected to the root: {sorted(stray)}")
        self._edges = tuple(sorted(seen))

    # -- basic structure -------------------------------------------------
    @property
    def root(self) -> str:
        return self._root

    @property
    def edges(self) -> tuple[str, ...]:
        return self._edges

    @property
    def vertices(self) -> tuple[str, ...]:
        """Vertices, each named by its output edge."""
        return tuple(self._vertices)

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    def inputs(self, v: str) -> tuple[str, ...]:
        return self._vertices[v]

    def has_vertex(self, e: str) -> bool:
        return e in self._vertices

    def is_leaf(self, e: str) -> bool:
        return e not in self._vertices

    def is_stump(self, v: str) -> bool:
        return self._vertices.get(v) == ()

    @cached_property
    def leaves(self) -> tuple[str, ...]:
        return tuple(e for e in self._edges if e not in self._vertices)

    @cached_property
    def inner_edges(self) -> tuple[str, ...]:
        return tuple(e for e in self._edges if e in self._vertices and e != self._root)

    @cached_property
    def _parent(self) -> dict[str, str | None]:
        parent: dict[str, str | None] = {self._root: None}
        for out, ins in self._vertices.items():
            for e in ins:
                parent[e] = out
        return parent

    def parent(self, e: str) -> str | None:
        """The edge directly below ``e`` (``None`` for the root)."""
        return self._parent[e]

    @cached_property
    def _up(self) -> dict[str, frozenset[str]]:
        up: dict[str, frozenset[str]] = {}
        for e in self._preorder:
            p = self._parent[e]
            up[e] = frozenset({e}) | (up[p] if p is not None else frozenset())
        return up

    @cached_property
    def _preorder(self) -> tuple[str, ...]:
        out, stack = [], [self._root]
        while stack:
            e = stack.pop()
            out.append(e)
            stack.extend(reversed(self._vertices.get(e, ())))
        return tuple(out)

    def above_or_equal(self, e: str) -> frozenset[str]:
        """Edges ``f`` with ``e <= f``: the path from ``e`` down to the root."""
        return self._up[e]

    def leq(self, e: str, f: str) -> bool:
        return f in self._up[self._check(e)] and self._check(f) == f

    def comparable(self, e: str, f: str) -> bool:
        return f in self._up[e] or e in self._up[f]

    def _check(self, e: str) -> str:
        if e not in self._parent:
            raise TreeError(f"unknown edge {e!r}")
        return e

    @cached_property
    def _leaves_over(self) -> dict[str, frozenset[str]]:
        res: dict[str, frozenset[str]] = {}
        for e in reversed(self._preorder):
            if e in self._vertices:
                res[e] = frozenset().union(*(res[c] for c in self._vertices[e]))
            else:
                res[e] = frozenset({e})
        return res

    def leaves_over(self, e: str) -> frozenset[str]:
        """Leaves of the tree lying on top of ``e``."""
        return self._leaves_over[e]

    @cached_property
    def _cuts(self) -> dict[str, tuple[frozenset[str], ...]]:
        res: dict[str, tuple[frozenset[str], ...]] = {}
        for e in reversed(self._preorder):
            cuts = [frozenset({e})]
            if e in self._vertices:
                for combo in itertools.product(*(res[c] for c in self._vertices[e])):
                    cuts.append(frozenset().union(*combo))
            res[e] = tuple(cuts)
        return res

    def cuts(self, e: str) -> tuple[frozenset[str], ...]:
        """Leaf sets of all subtrees with root ``e``, the trivial one first."""
        return self._cuts[e]

    def has_operation(self, leaves: Iterable[str], root: str) -> bool:
        """Whether some subtree has exactly these leaves and this root."""
        leaves = tuple(leaves)
        if root not in self._parent or any(l not in self._parent for l in leaves):
            return False
        ls = frozenset(leaves)
        if len(ls) != len(leaves):
            return False
        for l in leaves:
            if root not in self._up[l]:
                return False
        for a, b in itertools.combinations(leaves, 2):
            if self.comparable(a, b):
                return False
        for l in self._leaves_over[root]:
            if not (self._up[l] & ls):
                return False
        return True

    def subtree(self, root: str, leaves: Iterable[str]) -> "Tree":
        """The subtree with the given root and leaf set."""
        ls = frozenset(leaves)
        if not self.has_operation(sorted(ls), root):
            raise TreeError(f"no subtree with root {root!r} and leaves {sorted(ls)}")
        verts = {}
        stack = [root]
        while stack:
            e = stack.pop()
            if e in ls or e not in self._vertices:
                continue
            verts[e] = self._vertices[e]
            stack.extend(self._vertices[e])
        return Tree(root, verts)

    def upper(self, e: str) -> "Tree":
        """The biggest subtree having ``e`` as root."""
        return self.subtree(e, self._leaves_over[e])

    def vertex_set(self) -> frozenset[str]:
        return frozenset(self._vertices)

    def restrict_vertices(self, root: str, vertices: Iterable[str]) -> "Tree":
        vs = set(vertices)
        return Tree(root, {v: self._vertices[v] for v in vs})

    def rename(self, mapping: Mapping[str, str]) -> "Tree":
        m = lambda e: mapping.get(e, e)
        return Tree(m(self._root), {m(o): [m(i) for i in ins] for o, ins in self._vertices.items()})

    @property
    def is_linear(self) -> bool:
        return all(len(ins) == 1 for ins in self._vertices.values())

    # -- shape -----------------------------------------------------------
    @cached_property
    def _shapes(self) -> dict[str, str]:
        res: dict[str, str] = {}
        for e in reversed(self._preorder):
            if e in self._vertices:
                res[e] = "(" + "".join(sorted(res[c] for c in self._vertices[e])) + ")"
            else:
                res[e] = "|"
        return res

    def shape(self, e: str | None = None) -> str:
        return self._shapes[self._root if e is None else e]

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        if self is other:
            return True
        return self._hash == other._hash and self._root == other._root and self._vertices == other._vertices

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Tree({print_tree(self)!r})"

    def __str__(self) -> str:
        return print_tree(self)

    def to_json(self) -> dict:
        return {
            "root": self._root,
            "vertices": [{"out": o, "in": list(ins)} for o, ins in self._vertices.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Tree":
        return cls(data["root"], {v["out"]: v["in"] for v in data.get("vertices", [])})


# -- grammar ---------------------------------------------------------------

def parse_tree(text: str) -> Tree:
    """Parse ``tree := edge | edge "[" tree ("," tree)* "]" | edge "[]"``."""
    pos = 0
    n = len(text)
    vertices: dict[str, list[str]] = {}
    names: set[str] = set()

    def skip() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def edge() -> str:
        nonlocal pos
        skip()
        m = _EDGE_RE.match(text, pos)
        if not m:
            raise TreeSyntaxError("expected edge name", pos)
        name = m.group()
        if name in names:
            raise TreeSyntaxError(f"duplicate edge name {name!r}", pos)
        names.add(name)
        pos = m.end()
        return name

    def tree() -> str:
        nonlocal pos
        name = edge()
        skip()
        if pos < n and text[pos] == "[":
            pos += 1
            skip()
            children: list[str] = []
            if pos < n and text[pos] == "]":
                pos += 1
            else:
                children.append(tree())
                skip()
                while pos < n and text[pos] == ",":
                    pos += 1
                    children.append(tree())
                    skip()
                if pos >= n or text[pos] != "]":
                    raise TreeSyntaxError("expected ',' or ']'", pos)
                pos += 1
            vertices[name] = children
        return name

    root = tree()
    skip()
    if pos != n:
        raise TreeSyntaxError("unexpected trailing input", pos)
    return Tree(root, vertices)


def print_tree(tree: Tree) -> str:
    def go(e: str) -> str:
        if tree.is_leaf(e):
            return e
        return e + "[" + ",".join(go(c) for c in tree.inputs(e)) + "]"

    return go(tree.root)


# -- standard trees ----------------------------------------------------------

def eta(name: str = "e") -> Tree:
    return Tree(name)


def corolla(n: int, root: str = "r", leaves: Iterable[str] | None = None) -> Tree:
    if leaves is None:
        leaves = [chr(ord("a") + i) for i in range(n)] if n <= 26 else [f"l{i}" for i in range(n)]
    leaves = list(leaves)
    if len(leaves) != n:
        raise TreeError("wrong number of leaf names")
    return Tree(root, {root: leaves})


def linear(n: int) -> Tree:
    """The linear tree ``[n]``: edges ``0..n``, root ``n``."""
    return Tree(str(n), {str(k): [str(k - 1)] for k in range(1, n + 1)})


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    for k in itertools.count(1):
        cand = f"{base}_{k}"
        if cand not in taken:
            return cand
    raise AssertionError


# -- order, subtrees, grafting ----------------------------------------------

def edge_leq(tree: Tree, e: str, f: str) -> bool:
    """``e <= f`` iff the path from ``e`` to the root contains ``f``."""
    tree._check(e)
    tree._check(f)
    return f in tree.above_or_equal(e)


def elementary_external_subtrees(tree: Tree) -> list[tuple[str, frozenset[str]]]:
    """(root, vertex set) of every subtree obtained by erasing one external vertex."""
    verts = tree.vertex_set()
    if not verts:
        return []
    if len(verts) == 1:
        return [(e, frozenset()) for e in tree.edges]
    out = []
    for v in tree.vertices:
        if v != tree.root and all(tree.is_leaf(c) for c in tree.inputs(v)):
            out.append((tree.root, verts - {v}))
    nonleaf = [c for c in tree.inputs(tree.root) if not tree.is_leaf(c)]
    if len(nonleaf) == 1:
        out.append((nonleaf[0], verts - {tree.root}))
    return out


def enumerate_subtrees(tree: Tree) -> list[tuple[Tree, dict[str, str]]]:
    """All subtrees, found by closing under pruning of external vertices.

    Each subtree carries the edge names of ``tree``; the embedding is returned
    explicitly as an edge map.
    """
    start = (tree.root, tree.vertex_set())
    seen = {start}
    queue = [start]
    while queue:
        root, verts = queue.pop()
        current = tree.restrict_vertices(root, verts)
        for sub in elementary_external_subtrees(current):
            if sub not in seen:
                seen.add(sub)
                queue.append(sub)
    result = []
    for root, verts in sorted(seen, key=lambda s: (len(s[1]), s[0], sorted(s[1]))):
        sub = tree.restrict_vertices(root, verts)
        result.append((sub, {e: e for e in sub.edges}))
    return result


def graft_with_maps(s: Tree, leaf: str, r: Tree) -> tuple[Tree, dict[str, str], dict[str, str]]:
    """Graft ``r`` onto the leaf ``leaf`` of ``s``, renaming clashes in ``r``.

    Returns the grafted tree and the edge maps from ``s`` and from ``r``.
    """
    if leaf not in s.edges or not s.is_leaf(leaf):
        raise TreeError(f"{leaf!r} is not a leaf of {print_tree(s)}")
    taken = set(s.edges)
    ren = {r.root: leaf}
    for e in r.edges:
        if e == r.root:
            continue
        new = fresh_name(e, taken)
        taken.add(new)
        ren[e] = new
    r2 = r.rename(ren)
    verts = {v: s.inputs(v) for v in s.vertices}
    verts.update({v: r2.inputs(v) for v in r2.vertices})
    return Tree(s.root, verts), {e: e for e in s.edges}, ren


def graft(s: Tree, leaf: str, r: Tree) -> Tree:
    return graft_with_maps(s, leaf, r)[0]


def join_eta(tree: Tree) -> tuple[Tree, dict[str, str], dict[str, str]]:
    """``T * eta``: a new unary vertex below the root and a new root edge.

    Returns the tree, the embedding of ``tree`` and the embedding of ``eta``
    (whose single edge is called ``"e"``) at the new root.
    """
    new_root = fresh_name(tree.root + "_j", tree.edges)
    verts = {v: tree.inputs(v) for v in tree.vertices}
    verts[new_root] = (tree.root,)
    return Tree(new_root, verts), {e: e for e in tree.edges}, {"e": new_root}


# -- canonical forms -----------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    hash: str
    relabeling: Mapping[str, str]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CanonicalForm) and self.hash == other.hash

    def __hash__(self) -> int:
        return hash(self.hash)


def canonical_form(tree: Tree) -> CanonicalForm:
    digest = hashlib.sha256(tree.shape().encode()).hexdigest()[:24]
    relabeling: dict[str, str] = {}

    def visit(e: str) -> None:
        relabeling[e] = str(len(relabeling))
        if tree.has_vertex(e):
            for c in sorted(tree.inputs(e), key=lambda c: (tree.shape(c), c)):
                visit(c)

    visit(tree.root)
    return CanonicalForm(digest, relabeling)


def canonical_tree(tree: Tree) -> tuple[Tree, dict[str, str]]:
    """The canonical representative of the iso class and an isomorphism onto it."""
    cf = canonical_form(tree)
    return tree.rename(cf.relabeling), dict(cf.relabeling)


def is_isomorphic(s: Tree, t: Tree) -> bool:
    return s.shape() == t.shape()


@lru_cache(maxsize=None)
def tree_from_shape(shape: str) -> Tree:
    """Build the canonically named tree with the given shape string."""
    pos = 0
    verts: dict[str, list[str]] = {}
    counter = itertools.count()

    def go() -> str:
        nonlocal pos
        name = str(next(counter))
        if shape[pos] == "|":
            pos += 1
            return name
        assert shape[pos] == "("
        pos += 1
        kids = []
        while shape[pos] != ")":
            kids.append(go())
        pos += 1
        verts[name] = kids
        return name

    root = go()
    t = Tree(root, verts)
    can, _ = canonical_tree(t)
    return can


def _multisets(pool: list[tuple[int, str]], budget: int, size: int, start: int = 0) -> Iterator[list[str]]:
    # multisets of ``size`` items from pool[start:] whose vertex counts sum to ``budget``
    if size == 0:
        if budget == 0:
            yield []
        return
    for i in range(start, len(pool)):
        k, s = pool[i]
        if k > budget:
            continue
        for rest in _multisets(pool, budget - k, size - 1, i):
            yield [s] + rest


@lru_cache(maxsize=None)
def _shapes(max_vertices: int, max_arity: int) -> dict[int, tuple[str, ...]]:
    by_count: dict[int, list[str]] = {0: ["|"]}
    for n in range(1, max_vertices + 1):
        pool = [(k, s) for k in range(n) for s in by_count[k]]
        found = {
            "(" + "".join(sorted(kids)) + ")"
            for arity in range(max_arity + 1)
            for kids in _multisets(pool, n - 1, arity)
        }
        by_count[n] = sorted(found)
    return {k: tuple(v) for k, v in by_count.items()}


def enumerate_trees(max_vertices: int, max_arity: int = 3, *, min_vertices: int = 0,
                    max_edges: int | None = None) -> list[Tree]:
    """Canonical representatives of all trees within the bounds, in a fixed order."""
    shapes = _shapes(max_vertices, max_arity)
    out = []
    for n in range(min_vertices, max_vertices + 1):
        for s in shapes[n]:
            t = tree_from_shape(s)
            if max_edges is None or len(t.edges) <= max_edges:
                out.append(t)
    return out


def iter_all_trees_edges(max_edges: int) -> Iterator[Tree]:
    """All trees with at most ``max_edges`` edges (arity bounded by the edge count)."""
    for t in enumerate_trees(max_edges - 1, max_edges - 1, max_edges=max_edges):
        yield t
