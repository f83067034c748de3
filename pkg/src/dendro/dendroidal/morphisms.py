"""Morphisms in the category of trees, elementary faces and degeneracies."""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from ..trees import Tree, TreeError, canonical_tree, elementary_external_subtrees, fresh_name

__all__ = [
    "TreeMorphism", "MorphismError", "enumerate_tree_morphisms", "identity", "isomorphism_to",
    "inner_face", "external_face", "external_faces", "degeneracy", "automorphisms",
    "Factorization", "factorize", "contract", "normalize_by_automorphism",
]


class MorphismError(ValueError):
    pass


@dataclass(frozen=True)
class TreeMorphism:
    """A map of free operads ``source -> target``, given by its edge map.

    It is valid when every vertex of the source lands on an operation of the
    target, i.e. the images of its inputs and output span a subtree.
    """

    source: Tree
    target: Tree
    mapping: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if set(dict(self.mapping)) != set(self.source.edges):
            raise MorphismError("edge map must be defined on every source edge")
        for v in self.source.vertices:
            ins = [self.edge_map[c] for c in self.source.inputs(v)]
            if not self.target.has_operation(ins, self.edge_map[v]):
                raise MorphismError(
                    f"vertex {v} of {self.source} has no image: {ins} -> {self.edge_map[v]} in {self.target}")

    @classmethod
    def from_map(cls, source: Tree, target: Tree, mapping: Mapping[str, str]) -> "TreeMorphism":
        return cls(source, target, tuple(sorted((e, mapping[e]) for e in source.edges)))

    @classmethod
    def _trusted(cls, source: Tree, target: Tree, mapping: Mapping[str, str]) -> "TreeMorphism":
        # skips validation; only for maps produced by the enumerators and composites of valid maps
        obj = object.__new__(cls)
        object.__setattr__(obj, "source", source)
        object.__setattr__(obj, "target", target)
        object.__setattr__(obj, "mapping", tuple([(e, mapping[e]) for e in source.edges]))  # edges are sorted
        return obj

    @cached_property
    def edge_map(self) -> dict[str, str]:
        return dict(self.mapping)

    def __call__(self, e: str) -> str:
        return self.edge_map[e]

    def then(self, other: "TreeMorphism") -> "TreeMorphism":
        """``other . self``."""
        if other.source != self.target:
            raise MorphismError("morphisms are not composable")
        m = other.edge_map
        obj = object.__new__(TreeMorphism)
        object.__setattr__(obj, "source", self.source)
        object.__setattr__(obj, "target", other.target)
        object.__setattr__(obj, "mapping", tuple([(e, m[f]) for e, f in self.mapping]))
        return obj

    def __matmul__(self, other: "TreeMorphism") -> "TreeMorphism":
        return other.then(self)

    @property
    def is_injective(self) -> bool:
        return len(set(self.edge_map.values())) == len(self.mapping)

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and len(self.source.edges) == len(self.target.edges) \
            and self.source.n_vertices == self.target.n_vertices

    @property
    def is_root_preserving(self) -> bool:
        return self.edge_map[self.source.root] == self.target.root

    def inverse(self) -> "TreeMorphism":
        if not self.is_isomorphism:
            raise MorphismError("not an isomorphism")
        return TreeMorphism.from_map(self.target, self.source, {f: e for e, f in self.mapping})

    def with_target(self, target: Tree, via: Mapping[str, str] | None = None) -> "TreeMorphism":
        """Same edge map (optionally renamed by ``via``) into another tree."""
        m = {e: (via[f] if via else f) for e, f in self.mapping}
        return TreeMorphism.from_map(self.source, target, m)

    def to_json(self) -> dict:
        return {"source": str(self.source), "target": str(self.target), "edge_map": dict(self.mapping)}

    def __repr__(self) -> str:
        pairs = ",".join(f"{e}->{f}" for e, f in self.mapping)
        return f"TreeMorphism({self.source} -> {self.target}: {pairs})"


def identity(tree: Tree) -> TreeMorphism:
    return TreeMorphism.from_map(tree, tree, {e: e for e in tree.edges})


def isomorphism_to(tree: Tree, target: Tree, mapping: Mapping[str, str]) -> TreeMorphism:
    m = TreeMorphism.from_map(tree, target, mapping)
    if not m.is_isomorphism:
        raise MorphismError("mapping is not an isomorphism")
    return m


def enumerate_tree_morphisms(source: Tree, target: Tree, root_image: str | None = None,
                             up_to_automorphism: bool = False,
                             allowed: Mapping[str, frozenset[str]] | None = None) -> list[TreeMorphism]:
    """All morphisms ``source -> target``.

    Built top-down: pick the image of the root, then for every vertex a cut of
    the subtree above its image and a bijection from its inputs onto that cut.
    With ``up_to_automorphism`` only one map per orbit of ``Aut(source)`` is
    kept: the one sending isomorphic siblings to increasing edges.
    ``allowed`` optionally restricts the image of each source edge.
    """
    vertices = [v for v in _preorder(source) if source.has_vertex(v)]
    out: list[TreeMorphism] = []
    # input positions grouped by the shape of the subtree above them
    groups = {v: _sibling_groups(source, v) for v in vertices} if up_to_automorphism else None

    def go(k: int, m: dict[str, str]) -> None:
        if k == len(vertices):
            out.append(TreeMorphism._trusted(source, target, m))
            return
        v = vertices[k]
        ins = source.inputs(v)
        for cut in target.cuts(m[v]):
            if len(cut) != len(ins):
                continue
            if allowed is not None:
                images = _allowed_bijections(ins, sorted(cut), allowed)
                if groups:
                    images = (im for im in images if _increasing_on(im, groups[v]))
            elif groups:
                images = _increasing_assignments(sorted(cut), groups[v], len(ins))
            else:
                images = itertools.permutations(sorted(cut))
            for image in images:
                for e, f in zip(ins, image):
                    m[e] = f
                go(k + 1, m)
        for e in ins:
            m.pop(e, None)

    roots = target.edges if root_image is None else (root_image,)
    if allowed is not None:
        roots = [r for r in roots if r in allowed[source.root]]
    for r in roots:
        go(0, {source.root: r})
    return out


def _sibling_groups(tree: Tree, v: str) -> tuple[tuple[int, ...], ...]:
    by_shape: dict[str, list[int]] = {}
    for i, c in enumerate(tree.inputs(v)):
        by_shape.setdefault(tree.shape(c), []).append(i)
    return tuple(tuple(g) for g in by_shape.values())


def _increasing_assignments(cut: list[str], groups: tuple[tuple[int, ...], ...],
                            n: int) -> Iterator[tuple[str, ...]]:
    """Bijections positions -> cut that are increasing on every group."""
    image: list[str | None] = [None] * n

    def go(g: int, free: list[str]) -> Iterator[tuple[str, ...]]:
        if g == len(groups):
            yield tuple(image)  # type: ignore[arg-type]
            return
        group = groups[g]
        for chosen in itertools.combinations(free, len(group)):
            for i, x in zip(group, chosen):
                image[i] = x
            rest = [x for x in free if x not in chosen]
            yield from go(g + 1, rest)

    yield from go(0, cut)


def _allowed_bijections(ins: Sequence[str], cut: list[str],
                        allowed: Mapping[str, frozenset[str]]) -> Iterator[tuple[str, ...]]:
    image: list[str] = []
    used: set[str] = set()

    def go(k: int) -> Iterator[tuple[str, ...]]:
        if k == len(ins):
            yield tuple(image)
            return
        for x in cut:
            if x in used or x not in allowed[ins[k]]:
                continue
            used.add(x)
            image.append(x)
            yield from go(k + 1)
            image.pop()
            used.discard(x)

    yield from go(0)


def _increasing_on(image: tuple[str, ...], groups: tuple[tuple[int, ...], ...]) -> bool:
    return all(image[g[k]] < image[g[k + 1]] for g in groups for k in range(len(g) - 1))


def normalize_by_automorphism(x: TreeMorphism) -> tuple[TreeMorphism, dict[str, str]]:
    """The representative ``x . a`` of the orbit of ``x`` under ``Aut(source)``, and ``a``.

    The representative sends isomorphic siblings to increasing edges, matching
    ``enumerate_tree_morphisms(..., up_to_automorphism=True)``.
    """
    S, m = x.source, x.edge_map
    if _is_rigid(S):
        return x, {e: e for e in S.edges}
    a = {S.root: S.root}
    stack = [S.root]
    while stack:
        v = stack.pop()
        w = a[v]
        if not S.has_vertex(v):
            continue
        groups: dict[str, list[str]] = {}
        for c in S.inputs(v):
            groups.setdefault(S.shape(c), []).append(c)
        images: dict[str, list[str]] = {}
        for c in S.inputs(w):
            images.setdefault(S.shape(c), []).append(c)
        for shape, mine in groups.items():
            for c, d in zip(sorted(mine), sorted(images[shape], key=lambda d: m[d])):
                a[c] = d
                stack.append(c)
    y = TreeMorphism._trusted(S, x.target, {e: m[a[e]] for e in S.edges})
    return y, a


@functools.lru_cache(maxsize=4096)
def _is_rigid(tree: Tree) -> bool:
    # no vertex has two isomorphic input subtrees, so Aut(tree) is trivial
    for v in tree.vertices:
        shapes = [tree.shape(c) for c in tree.inputs(v)]
        if len(set(shapes)) != len(shapes):
            return False
    return True


def automorphisms(tree: Tree) -> list[TreeMorphism]:
    return [m for m in enumerate_tree_morphisms(tree, tree) if m.is_isomorphism]


def _preorder(tree: Tree) -> list[str]:
    out, stack = [], [tree.root]
    while stack:
        e = stack.pop()
        out.append(e)
        if tree.has_vertex(e):
            stack.extend(reversed(tree.inputs(e)))
    return out


# -- elementary morphisms ------------------------------------------------------

def contract(tree: Tree, e: str) -> Tree:
    """The tree with the inner edge ``e`` contracted."""
    if e not in tree.inner_edges:
        raise MorphismError(f"{e!r} is not an inner edge of {tree}")
    p = tree.parent(e)
    verts = {v: list(tree.inputs(v)) for v in tree.vertices if v != e}
    verts[p] = [c for c in tree.inputs(p) if c != e] + list(tree.inputs(e))
    return Tree(tree.root, verts)


def inner_face(tree: Tree, e: str, *, validate: bool = True) -> TreeMorphism:
    face = contract(tree, e)
    make = TreeMorphism.from_map if validate else TreeMorphism._trusted
    return make(face, tree, {x: x for x in face.edges})


def external_faces(tree: Tree) -> list[TreeMorphism]:
    """Inclusions of all subtrees with exactly one vertex fewer."""
    out = []
    for root, verts in elementary_external_subtrees(tree):
        face = tree.restrict_vertices(root, verts)
        out.append(TreeMorphism.from_map(face, tree, {x: x for x in face.edges}))
    return out


def external_face(tree: Tree, vertex: str, keep: str | None = None, *, validate: bool = True) -> TreeMorphism:
    """The face erasing the external ``vertex``.

    For a corolla every edge spans a face; ``keep`` says which one.
    """
    if not tree.has_vertex(vertex):
        raise MorphismError(f"{vertex!r} is not a vertex of {tree}")
    if tree.n_vertices == 1:
        if keep is None or keep not in tree.edges:
            raise MorphismError("a corolla needs the kept edge to be specified")
        face = Tree(keep)
    elif vertex == tree.root:
        nonleaf = [c for c in tree.inputs(vertex) if not tree.is_leaf(c)]
        if len(nonleaf) != 1:
            raise MorphismError(f"root vertex of {tree} is not external")
        face = tree.restrict_vertices(nonleaf[0], set(tree.vertices) - {vertex})
    else:
        if any(not tree.is_leaf(c) for c in tree.inputs(vertex)):
            raise MorphismError(f"vertex {vertex!r} of {tree} is not external")
        face = tree.restrict_vertices(tree.root, set(tree.vertices) - {vertex})
    make = TreeMorphism.from_map if validate else TreeMorphism._trusted
    return make(face, tree, {x: x for x in face.edges})


def degeneracy(tree: Tree, e: str, new_edge: str | None = None, *, validate: bool = True) -> TreeMorphism:
    """``sigma_e``: insert a unary vertex in the middle of ``e`` and collapse it."""
    if e not in tree.edges:
        raise TreeError(f"unknown edge {e!r}")
    new = new_edge or fresh_name(e + "_d", tree.edges)
    verts = {v: list(tree.inputs(v)) for v in tree.vertices}
    if tree.has_vertex(e):
        verts[new] = verts.pop(e)
    verts[e] = [new]
    source = Tree(tree.root, verts)
    m = {x: x for x in tree.edges}
    m[new] = e
    make = TreeMorphism.from_map if validate else TreeMorphism._trusted
    return make(source, tree, m)


# -- factorization ---------------------------------------------------------------

@dataclass
class Factorization:
    """Elementary morphisms in the order they are applied, with their kinds."""

    steps: list[tuple[str, TreeMorphism]] = field(default_factory=list)

    def compose(self) -> TreeMorphism:
        result = None
        for _, m in self.steps:
            result = m if result is None else result.then(m)
        if result is None:
            raise MorphismError("empty factorization")
        return result

    @property
    def kinds(self) -> list[str]:
        return [k for k, _ in self.steps]


def factorize(f: TreeMorphism) -> Factorization:
    """Write ``f`` as degeneracies, then an isomorphism, then inner faces, then external faces.

    The elementary maps are built without re-validation; they are valid by
    construction and ``Factorization.compose`` recovers ``f``.
    """
    steps: list[tuple[str, TreeMorphism]] = []
    current = f.source
    m = dict(f.edge_map)

    # 1. collapse degenerate unary vertices one at a time
    while True:
        deg = next((v for v in current.vertices
                    if len(current.inputs(v)) == 1 and m[current.inputs(v)[0]] == m[v]), None)
        if deg is None:
            break
        upper = current.inputs(deg)[0]
        verts = {v: list(current.inputs(v)) for v in current.vertices if v != deg}
        if current.has_vertex(upper):
            verts[deg] = verts.pop(upper)
        collapsed = Tree(current.root, verts)
        sigma = degeneracy(collapsed, deg, new_edge=upper, validate=False)
        # the source of sigma equals ``current`` by construction
        if sigma.source != current:
            raise AssertionError("degeneracy reconstruction mismatch")
        steps.append(("degeneracy", sigma))
        m.pop(upper)
        current = collapsed

    # 2. the image subtree and the contracted tree it is isomorphic to
    target = f.target
    image_root = m[current.root]
    image_leaves = [m[l] for l in current.leaves]
    spanned = target.subtree(image_root, image_leaves)
    image = set(m.values())
    missing = [e for e in spanned.inner_edges if e not in image]
    contracted = spanned
    for e in missing:
        contracted = contract(contracted, e)
    iso = TreeMorphism.from_map(current, contracted, m)
    if not iso.is_isomorphism:
        raise AssertionError("injective part is not an isomorphism onto its contraction")
    steps.append(("isomorphism", iso))

    # 3. inner faces re-inserting the contracted edges (reverse order)
    stage = contracted
    for e in reversed(missing):
        bigger = _uncontract(spanned, stage, e)
        steps.append(("inner_face", inner_face(bigger, e, validate=False)))
        stage = bigger
    if stage != spanned:
        raise AssertionError("inner faces did not rebuild the spanned subtree")

    # 4. external faces from the spanned subtree up to the target
    chain = _prune_chain(target, spanned)
    for face in reversed(chain):
        steps.append(("external_face", face))
    fac = Factorization(steps)
    return fac


def _uncontract(spanned: Tree, stage: Tree, e: str) -> Tree:
    # the subtree structure of ``spanned`` restricted to edges of ``stage`` plus ``e``
    keep = set(stage.edges) | {e}
    verts = {}
    for v in keep:
        if not spanned.has_vertex(v):
            continue
        ins = []
        frontier = list(spanned.inputs(v))
        while frontier:
            c = frontier.pop()
            if c in keep:
                ins.append(c)
            elif spanned.has_vertex(c):
                frontier.extend(spanned.inputs(c))
        verts[v] = ins
    return Tree(spanned.root, verts)


def _prune_chain(target: Tree, sub: Tree) -> list[TreeMorphism]:
    """Elementary external faces ``sub = F_k -> ... -> F_0 = target`` (listed from the top)."""
    chain = []
    current = target
    while current != sub:
        if current.n_vertices == 1:
            face = external_face(current, current.root, keep=sub.root, validate=False)
        else:
            inside = set(sub.edges)
            top = next((v for v in current.vertices if v != current.root and not sub.has_vertex(v)
                        and all(current.is_leaf(c) and c not in inside for c in current.inputs(v))), None)
            if top is not None:
                face = external_face(current, top, validate=False)
            else:
                face = external_face(current, current.root, validate=False)
        chain.append(face)
        current = face.source
    return chain
