"""Forests, independent and wide maps, forest root faces."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .dendroidal.morphisms import TreeMorphism, enumerate_tree_morphisms
from .trees import Tree, canonical_form, parse_tree, print_tree

__all__ = [
    "Forest", "ForestMorphism", "ForestError", "parse_forest", "direct_sum",
    "is_independent", "is_wide", "wide_lemma_check", "maximal_paths",
    "forest_root_face", "decompose_wide_independent", "Generator", "recompose",
    "enumerate_forest_morphisms", "forest_to_tree_morphism",
]


class ForestError(ValueError):
    pass


@dataclass(frozen=True)
class Forest:
    """A finite disjoint union of trees; the order is bookkeeping only."""

    trees: tuple[Tree, ...]

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self) -> Iterator[Tree]:
        return iter(self.trees)

    def __getitem__(self, i: int) -> Tree:
        return self.trees[i]

    @property
    def n_edges(self) -> int:
        return sum(len(t.edges) for t in self.trees)

    def canonical_key(self) -> tuple[str, ...]:
        return tuple(sorted(canonical_form(t).hash for t in self.trees))

    def __str__(self) -> str:
        return " + ".join(print_tree(t) for t in self.trees)


def parse_forest(text: str) -> Forest:
    parts = [p.strip() for p in text.split("+")]
    if not all(parts):
        raise ForestError("empty constituent in forest")
    return Forest(tuple(parse_tree(p) for p in parts))


def direct_sum(*forests: Forest) -> Forest:
    return Forest(tuple(t for f in forests for t in f.trees))


@dataclass(frozen=True)
class ForestMorphism:
    """Constituent ``i`` of the source goes to constituent ``alpha[i]`` of the target by ``maps[i]``."""

    source: Forest
    target: Forest
    alpha: tuple[int, ...]
    maps: tuple[TreeMorphism, ...]

    def __post_init__(self) -> None:
        if len(self.alpha) != len(self.source) or len(self.maps) != len(self.source):
            raise ForestError("one index and one map per source constituent")
        for i, (j, f) in enumerate(zip(self.alpha, self.maps)):
            if f.source != self.source[i] or f.target != self.target[j]:
                raise ForestError(f"map {i} does not go from constituent {i} to constituent {j}")

    @classmethod
    def into_tree(cls, maps: Sequence[TreeMorphism], target: Tree | None = None) -> "ForestMorphism":
        if target is None:
            if not maps:
                raise ForestError("target needed for an empty forest")
            target = maps[0].target
        return cls(Forest(tuple(f.source for f in maps)), Forest((target,)), (0,) * len(maps), tuple(maps))

    def then(self, other: "ForestMorphism") -> "ForestMorphism":
        """``other . self``."""
        if other.source != self.target:
            raise ForestError("forest morphisms are not composable")
        alpha = tuple(other.alpha[j] for j in self.alpha)
        maps = tuple(f.then(other.maps[j]) for j, f in zip(self.alpha, self.maps))
        return ForestMorphism(self.source, other.target, alpha, maps)

    def root_images(self) -> list[tuple[int, str]]:
        return [(j, f(f.source.root)) for j, f in zip(self.alpha, self.maps)]

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "edge_maps": [dict(f.mapping) for f in self.maps],
                "source": str(self.source), "target": str(self.target)}


def forest_to_tree_morphism(f: ForestMorphism) -> TreeMorphism:
    if len(f.source) != 1 or len(f.target) != 1:
        raise ForestError("not a morphism of trees")
    return f.maps[0]


def is_independent(f: ForestMorphism) -> bool:
    """Root images of constituents sharing a target are pairwise incomparable."""
    images = f.root_images()
    for (j, x), (k, y) in itertools.combinations(images, 2):
        if j == k and f.target[j].comparable(x, y):
            return False
    return True


@lru_cache(maxsize=None)
def maximal_paths(tree: Tree) -> tuple[frozenset[str], ...]:
    """Maximal chains of the edge poset starting at a leaf."""
    return tuple(tree.above_or_equal(l) for l in tree.leaves)


def is_wide(f: ForestMorphism) -> bool:
    """Every maximal path in every target constituent meets a root image."""
    for j, tree in enumerate(f.target):
        hits = {x for k, x in f.root_images() if k == j}
        for path in maximal_paths(tree):
            if not (path & hits):
                return False
    return True


def wide_lemma_check(f: ForestMorphism) -> bool:
    """For an independent map into one tree: is there an operation from the root images to the root?"""
    if len(f.target) != 1:
        raise ForestError("target must be a single tree")
    if not is_independent(f):
        raise ForestError("map is not independent")
    tree = f.target[0]
    return tree.has_operation([x for _, x in f.root_images()], tree.root)


def forest_root_face(forest: Forest, root_name: str = "r") -> tuple[Tree, ForestMorphism]:
    """Graft the constituents onto the leaves of a corolla; return the tree and the inclusion."""
    n = len(forest)
    if n == 0:
        raise ForestError("the forest root face needs a nonempty forest")
    renames = []
    verts: dict[str, list[str]] = {}
    for i, t in enumerate(forest):
        ren = {e: f"t{i}_{e}" for e in t.edges}
        renames.append(ren)
        for v in t.vertices:
            verts[ren[v]] = [ren[c] for c in t.inputs(v)]
    verts[root_name] = [renames[i][t.root] for i, t in enumerate(forest)]
    bar = Tree(root_name, verts)
    maps = tuple(TreeMorphism.from_map(t, bar, renames[i]) for i, t in enumerate(forest))
    return bar, ForestMorphism(forest, Forest((bar,)), (0,) * n, maps)


@dataclass(frozen=True)
class Generator:
    kind: str  # "root_face" or "root_preserving" (direct sums of those, identities allowed)
    morphism: ForestMorphism


def _block(f: ForestMorphism) -> tuple[Tree, list[TreeMorphism], TreeMorphism]:
    """For maps into one tree: the middle tree, the first-stage maps and the root-preserving rest."""
    tree = f.target[0]
    if len(f.source) == 1 and f.maps[0].is_root_preserving:
        src = f.source[0]
        return src, [TreeMorphism.from_map(src, src, {e: e for e in src.edges})], f.maps[0]
    bar, rho = forest_root_face(f.source)
    m = {bar.root: tree.root}
    for i, g in enumerate(f.maps):
        for e, x in g.mapping:
            m[rho.maps[i].edge_map[e]] = x
    return bar, list(rho.maps), TreeMorphism.from_map(bar, tree, m)


def decompose_wide_independent(f: ForestMorphism) -> list[Generator]:
    """Factor ``f`` into a direct sum of forest root faces followed by root-preserving maps.

    Identity stages are dropped, so a root-preserving tree map or a forest
    root face comes back as a single generator.
    """
    if not (is_wide(f) and is_independent(f)):
        raise ForestError("map must be wide and independent")
    middles, first, rest = [], {}, []
    for j in range(len(f.target)):
        idx = [i for i, a in enumerate(f.alpha) if a == j]
        if not idx:
            raise ForestError("a target constituent receives no source constituent")
        sub = ForestMorphism(Forest(tuple(f.source[i] for i in idx)), Forest((f.target[j],)),
                             (0,) * len(idx), tuple(f.maps[i] for i in idx))
        bar, maps, g = _block(sub)
        for i, m in zip(idx, maps):
            first[i] = (j, m)
        middles.append(bar)
        rest.append(g)
    middle = Forest(tuple(middles))
    stage1 = ForestMorphism(f.source, middle, tuple(first[i][0] for i in range(len(f.source))),
                            tuple(first[i][1] for i in range(len(f.source))))
    stage2 = ForestMorphism(middle, f.target, tuple(range(len(f.target))), tuple(rest))
    gens = []
    if not _is_identity(stage1):
        gens.append(Generator("root_face", stage1))
    if not _is_identity(stage2) or not gens:
        if gens and all(g.is_isomorphism for g in stage2.maps):
            # the first stage is already the whole map up to isomorphism
            return [Generator("root_face", f)]
        gens.append(Generator("root_preserving", stage2))
    return gens


def _is_identity(f: ForestMorphism) -> bool:
    return f.source == f.target and f.alpha == tuple(range(len(f.source))) \
        and all(all(a == b for a, b in m.mapping) for m in f.maps)


def recompose(gens: Sequence[Generator]) -> ForestMorphism:
    result = gens[0].morphism
    for g in gens[1:]:
        result = result.then(g.morphism)
    return result


def enumerate_forest_morphisms(source: Forest, target: Tree, *, independent_only: bool = False) -> Iterator[ForestMorphism]:
    """All forest morphisms from ``source`` into the single tree ``target``."""
    per = [enumerate_tree_morphisms(t, target) for t in source]
    chosen: list[TreeMorphism] = []

    def go(i: int) -> Iterator[ForestMorphism]:
        if i == len(per):
            yield ForestMorphism(source, Forest((target,)), (0,) * len(per), tuple(chosen))
            return
        for f in per[i]:
            if independent_only:
                x = f(f.source.root)
                if any(target.comparable(x, g(g.source.root)) for g in chosen):
                    continue
            chosen.append(f)
            yield from go(i + 1)
            chosen.pop()

    yield from go(0)
