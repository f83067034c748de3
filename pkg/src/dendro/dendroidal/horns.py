"""Boundaries, horns and the lifting search against inner horn inclusions."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterator, Mapping

from ..trees import Tree
from .morphisms import TreeMorphism, external_faces, inner_face
from .presheaves import DendroidalSet

__all__ = [
    "FaceLabel", "elementary_faces", "all_faces", "HornProblem", "HornError",
    "check_compatibility", "solve_inner_horn", "enumerate_horn_problems", "horn_filler_counts",
]

FaceLabel = tuple[str, str]


class HornError(ValueError):
    pass


def elementary_faces(tree: Tree) -> dict[FaceLabel, TreeMorphism]:
    """Inner faces labelled ``("inner", e)``, external ones ``("external", <root>:<vertices>)``."""
    faces: dict[FaceLabel, TreeMorphism] = {}
    for e in tree.inner_edges:
        faces[("inner", e)] = inner_face(tree, e)
    for f in external_faces(tree):
        label = f.source.root + ":" + ",".join(f.source.vertices)
        faces[("external", label)] = f
    return faces


@lru_cache(maxsize=4096)
def all_faces(tree: Tree) -> frozenset[Tree]:
    """Every iterated face of ``tree`` (including itself), as trees on its edge names."""
    seen = {tree}
    stack = [tree]
    while stack:
        t = stack.pop()
        for f in elementary_faces(t).values():
            if f.source not in seen:
                seen.add(f.source)
                stack.append(f.source)
    return frozenset(seen)


def _inclusion(face: Tree, tree: Tree) -> TreeMorphism:
    return TreeMorphism.from_map(face, tree, {e: e for e in face.edges})


@lru_cache(maxsize=4096)
def _maximal_common_faces(a: Tree, b: Tree) -> tuple[Tree, ...]:
    common = all_faces(a) & all_faces(b)
    maximal = [u for u in common if not any(u != w and u in all_faces(w) for w in common)]
    return tuple(sorted(maximal, key=lambda t: (str(t))))


@dataclass
class HornProblem:
    """A family of dendrices on all elementary faces of ``tree`` but ``missing``."""

    tree: Tree
    missing: FaceLabel
    family: dict[FaceLabel, Hashable] = field(default_factory=dict)

    @property
    def is_inner(self) -> bool:
        return self.missing[0] == "inner"

    def faces(self) -> dict[FaceLabel, TreeMorphism]:
        faces = elementary_faces(self.tree)
        if self.missing not in faces:
            raise HornError(f"{self.missing} is not a face of {self.tree}")
        return {k: v for k, v in faces.items() if k != self.missing}


def _compatible(X: DendroidalSet, fa: Tree, xa: Hashable, fb: Tree, xb: Hashable) -> bool:
    for u in _maximal_common_faces(fa, fb):
        if X.act(_inclusion(u, fa), xa) != X.act(_inclusion(u, fb), xb):
            return False
    return True


def check_compatibility(X: DendroidalSet, problem: HornProblem) -> list[tuple[FaceLabel, FaceLabel]]:
    """Pairs of faces whose dendrices disagree on a common face."""
    faces = problem.faces()
    if set(problem.family) != set(faces):
        raise HornError("family must give a dendrex on exactly the horn faces")
    labels = sorted(faces)
    bad = []
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            if not _compatible(X, faces[a].source, problem.family[a], faces[b].source, problem.family[b]):
                bad.append((a, b))
    return bad


def solve_inner_horn(X: DendroidalSet, problem: HornProblem, *, require_inner: bool = True) -> list[Hashable]:
    """All dendrices at ``problem.tree`` restricting to the given family."""
    if require_inner and not problem.is_inner:
        raise HornError("not an inner horn problem")
    bad = check_compatibility(X, problem)
    if bad:
        raise HornError(f"incompatible face family on {bad[0]}")
    faces = problem.faces()
    return [x for x in X.dendrices(problem.tree)
            if all(X.act(faces[k], x) == v for k, v in problem.family.items())]


def enumerate_horn_problems(X: DendroidalSet, tree: Tree, missing: FaceLabel) -> Iterator[HornProblem]:
    """Every compatible family on the horn, by backtracking over the faces."""
    faces = {k: v for k, v in elementary_faces(tree).items() if k != missing}
    labels = sorted(faces)
    choices = {k: X.dendrices(faces[k].source) for k in labels}
    chosen: dict[FaceLabel, Hashable] = {}

    def go(i: int) -> Iterator[HornProblem]:
        if i == len(labels):
            yield HornProblem(tree, missing, dict(chosen))
            return
        a = labels[i]
        for x in choices[a]:
            if all(_compatible(X, faces[a].source, x, faces[b].source, chosen[b]) for b in labels[:i]):
                chosen[a] = x
                yield from go(i + 1)
                del chosen[a]

    yield from go(0)


def horn_filler_counts(X: DendroidalSet, tree: Tree, missing: FaceLabel) -> list[int]:
    """Number of fillers of every horn problem at ``tree`` (one entry per problem)."""
    faces = {k: v for k, v in elementary_faces(tree).items() if k != missing}
    labels = sorted(faces)
    index: dict[tuple, int] = {}
    for x in X.dendrices(tree):
        key = tuple(X.act(faces[k], x) for k in labels)
        index[key] = index.get(key, 0) + 1
    return [index.get(tuple(p.family[k] for k in labels), 0) for p in enumerate_horn_problems(X, tree, missing)]

