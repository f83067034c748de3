"""The operad of elements of a dendroidal set and the root functor.

Objects are pairs ``(S, x)`` of a canonical tree with at most ``bound``
vertices and a dendrex ``x`` at ``S``. An operation
``(S_1, x_1), ..., (S_n, x_n) -> (R, y)`` is a wide independent family of tree
morphisms ``f_i: S_i -> R`` with ``y . f_i = x_i``. Independence and
wideness together say the root images form a cut of the root of ``R``, so
operations into ``(R, y)`` are enumerated from the cuts of ``R``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Hashable, Iterable, Iterator, Sequence

from .dendroidal.morphisms import (
    TreeMorphism, automorphisms, enumerate_tree_morphisms, normalize_by_automorphism,
)
from .dendroidal.presheaves import (
    DendroidalSet, NerveBackend, Representable, dendrex_to_morphism, morphism_to_dendrex,
    representable,
)
from .operads import Dendrex, FiniteOperad, OperadError, OperadMorphism, TreeOperad, nerve_dendrices
from .trees import Tree, canonical_tree, tree_from_shape

__all__ = [
    "ElementObject", "ElementOp", "ElementsOperad", "RootFunctor", "root_functor",
    "Section", "section_l", "homotopy_h", "root_preserving_ops", "interchange_failures",
    "segal_check", "grafting_decompositions", "realizable_shapes", "h_uniqueness_count",
    "naturality_failures", "pushforward", "root_core_failures",
]


@dataclass(frozen=True)
class ElementObject:
    tree: Tree
    element: Hashable

    def __repr__(self) -> str:
        return f"({self.tree}, {_short(self.element)})"


def _short(x: Hashable) -> str:
    if isinstance(x, Dendrex):
        return "{" + ",".join(f"{e}:{c}" for e, c in x.colors) + "}"
    return repr(x)


@dataclass(frozen=True)
class ElementOp:
    inputs: tuple[ElementObject, ...]
    output: ElementObject
    maps: tuple[TreeMorphism, ...]

    def root_images(self) -> tuple[str, ...]:
        return tuple(f(f.source.root) for f in self.maps)

    def __repr__(self) -> str:
        body = "; ".join(",".join(f"{e}>{x}" for e, x in f.mapping) for f in self.maps)
        return f"ElementOp([{body}] -> {self.output.tree})"


def realizable_shapes(operad: FiniteOperad, bound: int, max_arity: int) -> list[str]:
    """Shapes of trees with at most ``bound`` vertices carrying a dendrex of the nerve."""
    if isinstance(operad, TreeOperad):
        return list(_tree_realizable_shapes(operad.tree, bound, max_arity))
    return _realizable_shapes(operad, bound, max_arity)


@lru_cache(maxsize=4096)
def _tree_realizable_shapes(tree: Tree, bound: int, max_arity: int) -> tuple[str, ...]:
    return tuple(_realizable_shapes(TreeOperad(tree), bound, max_arity))


def _realizable_shapes(operad: FiniteOperad, bound: int, max_arity: int) -> list[str]:
    memo: dict[tuple[Hashable, int], set[str]] = {}

    def shapes(c: Hashable, v: int) -> set[str]:
        # shapes with exactly v vertices and a dendrex with root color c
        key = (c, v)
        if key in memo:
            return memo[key]
        out: set[str] = set()
        if v == 0:
            out.add("|")
        else:
            for n in range(min(max_arity, v - 1 + max_arity) + 1):
                for ins in operad.input_multisets(c, n):
                    for split in _compositions(v - 1, n):
                        parts = []
                        for ci, vi in zip(ins, split):
                            part = shapes(ci, vi)
                            if not part:
                                break
                            parts.append(part)
                        else:
                            for combo in itertools.product(*parts):
                                out.add("(" + "".join(sorted(combo)) + ")")
        memo[key] = out
        return out

    result: set[str] = set()
    for c in operad.objects:
        for v in range(bound + 1):
            result |= shapes(c, v)
    return sorted(result, key=lambda s: (s.count("("), len(s), s))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class ElementsOperad(FiniteOperad):
    """``Omega/X`` truncated to object trees with at most ``bound`` vertices.

    ``extra_objects`` adds further objects with bigger trees, and
    ``skeletal`` keeps one object per isomorphism class (preferring the extra
    ones). Either way the result is the full suboperad on the chosen objects.
    """

    def __init__(self, X: DendroidalSet, bound: int, max_arity: int | None = None,
                 extra_objects: Iterable[ElementObject] = (), skeletal: bool = False):
        self.X = X
        self.bound = bound
        self.extra_objects = tuple(extra_objects)
        self.skeletal = skeletal
        hint = X.max_arity_hint()
        self.tree_arity = max_arity if max_arity is not None else hint
        if self.tree_arity is None:
            raise OperadError("an arity bound for object trees is required")
        self._trees = self._object_trees()
        self._constituents: dict[ElementObject, dict[str, list[tuple[TreeMorphism, ElementObject]]]] = {}
        self._morphisms_into: dict[Tree, list[TreeMorphism]] = {}
        self._rep_morphisms_into: dict[Tree, list[TreeMorphism]] = {}
        self._normal_forms: dict = {}

    # -- objects ---------------------------------------------------------
    def _object_trees(self) -> list[Tree]:
        X = self.X
        if isinstance(X, (NerveBackend, Representable)):
            shapes = realizable_shapes(X.operad, self.bound, self.tree_arity)
            return [tree_from_shape(s) for s in shapes]
        from .trees import enumerate_trees
        return [t for t in enumerate_trees(self.bound, self.tree_arity) if X.dendrices(t)]

    @cached_property
    def objects(self) -> tuple[ElementObject, ...]:
        if self.skeletal:
            base = self._representatives()
        else:
            base = [ElementObject(t, x) for t in self._trees for x in self.X.dendrices(t)]
        seen = set(base)
        for obj in self.extra_objects:
            if obj not in seen:
                seen.add(obj)
                base.append(obj)
        return tuple(base)

    @cached_property
    def _object_set(self) -> frozenset[ElementObject]:
        return frozenset(self.objects)

    def _orbits(self, t: Tree) -> list[list[Hashable]]:
        autos = automorphisms(t)
        seen: set = set()
        orbits = []
        for x in self.X.dendrices(t):
            if x in seen:
                continue
            orbit = list(dict.fromkeys(self.X.act(a, x) for a in autos))
            seen.update(orbit)
            orbits.append(orbit)
        return orbits

    def _representatives(self) -> list[ElementObject]:
        if hasattr(self.X, "representatives"):
            return [ElementObject(t, x) for t in self._trees for x in self.X.representatives(t)]
        preferred = set(self.extra_objects)
        reps = []
        for t in self._trees:
            for orbit in self._orbits(t):
                choice = next((y for y in orbit if ElementObject(t, y) in preferred), orbit[0])
                reps.append(ElementObject(t, choice))
        return reps

    @cached_property
    def _extra_trees(self) -> frozenset[Tree]:
        small = set(self._trees)
        return frozenset(o.tree for o in self.extra_objects if o.tree not in small)

    def has_object(self, obj: ElementObject) -> bool:
        return obj in self._object_set

    def count_up_to_iso(self) -> int:
        """Number of objects up to isomorphism of pairs ``(S, x)``."""
        return sum(len(self._orbits(t)) for t in self._trees)

    # -- operations ------------------------------------------------------
    def morphisms_into(self, R: Tree) -> list[TreeMorphism]:
        """All tree morphisms from object trees into ``R``."""
        found = self._morphisms_into.get(R)
        if found is None:
            shapes = realizable_shapes(TreeOperad(R), self.bound, self.tree_arity)
            found = []
            for s in shapes:
                found.extend(enumerate_tree_morphisms(tree_from_shape(s), R))
            for S in self._extra_trees:
                found.extend(enumerate_tree_morphisms(S, R))
            self._morphisms_into[R] = found
        return found

    def constituents(self, output: ElementObject) -> dict[str, list[tuple[TreeMorphism, ElementObject]]]:
        """Maps into ``output.tree`` grouped by root image, with their pulled back objects."""
        found = self._constituents.get(output)
        if found is None and self.skeletal and hasattr(self.X, "normalize"):
            found = self._skeletal_constituents(output)
            self._constituents[output] = found
        if found is None:
            found = {}
            extra = self._extra_trees
            for f in self.morphisms_into(output.tree):
                obj = ElementObject(f.source, self.X.act(f, output.element))
                if (self.skeletal or (extra and f.source in extra)) and obj not in self._object_set:
                    continue
                found.setdefault(f(f.source.root), []).append((f, obj))
            self._constituents[output] = found
        return found

    def _skeletal_constituents(self, output: ElementObject) -> dict[str, list[tuple[TreeMorphism, ElementObject]]]:
        # one map per automorphism orbit of its source, adjusted so the pulled back dendrex is the representative
        R = output.tree
        reps = self._rep_morphisms_into.get(R)
        if reps is None:
            sources = [tree_from_shape(s) for s in realizable_shapes(TreeOperad(R), self.bound, self.tree_arity)]
            sources.extend(self._extra_trees)
            reps = [f for S in sources for f in enumerate_tree_morphisms(S, R, up_to_automorphism=True)]
            self._rep_morphisms_into[R] = reps
        found: dict[str, list[tuple[TreeMorphism, ElementObject]]] = {}
        extra = self._extra_trees
        for f in reps:
            pulled = self.X.act(f, output.element)
            nf = self._normal_forms.get(pulled)
            if nf is None:
                nf = self._normal_forms[pulled] = self.X.normalize(pulled)
            y, a = nf
            obj = ElementObject(f.source, y)
            if extra and f.source in extra and obj not in self._object_set:
                continue
            fm = f.edge_map
            g = TreeMorphism._trusted(f.source, R, {e: fm[a[e]] for e in f.source.edges})
            found.setdefault(g(g.source.root), []).append((g, obj))
        return found

    def operations_into(self, output: ElementObject, arity: int, one_order: bool = False) -> Iterator[ElementOp]:
        R = output.tree
        groups = self.constituents(output)
        for cut in R.cuts(R.root):
            if len(cut) != arity:
                continue
            orders = [tuple(sorted(cut))] if one_order else itertools.permutations(sorted(cut))
            for order in orders:
                lists = [groups.get(x, []) for x in order]
                for combo in itertools.product(*lists):
                    yield ElementOp(tuple(o for _, o in combo), output, tuple(f for f, _ in combo))

    def operations(self, inputs: Sequence[ElementObject], output: ElementObject) -> tuple[ElementOp, ...]:
        inputs = tuple(inputs)
        R = output.tree
        groups = self.constituents(output)
        out = []
        for cut in R.cuts(R.root):
            if len(cut) != len(inputs):
                continue
            for order in itertools.permutations(sorted(cut)):
                lists = [[f for f, o in groups.get(x, []) if o == obj] for x, obj in zip(order, inputs)]
                for combo in itertools.product(*lists):
                    out.append(ElementOp(inputs, output, tuple(combo)))
        return tuple(out)

    def iter_operations(self, max_arity: int | None = None) -> Iterator[ElementOp]:
        for obj in self.objects:
            R = obj.tree
            sizes = sorted({len(c) for c in R.cuts(R.root)})
            for n in sizes:
                if max_arity is not None and n > max_arity:
                    continue
                yield from self.operations_into(obj, n)

    def iter_orbit_representatives(self, max_arity: int | None = None) -> Iterator[ElementOp]:
        """One operation per Sigma-orbit: each cut is listed in a single order."""
        for obj in self.objects:
            R = obj.tree
            for n in sorted({len(c) for c in R.cuts(R.root)}):
                if max_arity is None or n <= max_arity:
                    yield from self.operations_into(obj, n, one_order=True)

    def sigma_witness(self, max_arity: int | None = None):
        """An operation fixed by a nontrivial permutation, or ``None``.

        If ``sigma`` fixes an operation then positions ``i`` and ``sigma(i)``
        carry the same map and object, so the transposition of the two fixes it
        too. It is therefore enough to look for a repeated constituent in two
        positions of a cut.
        """
        for obj in self.objects:
            R = obj.tree
            cuts = [c for c in R.cuts(R.root) if 2 <= len(c) <= (max_arity or len(c))]
            if not cuts:
                continue  # only unary operations land here
            groups = self.constituents(obj)
            for cut in cuts:
                n = len(cut)
                order = sorted(cut)
                lists = [groups.get(x, []) for x in order]
                if not all(lists):
                    continue
                for i, j in itertools.combinations(range(n), 2):
                    shared = [c for c in lists[i] if c in lists[j]]
                    if shared:
                        combo = [l[0] for l in lists]
                        combo[i] = combo[j] = shared[0]
                        op = ElementOp(tuple(o for _, o in combo), obj, tuple(f for f, _ in combo))
                        sigma = list(range(n))
                        sigma[i], sigma[j] = j, i
                        return op, tuple(sigma)
        return None

    def arity_bound(self, max_arity: int | None) -> int:
        top = max((len(c) for t in self._trees for c in t.cuts(t.root)), default=1)
        return top if max_arity is None else min(top, max_arity)

    def profile(self, op: ElementOp):
        return op.inputs, op.output

    def compose(self, p: ElementOp, i: int, q: ElementOp) -> ElementOp:
        if p.inputs[i] != q.output:
            raise OperadError("cannot compose: colors differ")
        inner = tuple(g.then(p.maps[i]) for g in q.maps)
        return ElementOp(p.inputs[:i] + q.inputs + p.inputs[i + 1:], p.output,
                         p.maps[:i] + inner + p.maps[i + 1:])

    def act(self, p: ElementOp, sigma) -> ElementOp:
        return ElementOp(tuple(p.inputs[s] for s in sigma), p.output, tuple(p.maps[s] for s in sigma))

    def unit(self, c: ElementObject) -> ElementOp:
        t = c.tree
        return ElementOp((c,), c, (TreeMorphism._trusted(t, t, {e: e for e in t.edges}),))

    def op_key(self, op: ElementOp) -> str:
        return repr((op.output.tree, [m.mapping for m in op.maps], [_short(o.element) for o in op.inputs]))

    def __repr__(self) -> str:
        return f"ElementsOperad({self.X!r}, bound={self.bound})"


def root_preserving_ops(E: ElementsOperad) -> Iterator[ElementOp]:
    """The set of unary operations sending root to root."""
    for op in E.iter_operations(1):
        if len(op.maps) == 1 and op.maps[0].is_root_preserving:
            yield op


# -- the root functor ------------------------------------------------------------

class RootFunctor:
    """Evaluation at the root, ``Omega/X -> P`` for the nerve ``X`` of ``P``."""

    def __init__(self, E: ElementsOperad):
        self.E = E
        self.target = E.X.operad if isinstance(E.X, (NerveBackend, Representable)) else None

    def on_objects(self, obj: ElementObject) -> Hashable:
        return self.E.X.root_color(obj.tree, obj.element)

    def on_ops(self, op: ElementOp):
        if self.target is None:
            raise OperadError("the root functor on operations needs an operadic presentation")
        return self.E.X.evaluate(op.output.element, op.root_images(), op.output.tree.root)

    def as_morphism(self) -> OperadMorphism:
        if self.target is None:
            raise OperadError("the root functor on operations needs an operadic presentation")
        return OperadMorphism(self.E, self.target, self.on_objects, self.on_ops)

    def sends_to_identity(self, op: ElementOp) -> bool:
        if self.target is None:
            return op.maps[0].is_root_preserving
        return self.target.is_unit(self.on_ops(op))


def root_functor(E: ElementsOperad) -> RootFunctor:
    return RootFunctor(E)


def pushforward(E_source: ElementsOperad, alpha: Dendrex, E_target: ElementsOperad):
    """``Omega/alpha``: post-composition with a dendrex ``alpha`` of ``X`` at ``T``.

    ``E_source`` must be the elements operad of the representable on ``T``.
    Returns the maps on objects and on operations.
    """
    X = E_target.X

    def on_obj(obj: ElementObject) -> ElementObject:
        return ElementObject(obj.tree, X.act(dendrex_to_morphism(obj.element), alpha))

    def on_op(op: ElementOp) -> ElementOp:
        return ElementOp(tuple(on_obj(o) for o in op.inputs), on_obj(op.output), op.maps)

    return on_obj, on_op


def naturality_failures(T: Tree, X: NerveBackend, bound: int, limit: int = 5,
                        E_T: ElementsOperad | None = None, E_X: ElementsOperad | None = None) -> list[str]:
    """``r_X . (Omega/alpha) == alpha . r_T`` for every dendrex ``alpha`` of ``X`` at ``T``."""
    E_T = E_T or ElementsOperad(representable(T), bound)
    E_X = E_X or ElementsOperad(X, bound, max_arity=E_T.tree_arity)
    r_T, r_X = RootFunctor(E_T), RootFunctor(E_X)
    problems = []
    ops = list(E_T.iter_operations())
    for alpha in X.dendrices(T):
        on_obj, on_op = pushforward(E_T, alpha, E_X)
        for obj in E_T.objects:
            if r_X.on_objects(on_obj(obj)) != alpha.color[r_T.on_objects(obj)]:
                problems.append(f"objects: {obj} under {alpha.colors}")
        for op in ops:
            leaves, root = r_T.on_ops(op)
            if r_X.on_ops(on_op(op)) != alpha.evaluate(leaves, root):
                problems.append(f"operations: {op}")
                if len(problems) >= limit:
                    return problems
    return problems


# -- the section and the homotopy ----------------------------------------------

class Section:
    """``l_T: Omega(T) -> Omega/T``, ``e -> (T_e, inclusion)`` with ``T_e`` the biggest subtree rooted at ``e``."""

    def __init__(self, T: Tree, E: ElementsOperad | None = None, object_bound: int | None = None,
                 skeletal: bool = False):
        """Without ``E`` the target is built here: object trees up to ``object_bound`` vertices
        (default ``|V(T)|``) plus the image of the section, optionally skeletal."""
        self.T = T
        as_morphisms = E is None or isinstance(E.X, Representable)
        normalize = skeletal if E is None else (E.skeletal and as_morphisms)
        self._upper: dict[str, tuple[Tree, dict[str, str], ElementObject]] = {}
        for e in T.edges:
            up = T.upper(e)
            can, iso = canonical_tree(up)
            incl = TreeMorphism.from_map(can, T, {v: k for k, v in iso.items()})
            if normalize:
                # use the orbit representative so that the object lies in the skeleton
                incl, a = normalize_by_automorphism(incl)
                a_inv = {v: k for k, v in a.items()}
                iso = {t: a_inv[c] for t, c in iso.items()}
            element = incl if as_morphisms else morphism_to_dendrex(incl)
            self._upper[e] = (can, iso, ElementObject(can, element))
        if E is None:
            bound = T.n_vertices if object_bound is None else min(object_bound, T.n_vertices)
            E = ElementsOperad(representable(T), bound, skeletal=skeletal,
                               extra_objects=[u[2] for u in self._upper.values()])
        self.E = E
        self._h: dict[ElementObject, ElementOp] = {}

    def upper(self, e: str) -> tuple[Tree, dict[str, str]]:
        can, iso, _ = self._upper[e]
        return can, iso

    def on_objects(self, e: str) -> ElementObject:
        return self._upper[e][2]

    def on_ops(self, op) -> ElementOp:
        leaves, root = op
        can_r, iso_r, obj_r = self._upper[root]
        maps = []
        for l in leaves:
            can_l, iso_l, _ = self._upper[l]
            back = {v: k for k, v in iso_l.items()}
            maps.append(TreeMorphism.from_map(can_l, can_r, {x: iso_r[back[x]] for x in can_l.edges}))
        return ElementOp(tuple(self._upper[l][2] for l in leaves), obj_r, tuple(maps))

    def as_morphism(self) -> OperadMorphism:
        return OperadMorphism(TreeOperad(self.T), self.E, self.on_objects, self.on_ops)


def section_l(T: Tree, E: ElementsOperad | None = None) -> Section:
    return Section(T, E)


def homotopy_h(section: Section, obj: ElementObject) -> ElementOp:
    """The root-preserving factorization of ``obj``'s map through ``T_x``, ``x`` its root image."""
    found = section._h.get(obj)
    if found is None:
        alpha = dendrex_to_morphism(obj.element)
        x = alpha(obj.tree.root)
        can, iso = section.upper(x)
        h = TreeMorphism.from_map(obj.tree, can, {e: iso[alpha(e)] for e in obj.tree.edges})
        found = ElementOp((obj,), section.on_objects(x), (h,))
        section._h[obj] = found
    return found


def h_uniqueness_count(section: Section, obj: ElementObject) -> int:
    """Number of root-preserving ``g`` with ``inclusion . g == alpha`` (should be exactly one)."""
    alpha = dendrex_to_morphism(obj.element)
    x = alpha(obj.tree.root)
    target = section.on_objects(x)
    incl = dendrex_to_morphism(target.element)
    # exhaustive search, pruned to edge images compatible with alpha
    allowed = {e: frozenset(t for t in target.tree.edges if incl(t) == alpha(e)) for e in obj.tree.edges}
    count = 0
    for g in enumerate_tree_morphisms(obj.tree, target.tree, root_image=target.tree.root, allowed=allowed):
        if g.then(incl) == alpha:
            count += 1
    return count


def interchange_failures(section: Section, limit: int = 5) -> list[str]:
    """Check ``h_R . f == l(r(f)) . h_S`` on every constituent map ``f`` of an operation.

    An operation of the elements operad satisfies the interchange relation
    exactly when each of its constituents does, so it suffices to run over
    all pairs (object, map into its tree). Both sides are compared as edge
    maps; the components ``h_S`` are the cached ones from :func:`homotopy_h`.
    """
    E = section.E
    problems = []
    # l on the unary operation x -> y of Omega(T), as an edge map T_x -> T_y
    lifts: dict[tuple[str, str], dict[str, str]] = {}

    def lift(x: str, y: str) -> dict[str, str]:
        key = (x, y)
        if key not in lifts:
            can_x, iso_x = section.upper(x)
            _, iso_y = section.upper(y)
            back = {v: k for k, v in iso_x.items()}
            lifts[key] = {e: iso_y[back[e]] for e in can_x.edges}
        return lifts[key]

    for out in E.objects:
        h_out = homotopy_h(section, out).maps[0].edge_map
        beta = dendrex_to_morphism(out.element).edge_map
        top = beta[out.tree.root]
        for x, group in E.constituents(out).items():
            xi = beta[x]
            up = lift(xi, top)
            target_obj = section.on_objects(xi)
            for f, obj in group:
                h_in = homotopy_h(section, obj)
                h_map = h_in.maps[0].edge_map
                if h_in.output != target_obj or any(h_out[fe] != up[h_map[e]] for e, fe in f.mapping):
                    problems.append(f"interchange fails for {f} into {out}")
                    if len(problems) >= limit:
                        return problems
    return problems


def root_core_failures(T: Tree, object_bound: int | None = None, skeletal: bool = True,
                       limit: int = 5) -> list[str]:
    """All checks of ``r l = id`` and ``id => l r`` for one tree ``T``.

    * ``r . l`` is the identity on objects and, for each cut, on one ordering
      of it; ``l`` and ``r`` commute with adjacent transpositions, which
      generate the symmetric groups.
    * every ``h`` component exists, is root preserving, is sent to an identity
      by ``r`` and is the only root-preserving factorization;
    * the interchange relation holds on every constituent.
    """
    section = Section(T, object_bound=object_bound, skeletal=skeletal)
    E = section.E
    r = RootFunctor(E)
    source = TreeOperad(T)
    problems: list[str] = []

    def fail(msg: str) -> bool:
        problems.append(msg)
        return len(problems) >= limit

    for e in T.edges:
        if r.on_objects(section.on_objects(e)) != e and fail(f"r l moves the edge {e}"):
            return problems
    for e in T.edges:
        for cut in T.cuts(e):
            op = (tuple(sorted(cut)), e)
            image = section.on_ops(op)
            if r.on_ops(image) != op and fail(f"r l moves {op}"):
                return problems
            for k in range(len(cut) - 1):
                sigma = tuple(range(k)) + (k + 1, k) + tuple(range(k + 2, len(cut)))
                moved = source.act(op, sigma)
                if section.on_ops(moved) != E.act(image, sigma) and fail(f"l is not equivariant at {op}"):
                    return problems
                if r.on_ops(E.act(image, sigma)) != moved and fail(f"r is not equivariant at {op}"):
                    return problems
    for obj in E.objects:
        try:
            h = homotopy_h(section, obj)
        except ValueError as exc:
            if fail(f"no h at {obj}: {exc}"):
                return problems
            continue
        if not E.has_object(h.output) and fail(f"h at {obj} leaves the truncation"):
            return problems
        if not h.maps[0].is_root_preserving and fail(f"h at {obj} is not root preserving"):
            return problems
        if not r.sends_to_identity(h) and fail(f"h at {obj} is not sent to an identity"):
            return problems
        if h_uniqueness_count(section, obj) != 1 and fail(f"h at {obj} is not unique"):
            return problems
    problems.extend(interchange_failures(section, limit - len(problems)))
    return problems


# -- strict Segal condition ---------------------------------------------------------

def grafting_decompositions(T: Tree) -> list[tuple[str, Tree, Tree]]:
    """``T = R u_a S`` for every inner edge ``a``: ``S`` is everything above ``a``."""
    out = []
    for a in T.inner_edges:
        upper = T.upper(a)
        lower = T.restrict_vertices(T.root, set(T.vertices) - set(upper.vertices))
        out.append((a, lower, upper))
    return out


def segal_check(operad: FiniteOperad, T: Tree, a: str) -> tuple[bool, int]:
    """Whether restriction ``N(P)_T -> N(P)_R x N(P)_S`` over the edge ``a`` is a bijection.

    Returns the verdict and the size of ``N(P)_T``.
    """
    decomposition = {d[0]: d for d in grafting_decompositions(T)}
    if a not in decomposition:
        raise ValueError(f"{a!r} is not an inner edge of {T}")
    _, lower, upper = decomposition[a]
    whole = nerve_dendrices(T, operad)
    lows = nerve_dendrices(lower, operad)
    ups = nerve_dendrices(upper, operad)
    to_lower = TreeMorphism.from_map(lower, T, {e: e for e in lower.edges})
    to_upper = TreeMorphism.from_map(upper, T, {e: e for e in upper.edges})
    by_color: dict = {}
    for u in ups:
        by_color.setdefault(u.color[a], []).append(u)
    pairs = {(l, u) for l in lows for u in by_color.get(l.color[a], [])}
    images = [(x.pull_back(to_lower), x.pull_back(to_upper)) for x in whole]
    ok = len(set(images)) == len(images) and set(images) == pairs
    return ok, len(whole)
