"""Exhaustive verification suites at bounded size.

Each check returns a :class:`Check` with a count of instances examined and
the first few witnesses on failure. The same functions back the acceptance
tests and ``dendro verify``.
"""
from __future__ import annotations

import itertools
import math
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .algebras import count_functions_oracle, enumerate_algebras, is_locally_constant
from .decalage import (
    GenericElementsOperad, NervePresheaf, dendroidal_decalage, final_object_functor, validate_decalage,
)
from .dendroidal.horns import elementary_faces, horn_filler_counts
from .dendroidal.morphisms import enumerate_tree_morphisms, factorize
from .dendroidal.presheaves import NerveBackend, representable
from .dendroidal.simplicial import last_vertex, last_vertex_on_arrow
from .elements import (
    ElementsOperad, RootFunctor, grafting_decompositions, naturality_failures, root_core_failures, segal_check,
)
from .forests import (
    Forest, decompose_wide_independent, enumerate_forest_morphisms, is_independent, is_wide, recompose,
    wide_lemma_check,
)
from .operads import CommutativeOperad, TableOperad, TreeOperad, check_operad_axioms, is_sigma_free
from .tensor import TensorBoundWarning, compare_tensor_nerve, tensor
from .trees import Tree, enumerate_trees, iter_all_trees_edges, linear, parse_tree, tree_from_shape

__all__ = [
    "Check", "SuiteError", "SUITES", "MAX_BOUND", "run_suite",
    "check_subtree_operations", "check_generation", "check_wideness_lemma", "check_wide_decomposition",
    "check_sigma_free", "check_root_core", "check_naturality", "check_segal", "check_last_vertex",
    "check_tensor", "check_decalage", "check_horns", "check_locally_constant",
    "subtree_operation_count", "nerve_backends",
]


class SuiteError(ValueError):
    pass


@dataclass
class Check:
    name: str
    passed: bool = True
    count: int = 0
    witnesses: list[str] = field(default_factory=list)
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    def fail(self, msg: str, limit: int = 5) -> None:
        self.passed = False
        if len(self.witnesses) < limit:
            self.witnesses.append(msg)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "count": self.count,
                "witnesses": self.witnesses, "notes": self.notes, "seconds": round(self.seconds, 3)}


def _timed(fn: Callable[..., Check]) -> Callable[..., Check]:
    def wrapper(*args, **kwargs) -> Check:
        t0 = time.perf_counter()
        result = fn(*args, **kwargs)
        result.seconds = time.perf_counter() - t0
        return result

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def nerve_backends() -> list[tuple[str, NerveBackend]]:
    """Small operads whose nerves the suites run over."""
    return [
        ("free(C_2)", NerveBackend(TreeOperad(tree_from_shape("(||)")))),
        ("free(r[a[b,c],d])", NerveBackend(TreeOperad(parse_tree("r[a[b,c],d]")))),
        ("free([2])", NerveBackend(TreeOperad(linear(2)))),
        ("Comm", NerveBackend(CommutativeOperad())),
    ]


# -- trees and operads -------------------------------------------------------------

def subtree_operation_count(tree: Tree, e: str) -> int:
    """Operations into ``e`` counted from vertex sets: a subtree rooted at ``e`` is a set of
    vertices containing ``e`` (or empty) and closed under passing towards ``e``.
    Each contributes one operation per ordering of its leaves."""
    below: dict[str, str] = {}
    for v in tree.vertices:
        for c in tree.inputs(v):
            below[c] = v
    candidates = [v for v in tree.vertices if _is_above(below, v, e)]
    total = 1  # the identity on e
    for k in range(1, len(candidates) + 1):
        for chosen in itertools.combinations(candidates, k):
            vs = set(chosen)
            if e not in vs or any(v != e and below[v] not in vs for v in vs):
                continue
            leaves = [c for v in vs for c in tree.inputs(v) if c not in vs]
            total += math.factorial(len(leaves))
    return total


def _is_above(below: dict[str, str], v: str, e: str) -> bool:
    while True:
        if v == e:
            return True
        if v not in below:
            return False
        v = below[v]


@_timed
@_timed
def check_subtree_operations(max_vertices: int = 5, max_arity: int = 3) -> Check:
    """Operation counts of the free operad match a vertex-set count of subtrees."""
    res = Check("subtree_operations")
    for tree in enumerate_trees(max_vertices, max_arity):
        P = TreeOperad(tree)
        n = len(tree.edges)
        for e in tree.edges:
            res.count += 1
            # operations differing only by the order of their inputs are counted by n!
            got = sum(len(P.operations(ins, e)) * math.factorial(k)
                      for k in range(n + 1) for ins in P.input_multisets(e, k))
            want = subtree_operation_count(tree, e)
            if got != want:
                res.fail(f"{tree} at {e}: {got} operations, {want} from subtrees")
    return res


@_timed
def check_generation(max_vertices: int = 4, max_arity: int = 3) -> Check:
    """Every tree morphism factors into faces, degeneracies and isomorphisms and recomposes."""
    res = Check("generation")
    allowed = {"inner_face", "external_face", "degeneracy", "isomorphism"}
    trees = enumerate_trees(max_vertices, max_arity)
    for s, t in itertools.product(trees, trees):
        for f in enumerate_tree_morphisms(s, t):
            res.count += 1
            fac = factorize(f)
            if fac.compose() != f:
                res.fail(f"{f} does not recompose")
            elif not set(fac.kinds) <= allowed:
                res.fail(f"{f} uses {sorted(set(fac.kinds) - allowed)}")
    return res


def _forests(max_edges: int) -> Iterator[Forest]:
    """Nonempty multisets of canonical trees with at most ``max_edges`` edges in total."""
    pool = list(iter_all_trees_edges(max_edges))

    def go(start: int, budget: int, chosen: list[Tree]) -> Iterator[Forest]:
        if chosen:
            yield Forest(tuple(chosen))
        for i in range(start, len(pool)):
            t = pool[i]
            if len(t.edges) <= budget:
                chosen.append(t)
                yield from go(i, budget - len(t.edges), chosen)
                chosen.pop()

    yield from go(0, max_edges, [])


@_timed
def check_wideness_lemma(source_edges: int = 6, target_edges: int = 5) -> Check:
    """For independent maps into a tree, path wideness agrees with the operation criterion."""
    res = Check("wideness_lemma")
    targets = list(iter_all_trees_edges(target_edges))
    for forest in _forests(source_edges):
        for tree in targets:
            if len(forest) > len(tree.edges):
                continue
            for f in enumerate_forest_morphisms(forest, tree, independent_only=True):
                res.count += 1
                if is_wide(f) != wide_lemma_check(f):
                    res.fail(f"{forest} -> {tree}: paths say {is_wide(f)}")
    return res


@_timed
def check_wide_decomposition(source_edges: int = 6, target_edges: int = 5) -> Check:
    """Wide independent maps factor as root faces then root-preserving maps, recomposing exactly."""
    res = Check("wide_decomposition")
    targets = list(iter_all_trees_edges(target_edges))
    for forest in _forests(source_edges):
        for tree in targets:
            if len(forest) > len(tree.edges):
                continue
            for f in enumerate_forest_morphisms(forest, tree, independent_only=True):
                if not is_wide(f):
                    continue
                res.count += 1
                gens = decompose_wide_independent(f)
                if recompose(gens) != f:
                    res.fail(f"{forest} -> {tree}: recomposition differs")
                for g in gens:
                    if g.kind == "root_preserving" and not all(m.is_root_preserving for m in g.morphism.maps):
                        res.fail(f"{forest} -> {tree}: a root-preserving stage moves a root")
                    if g.kind == "root_face" and not (is_wide(g.morphism) and is_independent(g.morphism)):
                        res.fail(f"{forest} -> {tree}: a root-face stage is not wide and independent")
    return res


# -- operads of elements ------------------------------------------------------------

@_timed
def check_sigma_free(max_vertices: int = 4, max_arity: int = 3, object_bound: int = 3,
                     op_arity: int = 3, skeletal: bool = True) -> Check:
    """``Omega/X`` is Sigma-free for representables and for the nerve of ``free(C_2)``.

    Stabilizers of isomorphic operations are conjugate, so the skeletal
    suboperad decides the question for the whole operad.
    """
    res = Check("sigma_free")
    cases = [(f"Omega[{t}]", representable(t)) for t in enumerate_trees(max_vertices, max_arity)]
    cases.append(("N(free(C_2))", NerveBackend(TreeOperad(tree_from_shape("(||)")))))
    for name, X in cases:
        res.count += 1
        E = ElementsOperad(X, object_bound, skeletal=skeletal)
        if not is_sigma_free(E, op_arity):
            res.fail(f"Omega/{name} is not Sigma-free")
    res.notes.append(f"object trees <= {object_bound} vertices, operations of arity <= {op_arity}"
                     + (", skeletal" if skeletal else ""))
    return res


ROOT_CORE_TIERS: tuple[tuple[int, int, int | None], ...] = ((3, 0, None), (4, 4, 2), (5, 5, 1))


@_timed
def check_root_core(tiers: tuple[tuple[int, int, int | None], ...] = ROOT_CORE_TIERS, max_arity: int = 3,
                    skeletal: bool = True) -> Check:
    """``r l = id``, existence, uniqueness and rootedness of ``h``, and interchange, per tree.

    A tier ``(max_vertices, min_vertices, object_bound)`` covers trees in that
    vertex range with object trees truncated at ``object_bound`` (``None``:
    the size of ``T``) on top of the objects of the section.
    """
    res = Check("root_core")
    for hi, lo, ob in tiers:
        for T in enumerate_trees(hi, max_arity, min_vertices=lo):
            res.count += 1
            for msg in root_core_failures(T, object_bound=ob, skeletal=skeletal):
                res.fail(f"{T}: {msg}")
        res.notes.append(f"trees with {lo}..{hi} vertices, object bound {ob if ob is not None else 'size of T'}")
    return res


@_timed
def check_naturality(max_vertices: int = 2, bound: int = 2) -> Check:
    """``r_X . (Omega/alpha) = alpha . r_T`` for every dendrex ``alpha: Omega[T] -> X``."""
    res = Check("naturality")
    for name, X in nerve_backends()[:3]:
        for T in enumerate_trees(max_vertices, 2):
            n = len(X.dendrices(T))
            if not n:
                continue
            res.count += n
            for msg in naturality_failures(T, X, bound):
                res.fail(f"{name} at {T}: {msg}")
    return res


@_timed
def check_segal(max_vertices: int = 4, max_arity: int = 3) -> Check:
    """Restriction along every grafting decomposition is a bijection."""
    res = Check("segal")
    for name, X in nerve_backends():
        for T in enumerate_trees(max_vertices, max_arity):
            for a, _, _ in grafting_decompositions(T):
                res.count += 1
                ok, _ = segal_check(X.operad, T, a)
                if not ok:
                    res.fail(f"{name} at {T} over {a}")
    return res


@_timed
def check_last_vertex(dimension: int = 3) -> Check:
    """On the nerve of the poset ``[2]`` the root functor is the last vertex functor."""
    res = Check("last_vertex")
    P = TreeOperad(linear(2))
    X = NerveBackend(P)
    E = ElementsOperad(X, dimension, max_arity=1)
    r = RootFunctor(E)
    for obj in E.objects:
        if not obj.tree.is_linear:
            continue
        res.count += 1
        if r.on_objects(obj) != last_vertex(obj.element):
            res.fail(f"objects: {obj}")
    for op in E.iter_operations(1):
        res.count += 1
        (theta,) = op.maps
        if r.on_ops(op) != last_vertex_on_arrow(theta, op.output.element, P):
            res.fail(f"arrows: {op}")
    return res


# -- tensor, décalage, horns, algebras ------------------------------------------------

TENSOR_FIGURE_BOUND = 3


@_timed
def check_tensor(pair_vertices: int = 2, nerve_factor_vertices: int = 1, nerve_tree_vertices: int = 2,
                 max_bound: int = 6) -> Check:
    """Objects multiply, the interchange figure holds, and nerves of tensors match the oracle."""
    res = Check("tensor")
    trees = enumerate_trees(pair_vertices, 2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TensorBoundWarning)
        for T, S in itertools.product(trees, trees):
            res.count += 1
            TS = tensor(TreeOperad(T), TreeOperad(S), 1, check_frontier=False)
            if len(TS.objects) != len(T.edges) * len(S.edges):
                res.fail(f"{T} (x) {S}: {len(TS.objects)} objects")
        c3, c1 = tree_from_shape("(|||)"), tree_from_shape("(|)")
        TP = tensor(TreeOperad(c3), TreeOperad(c1), TENSOR_FIGURE_BOUND)
        res.count += 1
        if TP.frontier_touched:
            res.fail("interchange figure: closure frontier touched")
        if not _figure_composites_agree(TP, c3, c1):
            res.fail("interchange figure: the two composites are different classes")
        small = enumerate_trees(nerve_factor_vertices, 2)
        targets = enumerate_trees(nerve_tree_vertices, 2)
        for T, S in itertools.product(small, small):
            for R in targets:
                res.count += 1
                cmp = None
                for b in range(2, max_bound + 1):
                    cmp = compare_tensor_nerve(T, S, R, b)
                    if cmp.conclusive:
                        break
                if not cmp.conclusive:
                    res.fail(f"{T} (x) {S} at {R}: frontier touched up to bound {max_bound}")
                elif not cmp.agree:
                    res.fail(f"{T} (x) {S} at {R}: {cmp.closure_count} vs {cmp.oracle_count}")
    return res


def _figure_composites_agree(TP, c3: Tree, c1: Tree) -> bool:
    """``p (x) 1`` then three copies of ``1 (x) q`` against ``1 (x) q`` then ``p (x) 1``."""
    P, Q = TP.P, TP.Q
    p = P.operations(c3.inputs(c3.root), c3.root)[0]
    q = Q.operations(c1.inputs(c1.root), c1.root)[0]
    (leaf,) = c1.inputs(c1.root)
    top = TP.p_gen(p, c1.root)
    lhs = top
    for i in reversed(range(3)):
        lhs = TP.compose(lhs, i, TP.q_gen(c3.inputs(c3.root)[i], q))
    rhs = TP.compose(TP.q_gen(c3.root, q), 0, TP.p_gen(p, leaf))
    return TP.same_class(lhs, TP.act(rhs, _grid_perm(3, 1)))


def _grid_perm(n: int, m: int) -> tuple[int, ...]:
    from .tensor import sigma_nm
    return sigma_nm(n, m)


@_timed
def check_decalage(bound: int = 3, max_arity: int = 2, op_arity: int = 3, functor_bound: int = 2) -> Check:
    """The dendroidal décalage axioms, and the generic operad of elements against the module one."""
    res = Check("decalage")
    report = validate_decalage(dendroidal_decalage(bound, max_arity))
    res.count += sum(r.checked for r in report.results)
    for r in report.results:
        if not r.passed:
            res.fail(f"{r.name}: {r.witness}")
    rooted = validate_decalage(dendroidal_decalage(bound, max_arity, root_preserving_only=True))
    res.notes.append("root-preserving subcategory: " + ("all axioms pass" if rooted.passed
                                                       else "fails " + ", ".join(rooted.failed())))
    P = TreeOperad(tree_from_shape("(||)"))
    d = dendroidal_decalage(bound, max_arity)
    G = GenericElementsOperad(d, NervePresheaf(d, P))
    E = ElementsOperad(NerveBackend(P), bound)
    if {(a, x) for a, x in G.objects} != {(o.tree, o.element) for o in E.objects}:
        res.fail("generic and module operads of elements have different objects")
    gen_ops = {(tuple(op.inputs), op.output, op.arrows) for op in G.iter_operations(op_arity)}
    mod_ops = {(tuple((o.tree, o.element) for o in op.inputs), (op.output.tree, op.output.element), op.maps)
               for op in E.iter_operations(op_arity)}
    res.count += len(gen_ops)
    if gen_ops != mod_ops:
        res.fail(f"operations differ: {len(gen_ops - mod_ops)} only generic, {len(mod_ops - gen_ops)} only module")
    final = final_object_functor(d, P, G)
    root = RootFunctor(E)
    for op in G.iter_operations(op_arity):
        if final.on_ops(op) != root.on_ops(_as_element_op(op)):
            res.fail(f"final object functor differs from the root functor at {op}")
            break
    d_small = dendroidal_decalage(functor_bound, max_arity)
    small = final_object_functor(d_small, P)
    problems = small.check(op_arity)
    problems += check_operad_axioms(small.source, op_arity)
    for msg in problems:
        res.fail(f"final object functor at bound {functor_bound}: {msg}")
    return res


def _as_element_op(op):
    from .elements import ElementObject, ElementOp
    return ElementOp(tuple(ElementObject(a, x) for a, x in op.inputs), ElementObject(*op.output), op.arrows)


@_timed
def check_horns(max_vertices: int = 4, max_arity: int = 3) -> Check:
    """Every inner horn over a nerve has exactly one filler."""
    res = Check("horns")
    for name, X in nerve_backends():
        for T in enumerate_trees(max_vertices, max_arity):
            for label in elementary_faces(T):
                if label[0] != "inner":
                    continue
                for n in horn_filler_counts(X, T, label):
                    res.count += 1
                    if n != 1:
                        res.fail(f"{name} at {T} missing {label}: {n} fillers")
    return res


@_timed
def check_locally_constant(carrier_bound: int = 2) -> Check:
    """On the arrow ``0 -> 1`` the locally constant algebras are exactly the bijective ones."""
    res = Check("locally_constant")
    P = TreeOperad(linear(1))
    (gen,) = P.operations(["0"], "1")
    algebras = enumerate_algebras(P, carrier_bound)
    total, bijective = count_functions_oracle(carrier_bound)
    res.count = len(algebras)
    if len(algebras) != total:
        res.fail(f"{len(algebras)} algebras, expected {total}")
    kept = [a for a in algebras if is_locally_constant(a, [gen])]
    direct = [a for a in algebras
              if a.sizes["0"] == a.sizes["1"] and len(set(a.unary_map(gen))) == a.sizes["0"]]
    if kept != direct or len(kept) != bijective:
        res.fail(f"filter keeps {len(kept)}, {len(direct)} are bijective, oracle says {bijective}")
    return res


# -- named suites -----------------------------------------------------------------------

MAX_BOUND = {"trees": 6, "operads": 5, "forests": 6, "elements": 4, "root": 5, "tensor": 3,
             "decalage": 3, "algebras": 3}


def _suite_checks(name: str, k: int) -> list[Callable[[], Check]]:
    if name == "trees":
        return [lambda: check_subtree_operations(k), lambda: check_generation(min(k, 4))]
    if name == "operads":
        return [lambda: check_segal(k), lambda: check_horns(k)]
    if name == "forests":
        return [lambda: check_wideness_lemma(k + 1, k), lambda: check_wide_decomposition(k + 1, k)]
    if name == "elements":
        return [lambda: check_sigma_free(k, object_bound=min(k, 3)), lambda: check_naturality(min(k, 2), min(k, 2))]
    if name == "root":
        tiers = tuple(t for t in ROOT_CORE_TIERS if t[0] <= k) if k >= 3 else ((k, 0, None),)
        return [lambda: check_root_core(tiers), check_last_vertex]
    if name == "tensor":
        return [lambda: check_tensor(min(k, 2), 1, min(k, 2))]
    if name == "decalage":
        return [lambda: check_decalage(k, functor_bound=min(k, 2))]
    if name == "algebras":
        return [lambda: check_locally_constant(k)]
    raise SuiteError(f"unknown suite {name!r}")


SUITES = ("trees", "operads", "forests", "elements", "root", "tensor", "decalage", "algebras")


def run_suite(name: str, bound: int) -> dict:
    """Run a named suite (or ``all``) and return a JSON-ready report."""
    names = SUITES if name == "all" else (name,)
    if bound < 1:
        raise SuiteError("the bound must be positive")
    checks = []
    for n in names:
        if n not in MAX_BOUND:
            raise SuiteError(f"unknown suite {n!r}")
        k = bound if name != "all" else min(bound, MAX_BOUND[n])
        if k > MAX_BOUND[n]:
            raise SuiteError(f"bound {bound} is too large for suite {n!r} (at most {MAX_BOUND[n]})")
        for thunk in _suite_checks(n, k):
            c = thunk()
            checks.append({"suite": n, **c.to_json()})
    return {"schema": "dendro/1", "kind": "report", "suite": name, "bound": bound,
            "passed": all(c["passed"] for c in checks), "checks": checks}
