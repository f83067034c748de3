"""Operadic décalage on a finite category: axioms, operad of elements, final object functor.

The category ``A`` is given by callables rather than a table so that the
dendroidal case can use tree morphisms directly. ``D`` may leave the chosen
objects of ``A`` (the join of a tree with ``eta`` has one more vertex), so
everything about ``D`` is only ever evaluated, never enumerated.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterator, Sequence

from .dendroidal.morphisms import MorphismError, TreeMorphism, enumerate_tree_morphisms
from .dendroidal.presheaves import NerveBackend
from .operads import Dendrex, FiniteOperad, OperadError, OperadMorphism, TreeOperad, object_poset
from .trees import Tree, enumerate_trees, join_eta, linear, tree_from_shape

__all__ = [
    "DecalageError", "DecalageData", "AxiomResult", "DecalageReport", "validate_decalage",
    "FinitePresheaf", "NervePresheaf", "GenericOp", "GenericElementsOperad",
    "generic_elements_operad", "final_object_functor", "dendroidal_decalage",
    "simplicial_decalage", "naturality_in_operad_failures", "postcompose_presheaf_map",
]

Arrow = Any


class DecalageError(ValueError):
    pass


@dataclass
class DecalageData:
    objects: Sequence[Hashable]
    hom: Callable[[Hashable, Hashable], Sequence[Arrow]]
    compose: Callable[[Arrow, Arrow], Arrow]  # compose(g, f) = g . f
    identity: Callable[[Hashable], Arrow]
    source: Callable[[Arrow], Hashable]
    target: Callable[[Arrow], Hashable]
    omega: Callable[[Hashable], FiniteOperad]
    omega_map: Callable[[Arrow], OperadMorphism]
    root: Callable[[Hashable], Hashable]
    base: Hashable  # the object omega
    shift: Callable[[Hashable], Hashable]  # D on objects
    shift_map: Callable[[Arrow], Arrow]  # D on arrows
    iota: Callable[[Hashable], Arrow]  # a -> D a
    gamma: Callable[[Hashable], Arrow]  # omega -> D a
    max_arity: int = 3
    name: str = "A"

    def arrows(self) -> Iterator[Arrow]:
        for a in self.objects:
            for b in self.objects:
                yield from self.hom(a, b)


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: str | None = None
    checked: int = 0

    def to_json(self) -> dict:
        return {"axiom": self.name, "passed": self.passed, "witness": self.witness, "checked": self.checked}


@dataclass
class DecalageReport:
    results: list[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {"passed": self.passed, "axioms": [r.to_json() for r in self.results]}


# -- helpers on operads ----------------------------------------------------------

def _all_ops(P: FiniteOperad, max_arity: int) -> list:
    return list(P.iter_operations(P.arity_bound(max_arity)))


def _map_object_set(F: OperadMorphism) -> dict:
    return {x: F.on_objects(x) for x in F.source.objects}


# -- axioms ---------------------------------------------------------------------

def _check_final(d: DecalageData) -> AxiomResult:
    checked = 0
    for a in d.objects:
        P, r = d.omega(a), d.root(a)
        if not P.objects:
            continue
        if r not in P.objects:
            return AxiomResult("root_final", False, f"{r!r} is not an object of Omega({a!r})", checked)
        seen: set = set()
        for n in range(P.arity_bound(d.max_arity) + 1):
            for op in P.operations_into(r, n):
                checked += 1
                ins = P.profile(op)[0]
                if ins in seen:
                    return AxiomResult("root_final", False, f"two operations {ins} -> {r!r} in Omega({a})", checked)
                seen.add(ins)
    return AxiomResult("root_final", True, checked=checked)


def _check_functor(d: DecalageData) -> AxiomResult:
    checked = 0
    for a in d.objects:
        ida = d.omega_map(d.identity(a))
        for x in d.omega(a).objects:
            checked += 1
            if ida.on_objects(x) != x:
                return AxiomResult("omega_functor", False, f"Omega(id_{a}) moves {x!r}", checked)
    for f in d.arrows():
        for b2 in d.objects:
            for g in d.hom(d.target(f), b2):
                gf = d.omega_map(d.compose(g, f))
                Ff, Fg = d.omega_map(f), d.omega_map(g)
                for x in d.omega(d.source(f)).objects:
                    checked += 1
                    if gf.on_objects(x) != Fg.on_objects(Ff.on_objects(x)):
                        return AxiomResult("omega_functor", False, f"Omega does not preserve {g!r} . {f!r}", checked)
    return AxiomResult("omega_functor", True, checked=checked)


def _shift(d: DecalageData, f: Arrow) -> Arrow | None:
    try:
        return d.shift_map(f)
    except DecalageError:
        return None


def _check_shift(d: DecalageData) -> AxiomResult:
    """``D`` is defined on every arrow and preserves identities and composition."""
    res = AxiomResult("shift_functor", True)
    for f in d.arrows():
        res.checked += 1
        Df = _shift(d, f)
        if Df is None:
            res.passed, res.witness = False, f"D is undefined on {f!r}"
            return res
    for a in d.objects:
        res.checked += 1
        if not _same_arrow(d, d.shift_map(d.identity(a)), d.identity(d.shift(a))):
            res.passed, res.witness = False, f"D(id_{a!r}) is not an identity"
            return res
    for f in d.arrows():
        for c in d.objects:
            for g in d.hom(d.target(f), c):
                res.checked += 1
                if not _same_arrow(d, d.shift_map(d.compose(g, f)), d.compose(d.shift_map(g), d.shift_map(f))):
                    res.passed, res.witness = False, f"D does not preserve {g!r} . {f!r}"
                    return res
    return res


def _same_arrow(d: DecalageData, f: Arrow, g: Arrow) -> bool:
    if f == g:
        return True
    Ff, Fg = d.omega_map(f), d.omega_map(g)
    return d.source(f) == d.source(g) and d.target(f) == d.target(g) and \
        all(Ff.on_objects(x) == Fg.on_objects(x) for x in Ff.source.objects)


def _check_naturality(d: DecalageData) -> list[AxiomResult]:
    iota_ok = AxiomResult("iota_natural", True)
    gamma_ok = AxiomResult("gamma_natural", True)
    for f in d.arrows():
        a, b = d.source(f), d.target(f)
        Df = _shift(d, f)
        if Df is None:
            continue
        iota_ok.checked += 1
        if not _same_arrow(d, d.compose(Df, d.iota(a)), d.compose(d.iota(b), f)):
            iota_ok.passed, iota_ok.witness = False, f"iota is not natural at {f!r}"
            break
    for f in d.arrows():
        a, b = d.source(f), d.target(f)
        Df = _shift(d, f)
        if Df is None:
            continue
        gamma_ok.checked += 1
        if not _same_arrow(d, d.compose(Df, d.gamma(a)), d.gamma(b)):
            gamma_ok.passed, gamma_ok.witness = False, f"gamma is not natural at {f!r}"
            break
    return [iota_ok, gamma_ok]


def discrete_fibration_witness(F: OperadMorphism, max_arity: int, unique_lifts: bool = True) -> str | None:
    """Injective on objects, fully faithful, and operations into the image lift."""
    src, tgt = F.source, F.target
    objs = _map_object_set(F)
    inverse: dict = {}
    for x, y in objs.items():
        if y in inverse:
            return f"objects {inverse[y]!r} and {x!r} have the same image"
        inverse[y] = x
    for n in range(tgt.arity_bound(max_arity) + 1):
        for y in inverse:
            for q in tgt.operations_into(y, n):
                ins = tgt.profile(q)[0]
                if any(c not in inverse for c in ins):
                    return f"operation {q!r} into the image has an input outside it"
                lifts = [p for p in src.operations([inverse[c] for c in ins], inverse[y]) if F.on_ops(p) == q]
                if not lifts:
                    return f"operation {q!r} has no lift"
                if unique_lifts and len(lifts) > 1:
                    return f"operation {q!r} has {len(lifts)} lifts"
    # faithfulness: distinct operations stay distinct
    for p in _all_ops(src, max_arity):
        ins, out = src.profile(p)
        images = [F.on_ops(s) for s in src.operations(ins, out)]
        if len(set(map(tgt.op_key, images))) != len(images):
            return f"operations {ins} -> {out!r} are identified"
    return None


def _check_axiom1(d: DecalageData) -> AxiomResult:
    checked = 0
    for a in d.objects:
        checked += 1
        w = discrete_fibration_witness(d.omega_map(d.iota(a)), d.max_arity)
        if w:
            return AxiomResult("axiom1_discrete_fibration", False, f"at {a!r}: {w}", checked)
    return AxiomResult("axiom1_discrete_fibration", True, checked=checked)


def _check_axiom2(d: DecalageData) -> AxiomResult:
    """The square over each arrow is a pullback of colored collections."""
    checked = 0
    for f in d.arrows():
        a, b = d.source(f), d.target(f)
        shifted = _shift(d, f)
        if shifted is None:
            continue
        checked += 1
        Ff = d.omega_map(f)
        Ia, Ib = d.omega_map(d.iota(a)), d.omega_map(d.iota(b))
        Df = d.omega_map(shifted)
        Oa, Ob, ODa = d.omega(a), d.omega(b), d.omega(d.shift(a))
        # objects of the pullback
        pb_objs = {(x, z) for x in Ob.objects for z in ODa.objects if Ib.on_objects(x) == Df.on_objects(z)}
        comp = {x: (Ff.on_objects(x), Ia.on_objects(x)) for x in Oa.objects}
        if len(set(comp.values())) != len(comp) or set(comp.values()) != pb_objs:
            return AxiomResult("axiom2_cartesian", False, f"objects over {f!r} do not form a pullback", checked)
        # operations of the pullback, compared profile by profile
        ob_ops = _all_ops(Ob, d.max_arity)
        da_ops = _all_ops(ODa, d.max_arity)
        pb_ops = set()
        ib_image = {}
        for p in ob_ops:
            ib_image.setdefault(_key(Ib.target, Ib.on_ops(p)), []).append(p)
        for q in da_ops:
            k = _key(Df.target, Df.on_ops(q))
            for p in ib_image.get(k, ()):
                pb_ops.add((Ob.op_key(p), ODa.op_key(q)))
        comp_ops = [(Ob.op_key(Ff.on_ops(p)), ODa.op_key(Ia.on_ops(p))) for p in _all_ops(Oa, d.max_arity)]
        if len(set(comp_ops)) != len(comp_ops) or set(comp_ops) != pb_ops:
            return AxiomResult("axiom2_cartesian", False, f"operations over {f!r} do not form a pullback", checked)
    return AxiomResult("axiom2_cartesian", True, checked=checked)


def _key(P: FiniteOperad, op) -> str:
    return P.op_key(op)


def _check_axiom3(d: DecalageData) -> AxiomResult:
    checked = 0
    Ow = d.omega(d.base)
    for a in d.objects:
        checked += 1
        G, I = d.omega_map(d.gamma(a)), d.omega_map(d.iota(a))
        image = {I.on_objects(x): x for x in d.omega(a).objects}
        for w in Ow.objects:
            y = G.on_objects(w)
            if y in image:
                return AxiomResult("axiom3_empty_pullback", False,
                                   f"at {a!r}: {w!r} and {image[y]!r} both go to {y!r}", checked)
    return AxiomResult("axiom3_empty_pullback", True, checked=checked)


def validate_decalage(d: DecalageData) -> DecalageReport:
    report = DecalageReport()
    report.results.append(_check_final(d))
    report.results.append(_check_functor(d))
    report.results.append(_check_shift(d))
    report.results.extend(_check_naturality(d))
    report.results.append(_check_axiom1(d))
    report.results.append(_check_axiom2(d))
    report.results.append(_check_axiom3(d))
    return report


# -- presheaves and the operad of elements -----------------------------------------

@dataclass
class FinitePresheaf:
    """A presheaf on ``A``: elements per object and the action of arrows."""

    elements_of: Callable[[Hashable], Sequence[Hashable]]
    action: Callable[[Arrow, Hashable], Hashable]  # action(f, x): X(b) -> X(a) for f: a -> b

    def elements(self, a: Hashable) -> Sequence[Hashable]:
        return self.elements_of(a)

    def act(self, f: Arrow, x: Hashable) -> Hashable:
        return self.action(f, x)


@dataclass(frozen=True)
class OperadMap:
    """An operad map given by tables; used by the generic nerve."""

    objects: tuple[tuple[Hashable, Hashable], ...]
    ops: tuple[tuple[str, Hashable], ...]

    def on_object(self, x: Hashable) -> Hashable:
        return dict(self.objects)[x]

    def on_op_key(self, k: str) -> Hashable:
        return dict(self.ops)[k]


class NervePresheaf:
    """``N_Omega(P)``: operad maps ``Omega(a) -> P``.

    In the dendroidal case the dendrices of the nerve are used directly;
    otherwise maps are found by brute force (only sensible for tiny operads).
    """

    def __init__(self, d: DecalageData, P: FiniteOperad):
        self.d, self.P = d, P
        self._cache: dict = {}

    def elements(self, a: Hashable) -> Sequence[Hashable]:
        if a not in self._cache:
            source = self.d.omega(a)
            if isinstance(source, TreeOperad):
                self._cache[a] = tuple(NerveBackend(self.P).dendrices(source.tree))
            else:
                self._cache[a] = tuple(_brute_force_maps(source, self.P, self.d.max_arity))
        return self._cache[a]

    def act(self, f: Arrow, g: Hashable) -> Hashable:
        if isinstance(g, Dendrex):
            if not isinstance(f, TreeMorphism):
                F = self.d.omega_map(f)
                f = TreeMorphism.from_map(F.source.tree, F.target.tree,
                                          {e: F.on_objects(e) for e in F.source.objects})
            return g.pull_back(f)
        F = self.d.omega_map(f)
        src = F.source
        return OperadMap(tuple((x, g.on_object(F.on_objects(x))) for x in src.objects),
                         tuple((src.op_key(p), g.on_op_key(F.target.op_key(F.on_ops(p))))
                               for p in _all_ops(src, self.d.max_arity)))

    def object_image(self, g: Hashable, x: Hashable) -> Hashable:
        return g.color[x] if isinstance(g, Dendrex) else g.on_object(x)

    def op_image(self, a: Hashable, g: Hashable, op: Hashable) -> Hashable:
        if isinstance(g, Dendrex):
            leaves, root = op
            return g.evaluate(leaves, root)
        return g.on_op_key(self.d.omega(a).op_key(op))


def _brute_force_maps(source: FiniteOperad, target: FiniteOperad, max_arity: int) -> Iterator[OperadMap]:
    src_objs = list(source.objects)
    src_ops = _all_ops(source, max_arity)
    for colors in itertools.product(target.objects, repeat=len(src_objs)):
        col = dict(zip(src_objs, colors))
        choices = []
        for p in src_ops:
            ins, out = source.profile(p)
            choices.append(target.operations([col[c] for c in ins], col[out]))
        for combo in itertools.product(*choices):
            table = {source.op_key(p): q for p, q in zip(src_ops, combo)}
            F = OperadMorphism(source, target, col.__getitem__, lambda p, t=table: t[source.op_key(p)])
            if not F.check(max_arity):
                yield OperadMap(tuple(col.items()), tuple(table.items()))


@dataclass(frozen=True)
class GenericOp:
    inputs: tuple[tuple[Hashable, Hashable], ...]
    output: tuple[Hashable, Hashable]
    arrows: tuple[Arrow, ...]


class GenericElementsOperad(FiniteOperad):
    """``A/X``: elements ``(a, x)``; operations are independent wide families of arrows over ``X``."""

    def __init__(self, d: DecalageData, X: FinitePresheaf | NervePresheaf):
        self.d, self.X = d, X
        self._posets: dict = {}
        self.max_arity = d.max_arity

    @property
    def objects(self) -> tuple:
        return tuple((a, x) for a in self.d.objects for x in self.X.elements(a))

    def _incomparable(self, b: Hashable, x: Hashable, y: Hashable) -> bool:
        if b not in self._posets:
            self._posets[b] = object_poset(self.d.omega(b), self.d.max_arity)
        leq = self._posets[b]
        return x != y and (x, y) not in leq and (y, x) not in leq

    def operations_into(self, output, arity: int) -> Iterator[GenericOp]:
        b, g = output
        d = self.d
        Ob = d.omega(b)
        candidates = []
        for a in d.objects:
            for phi in d.hom(a, b):
                candidates.append((phi, d.omega_map(phi).on_objects(d.root(a)), (a, self.X.act(phi, g))))
        chosen: list = []

        def go() -> Iterator[GenericOp]:
            if len(chosen) == arity:
                roots = [c[1] for c in chosen]
                if Ob.operations(roots, d.root(b)):
                    yield GenericOp(tuple(c[2] for c in chosen), output, tuple(c[0] for c in chosen))
                return
            for cand in candidates:
                if all(self._incomparable(b, cand[1], c[1]) for c in chosen):
                    chosen.append(cand)
                    yield from go()
                    chosen.pop()

        yield from go()

    def operations(self, inputs, output) -> tuple[GenericOp, ...]:
        inputs = tuple(inputs)
        return tuple(op for op in self.operations_into(output, len(inputs)) if op.inputs == inputs)

    def profile(self, op: GenericOp):
        return op.inputs, op.output

    def compose(self, p: GenericOp, i: int, q: GenericOp) -> GenericOp:
        if p.inputs[i] != q.output:
            raise OperadError("cannot compose: colors differ")
        inner = tuple(self.d.compose(p.arrows[i], psi) for psi in q.arrows)
        return GenericOp(p.inputs[:i] + q.inputs + p.inputs[i + 1:], p.output,
                         p.arrows[:i] + inner + p.arrows[i + 1:])

    def act(self, p: GenericOp, sigma) -> GenericOp:
        return GenericOp(tuple(p.inputs[s] for s in sigma), p.output, tuple(p.arrows[s] for s in sigma))

    def unit(self, c) -> GenericOp:
        return GenericOp((c,), c, (self.d.identity(c[0]),))

    def op_key(self, op: GenericOp) -> str:
        return repr((op.output, op.arrows))


def generic_elements_operad(d: DecalageData, X: FinitePresheaf | NervePresheaf) -> GenericElementsOperad:
    return GenericElementsOperad(d, X)


def final_object_functor(d: DecalageData, P: FiniteOperad,
                         E: GenericElementsOperad | None = None) -> OperadMorphism:
    """``A/N_Omega(P) -> P``: ``(a, f) -> f(r_a)``; an operation goes to the image of the unique
    operation ``phi_1(r), ..., phi_n(r) -> r_b`` of ``Omega(b)``."""
    N = E.X if E is not None else NervePresheaf(d, P)
    E = E or GenericElementsOperad(d, N)

    def on_objects(obj):
        a, f = obj
        return N.object_image(f, d.root(a))

    def on_ops(op: GenericOp):
        b, g = op.output
        Ob = d.omega(b)
        roots = [d.omega_map(phi).on_objects(d.root(d.source(phi))) for phi in op.arrows]
        (unique,) = Ob.operations(roots, d.root(b))
        return N.op_image(b, g, unique)

    return OperadMorphism(E, P, on_objects, on_ops)


def postcompose_presheaf_map(u: OperadMorphism, g: Hashable) -> Hashable:
    """``u . g`` for a dendrex or a tabulated map ``g`` into the source of ``u``."""
    if isinstance(g, Dendrex):
        return Dendrex(g.tree, tuple((e, u.on_objects(c)) for e, c in g.colors),
                       tuple((v, u.on_ops(p)) for v, p in g.vertex_ops), u.target)
    return OperadMap(tuple((x, u.on_objects(y)) for x, y in g.objects),
                     tuple((k, u.on_ops(q)) for k, q in g.ops))


def naturality_in_operad_failures(d: DecalageData, u: OperadMorphism, limit: int = 5) -> list[str]:
    """``r_Q . (A/N(u)) == u . r_P`` for an operad map ``u: P -> Q``."""
    rP = final_object_functor(d, u.source)
    rQ = final_object_functor(d, u.target)
    EP = rP.source
    problems = []
    for obj in EP.objects:
        a, g = obj
        if rQ.on_objects((a, postcompose_presheaf_map(u, g))) != u.on_objects(rP.on_objects(obj)):
            problems.append(f"objects: {obj!r}")
    for op in EP.iter_operations(d.max_arity):
        moved = GenericOp(tuple((a, postcompose_presheaf_map(u, f)) for a, f in op.inputs),
                          (op.output[0], postcompose_presheaf_map(u, op.output[1])), op.arrows)
        if rQ.on_ops(moved) != u.on_ops(rP.on_ops(op)):
            problems.append(f"operations: {op!r}")
        if len(problems) >= limit:
            break
    return problems


# -- instances ------------------------------------------------------------------------

def dendroidal_decalage(bound: int, max_arity: int = 2, root_preserving_only: bool = False) -> DecalageData:
    """Trees with at most ``bound`` vertices, ``Omega(T)`` free, ``r_T`` the root, ``omega = eta``, ``D = - * eta``.

    The join is not defined on every map: the new vertex of ``S * eta`` needs
    a unary operation ``f(r_S) -> r`` in ``Omega(T * eta)``, which exists only
    when the path from ``f(r_S)`` down to the root of ``T`` is linear. On the
    other arrows ``shift_map`` raises and the validator reports it.
    ``root_preserving_only`` restricts the arrows to the subcategory where
    ``D`` is a functor.
    """
    trees = enumerate_trees(bound, max_arity)
    eta = tree_from_shape("|")
    joins: dict[Tree, tuple[Tree, TreeMorphism, TreeMorphism]] = {}
    operads: dict[Tree, TreeOperad] = {}

    def omega(t: Tree) -> TreeOperad:
        if t not in operads:
            operads[t] = TreeOperad(t)
        return operads[t]

    def join(t: Tree) -> tuple[Tree, TreeMorphism, TreeMorphism]:
        if t not in joins:
            big, incl, at_root = join_eta(t)
            iota = TreeMorphism.from_map(t, big, incl)
            gamma = TreeMorphism.from_map(eta, big, {eta.root: at_root["e"]})
            joins[t] = (big, iota, gamma)
        return joins[t]

    def shift_map(f: TreeMorphism) -> TreeMorphism:
        S, _, _ = join(f.source)
        T, _, _ = join(f.target)
        m = dict(f.edge_map)
        m[S.root] = T.root
        try:
            return TreeMorphism.from_map(S, T, m)
        except MorphismError:
            raise DecalageError(f"the join is not defined on {f!r}: no operation "
                                f"{f(f.source.root)} -> {T.root} in Omega({T})") from None

    homs: dict = {}

    def hom(a: Tree, b: Tree):
        if (a, b) not in homs:
            maps = enumerate_tree_morphisms(a, b)
            if root_preserving_only:
                maps = [f for f in maps if f(a.root) == b.root]
            homs[(a, b)] = maps
        return homs[(a, b)]

    def omega_map(f: TreeMorphism) -> OperadMorphism:
        m = f.edge_map
        return OperadMorphism(omega(f.source), omega(f.target), m.__getitem__,
                              lambda op: (tuple(m[l] for l in op[0]), m[op[1]]))

    return DecalageData(
        objects=trees, hom=hom, compose=lambda g, f: f.then(g),
        identity=lambda t: TreeMorphism.from_map(t, t, {e: e for e in t.edges}),
        source=lambda f: f.source, target=lambda f: f.target,
        omega=omega, omega_map=omega_map, root=lambda t: t.root, base=eta,
        shift=lambda t: join(t)[0], shift_map=shift_map,
        iota=lambda t: join(t)[1], gamma=lambda t: join(t)[2],
        max_arity=max(max_arity, 1) + 1 if bound else 1,
        name=f"trees<={bound}" + (" (root preserving)" if root_preserving_only else ""),
    )


@dataclass(frozen=True)
class Monotone:
    """A monotone map ``[m] -> [n]`` given by its values."""

    values: tuple[int, ...]
    n: int

    @property
    def m(self) -> int:
        return len(self.values) - 1


def simplicial_decalage(bound: int) -> DecalageData:
    """``[0], ..., [bound]`` with ``Omega([n])`` the chain ``0 < ... < n`` as a unary operad,
    ``r = n``, ``omega = [0]`` and ``D = - * [0]``."""
    chains = {n: TreeOperad(_chain(n)) for n in range(bound + 2)}

    def hom(m: int, n: int):
        return [Monotone(v, n) for v in itertools.combinations_with_replacement(range(n + 1), m + 1)]

    def omega_map(f: Monotone) -> OperadMorphism:
        m = {str(i): str(v) for i, v in enumerate(f.values)}
        return OperadMorphism(chains[f.m], chains[f.n], m.__getitem__,
                              lambda op: (tuple(m[l] for l in op[0]), m[op[1]]))

    return DecalageData(
        objects=list(range(bound + 1)), hom=hom,
        compose=lambda g, f: Monotone(tuple(g.values[v] for v in f.values), g.n),
        identity=lambda n: Monotone(tuple(range(n + 1)), n),
        source=lambda f: f.m, target=lambda f: f.n,
        omega=lambda n: chains[n], omega_map=omega_map, root=lambda n: str(n), base=0,
        shift=lambda n: n + 1, shift_map=lambda f: Monotone(f.values + (f.n + 1,), f.n + 1),
        iota=lambda n: Monotone(tuple(range(n + 1)), n + 1),
        gamma=lambda n: Monotone((n + 1,), n + 1),
        max_arity=1, name=f"simplices<={bound}",
    )


def _chain(n: int) -> Tree:
    return linear(n)
