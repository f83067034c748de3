"""Finite colored symmetric operads.

Conventions used throughout the package:

* ``compose(p, i, q)`` plugs ``q`` into the ``i``-th input of ``p``; the inputs
  of the result are ``p.inputs[:i] + q.inputs + p.inputs[i+1:]``.
* ``act(p, sigma)`` is the right action: the inputs of the result are
  ``(p.inputs[sigma[0]], p.inputs[sigma[1]], ...)``, so that
  ``act(act(p, tau), sigma) == act(p, compose_perm(tau, sigma))``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .categories import Arrow, FiniteCategory
from .trees import Tree

Op = Hashable
Perm = tuple[int, ...]


class OperadError(ValueError):
    pass


def compose_perm(tau: Perm, sigma: Perm) -> Perm:
    """``(tau sigma)[k] = tau[sigma[k]]``."""
    return tuple(tau[s] for s in sigma)


def invert_perm(sigma: Perm) -> Perm:
    inv = [0] * len(sigma)
    for k, s in enumerate(sigma):
        inv[s] = k
    return tuple(inv)


def perm_between(source: Sequence, target: Sequence) -> Perm:
    """The permutation ``sigma`` with ``target[k] == source[sigma[k]]`` (entries distinct)."""
    index = {x: k for k, x in enumerate(source)}
    if len(index) != len(source) or sorted(map(repr, source)) != sorted(map(repr, target)):
        raise OperadError("sequences are not permutations of each other")
    return tuple(index[x] for x in target)


def sort_key(x: Any) -> str:
    return repr(x)


class FiniteOperad(ABC):
    """Abstract colored symmetric operad with finitely many colors."""

    #: maximal arity of a non-empty operation set, ``None`` if unbounded
    max_arity: int | None = None

    @property
    @abstractmethod
    def objects(self) -> tuple: ...

    @abstractmethod
    def operations(self, inputs: Sequence, output: Hashable) -> tuple[Op, ...]: ...

    @abstractmethod
    def profile(self, op: Op) -> tuple[tuple, Hashable]: ...

    @abstractmethod
    def compose(self, p: Op, i: int, q: Op) -> Op: ...

    @abstractmethod
    def act(self, p: Op, sigma: Perm) -> Op: ...

    @abstractmethod
    def unit(self, c: Hashable) -> Op: ...

    def arity(self, op: Op) -> int:
        return len(self.profile(op)[0])

    def is_unit(self, op: Op) -> bool:
        ins, out = self.profile(op)
        return len(ins) == 1 and ins[0] == out and op == self.unit(out)

    def operations_into(self, output: Hashable, arity: int) -> Iterator[Op]:
        """All operations with the given output and arity (brute force over input colors)."""
        for ins in itertools.product(self.objects, repeat=arity):
            yield from self.operations(ins, output)

    def arity_bound(self, max_arity: int | None) -> int:
        if self.max_arity is not None:
            return self.max_arity if max_arity is None else min(self.max_arity, max_arity)
        if max_arity is None:
            raise OperadError("operad has unbounded arity; pass max_arity")
        return max_arity

    def input_multisets(self, output: Hashable, arity: int) -> Iterator[tuple]:
        """Input profiles of operations into ``output``, one per reordering."""
        seen = set()
        for op in self.operations_into(output, arity):
            ins = self.profile(op)[0]
            key = frozenset(Counter(ins).items())
            if key not in seen:
                seen.add(key)
                yield ins

    def iter_operations(self, max_arity: int | None = None) -> Iterator[Op]:
        bound = self.arity_bound(max_arity)
        for n in range(bound + 1):
            for c in self.objects:
                yield from self.operations_into(c, n)

    def full_composite(self, p: Op, children: Sequence[Op]) -> Op:
        """``p(q_0, ..., q_{n-1})``."""
        result = p
        for i in reversed(range(len(children))):
            result = self.compose(result, i, children[i])
        return result

    def op_key(self, op: Op) -> str:
        return sort_key(op)


# -- concrete operads --------------------------------------------------------

class TreeOperad(FiniteOperad):
    """The free operad on a tree.

    Operations are pairs ``(leaves, root)``: a subtree with root ``root`` whose
    leaf set is ``leaves``, listed in the order of the inputs.
    """

    def __init__(self, tree: Tree):
        self.tree = tree
        self.max_arity = max((len(c) for e in tree.edges for c in tree.cuts(e)), default=1)

    @property
    def objects(self) -> tuple:
        return self.tree.edges

    def operations(self, inputs, output):
        inputs = tuple(inputs)
        if self.tree.has_operation(inputs, output):
            return ((inputs, output),)
        return ()

    def input_multisets(self, output, arity):
        for cut in self.tree.cuts(output):
            if len(cut) == arity:
                yield tuple(sorted(cut))

    def operations_into(self, output, arity):
        for cut in self.tree.cuts(output):
            if len(cut) == arity:
                for order in itertools.permutations(sorted(cut)):
                    yield (order, output)

    def profile(self, op):
        return op

    def compose(self, p, i, q):
        (pl, pr), (ql, qr) = p, q
        if pl[i] != qr:
            raise OperadError(f"cannot plug {q} into input {i} of {p}")
        return (pl[:i] + ql + pl[i + 1:], pr)

    def act(self, p, sigma):
        leaves, root = p
        return (tuple(leaves[s] for s in sigma), root)

    def unit(self, c):
        return ((c,), c)

    def subtree_of(self, op) -> Tree:
        leaves, root = op
        return self.tree.subtree(root, leaves)

    def __repr__(self) -> str:
        return f"TreeOperad({self.tree})"


def free_operad(tree: Tree) -> TreeOperad:
    return TreeOperad(tree)


class CommutativeOperad(FiniteOperad):
    """One color ``*`` and exactly one operation ``("com", n)`` in every arity."""

    def __init__(self, color: Hashable = "*"):
        self.color = color

    @property
    def objects(self):
        return (self.color,)

    def operations(self, inputs, output):
        if output == self.color and all(c == self.color for c in inputs):
            return (("com", len(inputs)),)
        return ()

    def operations_into(self, output, arity):
        if output == self.color:
            yield ("com", arity)

    def profile(self, op):
        return (self.color,) * op[1], self.color

    def compose(self, p, i, q):
        return ("com", p[1] + q[1] - 1)

    def act(self, p, sigma):
        return p

    def unit(self, c):
        return ("com", 1)

    def __repr__(self) -> str:
        return "CommutativeOperad()"


@dataclass(frozen=True)
class NamedOp:
    name: str
    inputs: tuple
    output: Hashable

    def __repr__(self) -> str:
        return self.name


class TableOperad(FiniteOperad):
    """An operad given by explicit tables.

    Units are added as ``id_<color>`` unless supplied. Missing Sigma-action
    entries are generated from the supplied ones; every composable pair must be
    listed unless one side is a unit.
    """

    def __init__(self, objects: Iterable[Hashable], operations: Iterable[tuple[str, Sequence, Hashable]],
                 compositions: Mapping[tuple[str, int, str], str] | None = None,
                 sigma: Mapping[tuple[str, Perm], str] | None = None,
                 units: Mapping[Hashable, str] | None = None, *, check: bool = True):
        self._objects = tuple(objects)
        self.ops: dict[str, NamedOp] = {}
        for name, ins, out in operations:
            self._add(NamedOp(str(name), tuple(ins), out))
        self.units: dict[Hashable, str] = {}
        for c in self._objects:
            name = (units or {}).get(c, f"id_{c}")
            if name not in self.ops:
                self._add(NamedOp(name, (c,), c))
            if self.ops[name].inputs != (c,) or self.ops[name].output != c:
                raise OperadError(f"unit {name} has the wrong profile")
            self.units[c] = name
        self._unit_names = set(self.units.values())
        self.comp = {(p, i, q): r for (p, i, q), r in (compositions or {}).items()}
        self.sigma = self._close_sigma(sigma or {})
        self._by_sig: dict[tuple[tuple, Hashable], list[str]] = {}
        for op in self.ops.values():
            self._by_sig.setdefault((op.inputs, op.output), []).append(op.name)
        self.max_arity = max((len(op.inputs) for op in self.ops.values()), default=1)
        if check:
            problems = check_operad_axioms(self)
            if problems:
                raise OperadError("operad axioms fail: " + "; ".join(problems[:5]))

    def _add(self, op: NamedOp) -> None:
        if op.name in self.ops:
            raise OperadError(f"duplicate operation name {op.name!r}")
        for c in (*op.inputs, op.output):
            if c not in self._objects:
                raise OperadError(f"operation {op.name} uses unknown color {c!r}")
        self.ops[op.name] = op

    def _close_sigma(self, given: Mapping[tuple[str, Perm], str]) -> dict[tuple[str, Perm], str]:
        table = {(p, tuple(s)): r for (p, s), r in given.items()}
        for name, op in self.ops.items():
            n = len(op.inputs)
            table[(name, tuple(range(n)))] = name
        # breadth-first closure: act(p, tau sigma) = act(act(p, tau), sigma)
        changed = True
        while changed:
            changed = False
            for (p, tau), r in list(table.items()):
                for (p2, sigma), r2 in list(table.items()):
                    if p2 != r:
                        continue
                    key = (p, compose_perm(tau, sigma))
                    if key not in table:
                        table[key] = r2
                        changed = True
        return table

    @property
    def objects(self):
        return self._objects

    def operations(self, inputs, output):
        return tuple(self.ops[n] for n in self._by_sig.get((tuple(inputs), output), ()))

    def profile(self, op):
        return op.inputs, op.output

    def compose(self, p, i, q):
        if p.inputs[i] != q.output:
            raise OperadError(f"cannot plug {q.name} into input {i} of {p.name}")
        if q.name in self._unit_names:
            return p
        if p.name in self._unit_names:
            return q
        try:
            return self.ops[self.comp[(p.name, i, q.name)]]
        except KeyError:
            raise OperadError(f"composition {p.name} o_{i} {q.name} not in table") from None

    def act(self, p, sigma):
        sigma = tuple(sigma)
        try:
            return self.ops[self.sigma[(p.name, sigma)]]
        except KeyError:
            raise OperadError(f"action of {sigma} on {p.name} not in table") from None

    def unit(self, c):
        return self.ops[self.units[c]]

    def op_key(self, op):
        return op.name

    def op(self, name: str) -> NamedOp:
        return self.ops[name]

    def __repr__(self) -> str:
        return f"TableOperad({len(self._objects)} colors, {len(self.ops)} operations)"

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "objects": list(self._objects),
            "operations": [{"inputs": list(o.inputs), "output": o.output, "name": o.name}
                           for o in self.ops.values() if o.name not in self._unit_names],
            "units": {str(c): n for c, n in self.units.items()},
            "compositions": [{"outer": p, "index": i, "inner": q, "result": r}
                             for (p, i, q), r in sorted(self.comp.items())],
            "sigma": [{"op": p, "perm": list(s), "result": r}
                      for (p, s), r in sorted(self.sigma.items()) if s != tuple(range(len(s)))],
        }

    @classmethod
    def from_json(cls, data: Mapping, *, check: bool = True) -> "TableOperad":
        ops = [(o["name"], o["inputs"], o["output"]) for o in data.get("operations", [])]
        comps = {(c["outer"], int(c["index"]), c["inner"]): c["result"] for c in data.get("compositions", [])}
        sig = {(s["op"], tuple(s["perm"])): s["result"] for s in data.get("sigma", [])}
        units = data.get("units")
        if units is not None:
            lookup = {str(c): c for c in data["objects"]}
            units = {lookup[k]: v for k, v in units.items()}
        return cls(data["objects"], ops, comps, sig, units, check=check)

    @classmethod
    def from_category(cls, cat: FiniteCategory) -> "TableOperad":
        """Extension by zero: only unary operations."""
        units = {a: cat.identity(a) for a in cat.objects}
        ops = [(a.name, (a.source,), a.target) for a in cat.arrows.values() if a.name not in units.values()]
        comps = {(g, 0, f): r for (g, f), r in cat.composition.items()}
        return cls(cat.objects, ops, comps, {}, units)

    @classmethod
    def from_operad(cls, operad: FiniteOperad, max_arity: int | None = None) -> "TableOperad":
        """Tabulate a finite operad (arity bounded) with generated names."""
        bound = operad.arity_bound(max_arity)
        all_ops = list(operad.iter_operations(bound))
        names = {op: f"o{k}" for k, op in enumerate(sorted(all_ops, key=operad.op_key))}
        units = {}
        for c in operad.objects:
            units[c] = names[operad.unit(c)]
        table = []
        for op, n in names.items():
            ins, out = operad.profile(op)
            table.append((n, ins, out))
        comps = {}
        for p in all_ops:
            ins, _ = operad.profile(p)
            for i, c in enumerate(ins):
                for q in all_ops:
                    if operad.profile(q)[1] != c:
                        continue
                    if len(ins) - 1 + operad.arity(q) > bound:
                        continue
                    comps[(names[p], i, names[q])] = names[operad.compose(p, i, q)]
        sig = {}
        for p in all_ops:
            for s in itertools.permutations(range(operad.arity(p))):
                sig[(names[p], s)] = names[operad.act(p, s)]
        return cls(operad.objects, table, comps, sig, units, check=False)


def underlying_category(operad: FiniteOperad) -> FiniteCategory:
    """Keep the unary operations."""
    names: dict[Op, str] = {}
    arrows = {}
    for c in operad.objects:
        names[operad.unit(c)] = FiniteCategory.identity(c)
    for c in operad.objects:
        for op in operad.operations_into(c, 1):
            if op not in names:
                names[op] = operad.op_key(op)
            arrows[names[op]] = Arrow(names[op], operad.profile(op)[0][0], c)
    comp = {}
    for g, gn in names.items():
        for f, fn in names.items():
            if operad.profile(f)[1] == operad.profile(g)[0][0]:
                comp[(gn, fn)] = names[operad.compose(g, 0, f)]
    return FiniteCategory(operad.objects, arrows, comp)


def from_category(cat: FiniteCategory) -> TableOperad:
    return TableOperad.from_category(cat)


# -- axioms, morphisms, predicates ------------------------------------------

def _slot_perm(reference: Sequence, actual: Sequence) -> Perm:
    """``tau`` with ``actual[k] == reference[tau[k]]``."""
    return perm_between(reference, actual)


def _composite_labels(n: int, i: int, m: int, outer: str = "p", inner: str = "q") -> list:
    labels = [(outer, k) for k in range(n)]
    return labels[:i] + [(inner, k) for k in range(m)] + labels[i + 1:]


def check_operad_axioms(operad: FiniteOperad, max_arity: int | None = None, limit: int = 5) -> list[str]:
    """Exhaustively check unit, associativity and equivariance laws.

    Returns a list of human readable failures (empty when all laws hold). For
    operads with unbounded arity only composites of arity ``<= max_arity`` are
    examined.
    """
    bound = operad.arity_bound(max_arity)
    ops = list(operad.iter_operations(bound))
    by_out: dict[Hashable, list[Op]] = {}
    for op in ops:
        by_out.setdefault(operad.profile(op)[1], []).append(op)
    problems: list[str] = []

    def fail(msg: str) -> bool:
        problems.append(msg)
        return len(problems) >= limit

    for p in ops:
        ins, out = operad.profile(p)
        n = len(ins)
        if operad.compose(operad.unit(out), 0, p) != p:
            if fail(f"left unit fails at {p!r}"):
                return problems
        for i, c in enumerate(ins):
            if operad.compose(p, i, operad.unit(c)) != p:
                if fail(f"right unit fails at {p!r}, input {i}"):
                    return problems
        # action is a group action
        perms = list(itertools.permutations(range(n)))
        if operad.act(p, tuple(range(n))) != p:
            if fail(f"identity permutation moves {p!r}"):
                return problems
        for tau in perms:
            ptau = operad.act(p, tau)
            exp_ins = tuple(ins[t] for t in tau)
            if operad.profile(ptau) != (exp_ins, out):
                if fail(f"action of {tau} on {p!r} has the wrong profile"):
                    return problems
            for sigma in perms:
                if operad.act(ptau, sigma) != operad.act(p, compose_perm(tau, sigma)):
                    if fail(f"action is not a right action at {p!r}, {tau}, {sigma}"):
                        return problems
        for i, c in enumerate(ins):
            for q in by_out.get(c, ()):
                m = operad.arity(q)
                if n - 1 + m > bound:
                    continue
                pq = operad.compose(p, i, q)
                qins = operad.profile(q)[0]
                if operad.profile(pq) != (ins[:i] + qins + ins[i + 1:], out):
                    if fail(f"composite {p!r} o_{i} {q!r} has the wrong profile"):
                        return problems
                # equivariance in the outer operation
                ref = _composite_labels(n, i, m)
                for sigma in perms:
                    j = invert_perm(sigma)[i]
                    lhs = operad.compose(operad.act(p, sigma), j, q)
                    labels = [("p", s) for s in sigma]
                    actual = labels[:j] + [("q", k) for k in range(m)] + labels[j + 1:]
                    rhs = operad.act(pq, _slot_perm(ref, actual))
                    if lhs != rhs:
                        if fail(f"equivariance fails for {p!r} o_{i} {q!r} under {sigma}"):
                            return problems
                # equivariance in the inner operation
                for sigma in itertools.permutations(range(m)):
                    lhs = operad.compose(p, i, operad.act(q, sigma))
                    actual = _composite_labels(n, i, 0)[:i] + [("q", s) for s in sigma] + ref[i + m:]
                    rhs = operad.act(pq, _slot_perm(ref, actual))
                    if lhs != rhs:
                        if fail(f"inner equivariance fails for {p!r} o_{i} {q!r} under {sigma}"):
                            return problems
                # associativity
                for k, d in enumerate(qins):
                    for r in by_out.get(d, ()):
                        if n + m + operad.arity(r) - 2 > bound:
                            continue
                        if operad.compose(pq, i + k, r) != operad.compose(p, i, operad.compose(q, k, r)):
                            if fail(f"sequential associativity fails at {p!r}, {q!r}, {r!r}"):
                                return problems
                for j in range(i + 1, n):
                    for r in by_out.get(ins[j], ()):
                        if n + m + operad.arity(r) - 2 > bound:
                            continue
                        lhs = operad.compose(pq, j + m - 1, r)
                        rhs = operad.compose(operad.compose(p, j, r), i, q)
                        if lhs != rhs:
                            if fail(f"parallel associativity fails at {p!r}, {q!r}, {r!r}"):
                                return problems
    return problems


@dataclass
class OperadMorphism:
    source: FiniteOperad
    target: FiniteOperad
    on_objects: Callable[[Hashable], Hashable]
    on_ops: Callable[[Op], Op]

    def __call__(self, op: Op) -> Op:
        return self.on_ops(op)

    def check(self, max_arity: int | None = None, limit: int = 5) -> list[str]:
        """Unit, composition and Sigma compatibility on all source operations."""
        src, tgt = self.source, self.target
        bound = src.arity_bound(max_arity)
        ops = list(src.iter_operations(bound))
        problems = []
        for c in src.objects:
            if self.on_ops(src.unit(c)) != tgt.unit(self.on_objects(c)):
                problems.append(f"unit of {c!r} not preserved")
        for p in ops:
            ins, out = src.profile(p)
            fp = self.on_ops(p)
            if tgt.profile(fp) != (tuple(self.on_objects(c) for c in ins), self.on_objects(out)):
                problems.append(f"{p!r} sent to an operation of the wrong profile")
                continue
            for sigma in itertools.permutations(range(len(ins))):
                if self.on_ops(src.act(p, sigma)) != tgt.act(fp, sigma):
                    problems.append(f"Sigma action not preserved at {p!r}")
            for i, c in enumerate(ins):
                for q in ops:
                    if src.profile(q)[1] != c or len(ins) - 1 + src.arity(q) > bound:
                        continue
                    if self.on_ops(src.compose(p, i, q)) != tgt.compose(fp, i, self.on_ops(q)):
                        problems.append(f"composition not preserved at {p!r} o_{i} {q!r}")
            if len(problems) >= limit:
                break
        return problems[:limit]


def is_sigma_free(operad: FiniteOperad, max_arity: int | None = None) -> bool:
    """Whether every operation has trivial stabilizer under the Sigma action."""
    return sigma_free_witness(operad, max_arity) is None


def sigma_free_witness(operad: FiniteOperad, max_arity: int | None = None):
    bound = operad.arity_bound(max_arity)
    if hasattr(operad, "sigma_witness"):
        return operad.sigma_witness(bound)
    # stabilizers along an orbit are conjugate, so one representative per orbit suffices
    ops = getattr(operad, "iter_orbit_representatives", operad.iter_operations)
    for op in ops(bound):
        ins = operad.profile(op)[0]
        if len(set(ins)) == len(ins):
            continue  # a nontrivial permutation changes the profile
        ident = tuple(range(len(ins)))
        for sigma in itertools.permutations(ident):
            if sigma == ident or any(ins[s] != ins[k] for k, s in enumerate(sigma)):
                continue
            if operad.act(op, sigma) == op:
                return op, sigma
    return None


def object_poset(operad: FiniteOperad, max_arity: int | None = None) -> set[tuple[Hashable, Hashable]]:
    """Reflexive-transitive closure of "c is an input of some operation into d"."""
    bound = operad.arity_bound(max_arity)
    rel = {(c, c) for c in operad.objects}
    for op in operad.iter_operations(bound):
        ins, out = operad.profile(op)
        rel.update((c, out) for c in ins)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for b2, c in list(rel):
                if b == b2 and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    return rel


# -- dendrices of nerves ---------------------------------------------------------

@dataclass(frozen=True)
class Dendrex:
    """An operad map from the free operad on ``tree`` into ``operad``.

    It is stored by its values on generators: a color per edge and an
    operation per vertex, whose inputs follow the sorted input edges.
    """

    tree: Tree
    colors: tuple[tuple[str, Hashable], ...]
    vertex_ops: tuple[tuple[str, Op], ...]
    operad: FiniteOperad = field(compare=False, repr=False)

    @cached_property
    def color(self) -> dict[str, Hashable]:
        return dict(self.colors)

    @cached_property
    def vertex_op(self) -> dict[str, Op]:
        return dict(self.vertex_ops)

    def evaluate(self, leaves: Sequence[str], root: str) -> Op:
        """Image of the operation of the free operad with these leaves and root."""
        leaves = tuple(leaves)
        stop = set(leaves)
        P = self.operad

        def go(e: str) -> tuple[Op, list[str]]:
            if e in stop or self.tree.is_leaf(e):
                return P.unit(self.color[e]), [e]
            op = self.vertex_op[e]
            order: list[str] = []
            kids = []
            for c in self.tree.inputs(e):
                q, ls = go(c)
                kids.append(q)
                order.extend(ls)
            return P.full_composite(op, kids), order

        if not self.tree.has_operation(leaves, root):
            raise OperadError(f"no operation {leaves} -> {root} in {self.tree}")
        op, natural = go(root)
        return P.act(op, perm_between(natural, leaves))

    def pull_back(self, morphism) -> "Dendrex":
        """Restriction along a tree morphism ``S -> self.tree``."""
        f = morphism.edge_map
        src = morphism.source
        colors = tuple((e, self.color[f[e]]) for e in src.edges)
        ops = tuple((v, self.evaluate([f[c] for c in src.inputs(v)], f[v])) for v in src.vertices)
        return Dendrex(src, colors, ops, self.operad)

    def to_morphism(self) -> OperadMorphism:
        return OperadMorphism(TreeOperad(self.tree), self.operad, self.color.__getitem__,
                              lambda op: self.evaluate(op[0], op[1]))

    def key(self) -> tuple:
        P = self.operad
        return (tuple((e, sort_key(c)) for e, c in self.colors),
                tuple((v, P.op_key(o)) for v, o in self.vertex_ops))

    def to_json(self) -> dict:
        return {
            "tree": str(self.tree),
            "colors": {e: c for e, c in self.colors},
            "operations": {v: self.operad.op_key(o) for v, o in self.vertex_ops},
        }


def nerve_dendrices(tree: Tree, operad: FiniteOperad) -> list[Dendrex]:
    """All operad maps from the free operad on ``tree`` to ``operad``."""
    order = [v for v in _preorder(tree) if tree.has_vertex(v)]
    results: list[Dendrex] = []

    def assign(k: int, colors: dict[str, Hashable], ops: dict[str, Op]) -> None:
        if k == len(order):
            # leaves not yet colored are leaves of the tree; they were colored by their parent
            results.append(Dendrex(tree, tuple((e, colors[e]) for e in tree.edges),
                                   tuple((v, ops[v]) for v in tree.vertices), operad))
            return
        v = order[k]
        ins = tree.inputs(v)
        for op in operad.operations_into(colors[v], len(ins)):
            op_ins = operad.profile(op)[0]
            for e, c in zip(ins, op_ins):
                colors[e] = c
            ops[v] = op
            assign(k + 1, colors, ops)
        for e in ins:
            colors.pop(e, None)
        ops.pop(v, None)

    for c in operad.objects:
        assign(0, {tree.root: c}, {})
    results.sort(key=Dendrex.key)
    return results


def enumerate_morphisms(source: TreeOperad, target: FiniteOperad) -> list[OperadMorphism]:
    """Operad maps out of a free operad, via their values on vertex generators."""
    if not isinstance(source, TreeOperad):
        raise OperadError("enumerate_morphisms needs a free operad on a tree as source")
    return [d.to_morphism() for d in nerve_dendrices(source.tree, target)]


def _preorder(tree: Tree) -> list[str]:
    out, stack = [], [tree.root]
    while stack:
        e = stack.pop()
        out.append(e)
        if tree.has_vertex(e):
            stack.extend(reversed(tree.inputs(e)))
    return out
