"""Algebras over finite operads in finite sets, and the locally constant predicate.

Carriers are ``range(n)`` with ``n >= 1``. Weak equivalences are read as
bijections, which is the decidable fragment of the simplicial statements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping

from .dendroidal.morphisms import TreeMorphism
from .dendroidal.presheaves import DendroidalSet
from .elements import ElementObject, ElementOp
from .operads import FiniteOperad, OperadMorphism
from .trees import tree_from_shape

__all__ = [
    "AlgebraError", "FinSetAlgebra", "enumerate_algebras", "is_locally_constant",
    "pullback_algebra", "build_r_f", "s_over_x", "count_functions_oracle",
]


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class FinSetAlgebra:
    """``carriers[c] = n`` means ``A(c) = {0, ..., n-1}``; ``table`` lists ``p_*(args)``."""

    operad: FiniteOperad
    carriers: tuple[tuple[Hashable, int], ...]
    table: tuple[tuple[tuple[str, tuple[int, ...]], int], ...]
    max_arity: int = 3

    def __hash__(self) -> int:
        return hash((self.carriers, self.table))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinSetAlgebra):
            return NotImplemented
        return self.carriers == other.carriers and self.table == other.table

    @property
    def sizes(self) -> dict[Hashable, int]:
        return dict(self.carriers)

    def apply(self, op, args: Iterable[int]) -> int:
        args = tuple(args)
        if self.operad.is_unit(op):
            return args[0]
        return self._lookup[(self.operad.op_key(op), args)]

    @property
    def _lookup(self) -> dict:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = dict(self.table)
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    def unary_map(self, op) -> tuple[int, ...]:
        (src,), _ = self.operad.profile(op)
        return tuple(self.apply(op, (x,)) for x in range(self.sizes[src]))

    def check(self, limit: int = 5) -> list[str]:
        """Unitality, equivariance and compatibility with every partial composition."""
        return _violations(self.operad, self.sizes, self._lookup, self.max_arity, limit)

    def to_json(self) -> dict:
        return {
            "carriers": [[repr(c), n] for c, n in self.carriers],
            "table": [[k, list(args), v] for (k, args), v in self.table],
        }


def _args(sizes: Mapping, colors: Iterable) -> Iterator[tuple[int, ...]]:
    return itertools.product(*(range(sizes[c]) for c in colors))


def _apply(P: FiniteOperad, table: Mapping, op, args: tuple[int, ...]) -> int | None:
    if P.is_unit(op):
        return args[0]
    return table.get((P.op_key(op), args))


def _op_violations(P: FiniteOperad, sizes: Mapping, table: Mapping, p, ops: list, bound: int) -> Iterator[str]:
    """Axioms involving ``p`` whose every term is already in ``table``."""
    ins, out = P.profile(p)
    n = len(ins)
    for sigma in itertools.permutations(range(n)):
        ps = P.act(p, sigma)
        for args in _args(sizes, ins):
            # (p.sigma)(x_sigma(0), ...) = p(x_0, ...)
            lhs = _apply(P, table, ps, tuple(args[s] for s in sigma))
            rhs = _apply(P, table, p, args)
            if lhs is not None and rhs is not None and lhs != rhs:
                yield f"equivariance fails for {P.op_key(p)} and {sigma}"
                break
    for i, c in enumerate(ins):
        for q in ops:
            qins, qout = P.profile(q)
            if qout != c or n - 1 + len(qins) > bound:
                continue
            comp = P.compose(p, i, q)
            for args in _args(sizes, ins[:i] + qins + ins[i + 1:]):
                inner = _apply(P, table, q, args[i:i + len(qins)])
                if inner is None:
                    break
                outer = _apply(P, table, p, args[:i] + (inner,) + args[i + len(qins):])
                whole = _apply(P, table, comp, args)
                if outer is None or whole is None:
                    break
                if outer != whole:
                    yield f"composition fails at {P.op_key(p)} o_{i} {P.op_key(q)}"
                    break


def _violations(P: FiniteOperad, sizes: Mapping, table: Mapping, max_arity: int, limit: int) -> list[str]:
    bound = P.arity_bound(max_arity)
    ops = list(P.iter_operations(bound))
    problems: list[str] = []
    for p in ops:
        if P.is_unit(p):
            continue
        ins, out = P.profile(p)
        for args in _args(sizes, ins):
            v = _apply(P, table, p, args)
            if v is None or not 0 <= v < sizes[out]:
                problems.append(f"{P.op_key(p)} is undefined or out of range at {args}")
                break
    for p in ops:
        for msg in _op_violations(P, sizes, table, p, ops, bound):
            problems.append(msg)
            if len(problems) >= limit:
                return problems
    return problems[:limit]


def enumerate_algebras(P: FiniteOperad, carrier_size_bound: int, max_arity: int = 3,
                       max_nodes: int = 1_000_000) -> list[FinSetAlgebra]:
    """All algebras with carriers of size ``1..carrier_size_bound`` (no quotient by isomorphism).

    Operation tables are filled one operation at a time and every axiom whose
    terms are all known is checked immediately. ``max_nodes`` caps the search.
    """
    bound = P.arity_bound(max_arity)
    ops = list(P.iter_operations(bound))
    free = [p for p in ops if not P.is_unit(p)]
    colors = list(P.objects)
    found: list[FinSetAlgebra] = []
    nodes = 0
    for sizes_tuple in itertools.product(range(1, carrier_size_bound + 1), repeat=len(colors)):
        sizes = dict(zip(colors, sizes_tuple))
        cells = [(p, args) for p in free for args in _args(sizes, P.profile(p)[0])]
        table: dict = {}
        # the op whose table is completed by each cell
        last_cell = {}
        for idx, (p, _) in enumerate(cells):
            last_cell[P.op_key(p)] = idx

        def go(idx: int) -> None:
            nonlocal nodes
            nodes += 1
            if nodes > max_nodes:
                raise AlgebraError(f"search exceeded {max_nodes} nodes; lower the carrier bound")
            if idx == len(cells):
                found.append(FinSetAlgebra(P, tuple(sizes.items()),
                                           tuple(sorted(table.items(), key=repr)), max_arity))
                return
            p, args = cells[idx]
            key = (P.op_key(p), args)
            for v in range(sizes[P.profile(p)[1]]):
                table[key] = v
                if last_cell[P.op_key(p)] != idx or not any(
                        True for _ in _op_violations(P, sizes, table, p, ops, bound)):
                    go(idx + 1)
                del table[key]

        go(0)
    return [a for a in found if not a.check(limit=1)]


def is_locally_constant(A: FinSetAlgebra, S: Iterable) -> bool:
    """True iff every unary operation in ``S`` acts by a bijection."""
    P = A.operad
    for f in S:
        ins, out = P.profile(f)
        if len(ins) != 1:
            raise AlgebraError(f"{f!r} is not unary")
        image = A.unary_map(f)
        if A.sizes[ins[0]] != A.sizes[out] or len(set(image)) != len(image):
            return False
    return True


def pullback_algebra(A: FinSetAlgebra, F: OperadMorphism, max_arity: int = 3) -> FinSetAlgebra:
    """``F^* A``: carriers ``A(F(c))`` and ``p`` acting as ``F(p)``."""
    src = F.source
    sizes = {c: A.sizes[F.on_objects(c)] for c in src.objects}
    table = {}
    for p in src.iter_operations(src.arity_bound(max_arity)):
        if src.is_unit(p):
            continue
        fp = F.on_ops(p)
        for args in _args(sizes, src.profile(p)[0]):
            table[(src.op_key(p), args)] = A.apply(fp, args)
    return FinSetAlgebra(src, tuple(sizes.items()), tuple(sorted(table.items(), key=repr)), max_arity)


def count_functions_oracle(carrier_size_bound: int) -> tuple[int, int]:
    """Algebras over the arrow ``0 -> 1`` are functions between two nonempty sets.

    Returns (all, bijective) for carrier sizes up to the bound, by direct counting.
    """
    total = bij = 0
    for m in range(1, carrier_size_bound + 1):
        for n in range(1, carrier_size_bound + 1):
            total += n ** m
            if m == n:
                bij += len(list(itertools.permutations(range(m))))
    return total, bij


_ETA = tree_from_shape("|")
_C1 = tree_from_shape("(|)")


def build_r_f(X: DendroidalSet, f: Hashable) -> ElementOp:
    """The unary operation ``(eta, b) -> (C_1, f)`` of ``Omega/X`` given by the root inclusion."""
    incl = TreeMorphism.from_map(_ETA, _C1, {_ETA.root: _C1.root})
    b = X.act(incl, f)
    return ElementOp((ElementObject(_ETA, b),), ElementObject(_C1, f), (incl,))


def s_over_x(X: DendroidalSet, S: Iterable[Hashable]) -> list[ElementOp]:
    """``S_{/X}``: one ``r_f`` per ``f`` in ``S``."""
    return [build_r_f(X, f) for f in S]
