"""Boardman-Vogt tensor product of finite operads by bounded closure.

A word is a term built from generators ``p (x) y`` and ``c (x) q`` whose
leaves carry input labels ``0..k-1``. Relabeling the leaves is the symmetric
group action, and the equivariance relation is absorbed by a canonical form
that minimizes over the orderings of the children at each node. The remaining
relations (composition in either factor, interchange) are turned into edges
of a union-find over all words with at most ``word_bound`` generator nodes.

Terms are nested tuples of strings and ints, so they compare and hash fast::

    ("L", label, color_key)                # an input
    ("P", op_key, y_key, children)         # p (x) y
    ("Q", c_key, op_key, children)         # c (x) q
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterator, Sequence

from .operads import FiniteOperad, OperadError, Perm, TreeOperad, nerve_dendrices, sort_key
from .trees import Tree

__all__ = [
    "TensorWord", "TensorOperad", "TensorBoundWarning", "TensorBoundError", "tensor",
    "sigma_nm", "compare_tensor_nerve", "NerveComparison", "nerve_count_oracle",
]


class TensorBoundWarning(UserWarning):
    """The closure is not stable when the word bound grows by one."""


class TensorBoundError(OperadError):
    pass


def sigma_nm(n: int, m: int) -> Perm:
    """Transposition of an ``n x m`` grid.

    Position ``j*n + i`` of the result reads position ``i*m + j`` of the
    input, turning the ``i``-major order of the inputs of
    ``(p (x) z)(c_1 (x) q, ..., c_n (x) q)`` into the ``j``-major order of
    ``(d (x) q)(p (x) y_1, ..., p (x) y_m)``.
    """
    return tuple(i * m + j for j in range(m) for i in range(n))


@dataclass(frozen=True)
class TensorWord:
    term: tuple

    @cached_property
    def size(self) -> int:
        return _size(self.term)

    @cached_property
    def arity(self) -> int:
        return len(_leaves(self.term))

    def __repr__(self) -> str:
        return f"TensorWord({_show(self.term)})"

    def __str__(self) -> str:
        return _show(self.term)


def _size(t: tuple) -> int:
    if t[0] == "L":
        return 0
    return 1 + sum(_size(c) for c in t[3])


def _leaves(t: tuple) -> list[tuple]:
    if t[0] == "L":
        return [t]
    out = []
    for c in t[3]:
        out.extend(_leaves(c))
    return out


def _show(t: tuple) -> str:
    if t[0] == "L":
        return f"#{t[1]}"
    head = f"{t[1]}(x){t[2]}"
    if not t[3]:
        return head
    return head + "(" + ", ".join(_show(c) for c in t[3]) + ")"


def _relabel(t: tuple, new: Sequence[int] | dict[int, int]) -> tuple:
    if t[0] == "L":
        return ("L", new[t[1]], t[2])
    return (t[0], t[1], t[2], tuple(_relabel(c, new) for c in t[3]))


def _shift(t: tuple, at: int, width: int) -> tuple:
    """Labels ``>= at`` move up by ``width``."""
    if t[0] == "L":
        return t if t[1] < at else ("L", t[1] + width, t[2])
    return (t[0], t[1], t[2], tuple(_shift(c, at, width) for c in t[3]))


def _graft(t: tuple, label: int, inner: tuple) -> tuple:
    if t[0] == "L":
        return inner if t[1] == label else t
    return (t[0], t[1], t[2], tuple(_graft(c, label, inner) for c in t[3]))


class _Factor:
    """Operations of one factor, indexed by string keys, with cached actions."""

    def __init__(self, operad: FiniteOperad, max_arity: int | None, max_size: int):
        self.operad = operad
        self.ops: dict[str, Hashable] = {}
        self.by_output: dict[Hashable, list[str]] = {}
        bound = operad.arity_bound(max_arity) if operad.max_arity is not None or max_arity is not None \
            else max(1, max_size)
        self.arity_cap = bound
        seen_orbits: set[str] = set()
        for p in operad.iter_operations(bound):
            if operad.is_unit(p):
                continue
            k = self.key(p)
            n = operad.arity(p)
            orbit = min(self.key(operad.act(p, s)) for s in itertools.permutations(range(n)))
            if orbit in seen_orbits:
                continue
            seen_orbits.add(orbit)
            self.by_output.setdefault(operad.profile(p)[1], []).append(k)
        self._act: dict[tuple[str, Perm], str] = {}

    def key(self, p: Hashable) -> str:
        k = self.operad.op_key(p)
        self.ops.setdefault(k, p)
        return k

    def act(self, k: str, sigma: Perm) -> str:
        found = self._act.get((k, sigma))
        if found is None:
            found = self.key(self.operad.act(self.ops[k], sigma))
            self._act[(k, sigma)] = found
        return found

    def inputs(self, k: str) -> tuple:
        return tuple(self.operad.profile(self.ops[k])[0])

    def output(self, k: str) -> Hashable:
        return self.operad.profile(self.ops[k])[1]


class TensorOperad(FiniteOperad):
    """``P (x) Q`` on words with at most ``word_bound`` generators.

    ``frontier_touched`` records whether recomputing the closure with bound
    ``word_bound + 1`` merges classes of these words or finds a class without
    a word inside the bound.
    """

    def __init__(self, P: FiniteOperad, Q: FiniteOperad, word_bound: int, *,
                 max_arity: int | None = None, check_frontier: bool = True):
        self.P, self.Q = P, Q
        self.word_bound = word_bound
        self._max_arity_arg = max_arity
        self._ckeys: dict[str, Hashable] = {}
        self.fP = _Factor(P, max_arity, word_bound)
        self.fQ = _Factor(Q, max_arity, word_bound)
        self._pairs = tuple((c, y) for c in P.objects for y in Q.objects)
        for c, y in self._pairs:
            self._ckey(c)
            self._ckey(y)
        self._build(word_bound)
        self.frontier_touched = False
        if check_frontier:
            bigger = TensorOperad(P, Q, word_bound + 1, max_arity=max_arity, check_frontier=False)
            self.frontier_touched = not self._same_partition(bigger)
            if self.frontier_touched:
                warnings.warn(f"tensor closure is not stable at word bound {word_bound}", TensorBoundWarning,
                              stacklevel=2)

    # -- keys --------------------------------------------------------------
    def _ckey(self, c: Hashable) -> str:
        k = sort_key(c)
        self._ckeys.setdefault(k, c)
        return k

    def _color(self, pair_key: tuple[str, str]) -> tuple:
        return self._ckeys[pair_key[0]], self._ckeys[pair_key[1]]

    # -- words -------------------------------------------------------------
    def canonical(self, t: tuple) -> tuple:
        """Canonical representative modulo the symmetric group actions on generators."""
        if t[0] == "L":
            return t
        kids = [self.canonical(c) for c in t[3]]
        factor = self.fP if t[0] == "P" else self.fQ
        gen = t[1] if t[0] == "P" else t[2]
        best = None
        for tau in itertools.permutations(range(len(kids))):
            g = factor.act(gen, tau)
            cand = (g, tuple(kids[s] for s in tau))
            if best is None or cand < best:
                best = cand
        assert best is not None
        if t[0] == "P":
            return ("P", best[0], t[2], best[1])
        return ("Q", t[1], best[0], best[1])

    def output_key(self, t: tuple) -> tuple[str, str]:
        if t[0] == "L":
            return t[2]
        if t[0] == "P":
            return self._ckey(self.fP.output(t[1])), t[2]
        return t[1], self._ckey(self.fQ.output(t[2]))

    def _planar(self, color: tuple[str, str], size: int) -> list[tuple]:
        """Planar terms with exactly ``size`` generators, leaves unlabeled (label -1)."""
        memo = self._planar_memo
        key = (color, size)
        if key in memo:
            return memo[key]
        out: list[tuple] = []
        if size == 0:
            out.append(("L", -1, color))
        else:
            ck, yk = color
            for pk in self.fP.by_output.get(self._ckeys[ck], []):
                ins = [(self._ckey(c), yk) for c in self.fP.inputs(pk)]
                for kids in self._children(ins, size - 1):
                    out.append(("P", pk, yk, kids))
            for qk in self.fQ.by_output.get(self._ckeys[yk], []):
                ins = [(ck, self._ckey(y)) for y in self.fQ.inputs(qk)]
                for kids in self._children(ins, size - 1):
                    out.append(("Q", ck, qk, kids))
        memo[key] = out
        return out

    def _children(self, colors: list, total: int) -> Iterator[tuple]:
        if not colors:
            if total == 0:
                yield ()
            return
        for first in range(total + 1):
            heads = self._planar(colors[0], first)
            if not heads:
                continue
            for rest in self._children(colors[1:], total - first):
                for h in heads:
                    yield (h,) + rest

    def _label_all(self, t: tuple) -> Iterator[tuple]:
        k = len(_leaves(t))
        counter = itertools.count()
        order = []

        def number(s: tuple) -> tuple:
            if s[0] == "L":
                i = next(counter)
                order.append(i)
                return ("L", i, s[2])
            return (s[0], s[1], s[2], tuple(number(c) for c in s[3]))

        numbered = number(t)
        for perm in itertools.permutations(range(k)):
            yield _relabel(numbered, perm)

    def _build(self, bound: int) -> None:
        self._planar_memo: dict = {}
        words: dict[tuple, int] = {}
        terms: list[tuple] = []
        pair_keys = [(self._ckey(c), self._ckey(y)) for c, y in self._pairs]
        for color in pair_keys:
            for size in range(bound + 1):
                for t in self._planar(color, size):
                    for labeled in self._label_all(t):
                        w = self.canonical(labeled)
                        if w not in words:
                            words[w] = len(terms)
                            terms.append(w)
        self._words, self._terms = words, terms
        parent = list(range(len(terms)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, w in enumerate(terms):
            for nb in self._moves(w):
                c = self.canonical(nb)
                if _size(c) > bound:
                    continue
                j = words.get(c)
                if j is None:
                    raise AssertionError(f"word {_show(c)} missing from the enumeration")
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
        self._find = find
        classes: dict[int, list[int]] = {}
        for i in range(len(terms)):
            classes.setdefault(find(i), []).append(i)
        self._rep: dict[int, TensorWord] = {}
        self._class_of: list[int] = [0] * len(terms)
        for root, members in classes.items():
            best = min(members, key=lambda i: (_size(terms[i]), terms[i]))
            for i in members:
                self._class_of[i] = best
            self._rep[best] = TensorWord(terms[best])
        self._signatures: dict[tuple, list[TensorWord]] = {}
        for best, word in self._rep.items():
            self._signatures.setdefault(self._profile_keys(word.term), []).append(word)
        for ws in self._signatures.values():
            ws.sort(key=lambda w: (w.size, w.term))

    # -- relations -----------------------------------------------------------
    def _moves(self, t: tuple) -> Iterator[tuple]:
        """Words obtained by one composition or interchange step anywhere in ``t``."""
        yield from self._local_moves(t)
        if t[0] != "L":
            for i, c in enumerate(t[3]):
                for new in self._moves(c):
                    yield (t[0], t[1], t[2], t[3][:i] + (new,) + t[3][i + 1:])

    def _local_moves(self, t: tuple) -> Iterator[tuple]:
        if t[0] == "L":
            return
        kind, kids = t[0], t[3]
        factor = self.fP if kind == "P" else self.fQ
        gen = t[1] if kind == "P" else t[2]
        # composition inside one factor
        for i, c in enumerate(kids):
            if c[0] != kind:
                continue
            inner = c[1] if kind == "P" else c[2]
            op = factor.operad.compose(factor.ops[gen], i, factor.ops[inner])
            if factor.operad.is_unit(op):
                yield c[3][0]
                continue
            k = factor.key(op)
            merged = kids[:i] + c[3] + kids[i + 1:]
            yield ("P", k, t[2], merged) if kind == "P" else ("Q", t[1], k, merged)
        yield from self._interchange(t)

    def _interchange(self, t: tuple) -> Iterator[tuple]:
        kind, kids = t[0], t[3]
        if kind == "P":
            outer, other = self.fP, self.fQ
            gen = t[1]
        else:
            outer, other = self.fQ, self.fP
            gen = t[2]
        other_kind = "Q" if kind == "P" else "P"
        here = self._ckeys[t[2]] if kind == "P" else self._ckeys[t[1]]
        out_outer = outer.output(gen)
        n = len(kids)
        if n == 0:
            # nullary: every generator of the other factor ending at ``here`` applies
            for g in other.by_output.get(here, []):
                ins_other = other.inputs(g)
                kids_new = tuple(self._node(kind, gen, y, ()) for y in ins_other)
                yield self._node(other_kind, g, out_outer, kids_new)
            return
        if any(c[0] != other_kind for c in kids):
            return
        ref = kids[0][2] if other_kind == "Q" else kids[0][1]
        m = len(other.inputs(ref))
        options: list[list[tuple]] = []
        for c in kids:
            g = c[2] if other_kind == "Q" else c[1]
            grand = c[3]
            choices = []
            for rho in itertools.permutations(range(m)):
                if other.act(ref, rho) == g:
                    aligned: list = [None] * m
                    for k in range(m):
                        aligned[rho[k]] = grand[k]
                    choices.append(tuple(aligned))
            if not choices:
                return
            options.append(choices)
        sigma = sigma_nm(n, m)
        for combo in itertools.product(*options):
            flat = [combo[i][j] for i in range(n) for j in range(m)]
            moved = [flat[s] for s in sigma]
            ins_other = other.inputs(ref)
            kids_new = tuple(self._node(kind, gen, ins_other[j], tuple(moved[j * n:(j + 1) * n]))
                             for j in range(m))
            yield self._node(other_kind, ref, out_outer, kids_new)

    def _node(self, kind: str, gen: str, color: Hashable, kids: tuple) -> tuple:
        """``gen (x) color`` for a P generator, ``color (x) gen`` for a Q generator."""
        if kind == "P":
            return ("P", gen, self._ckey(color), kids)
        return ("Q", self._ckey(color), gen, kids)

    # -- frontier --------------------------------------------------------------
    def _partition(self, limit: int) -> set[frozenset[tuple]]:
        groups: dict[int, set[tuple]] = {}
        for i, w in enumerate(self._terms):
            if _size(w) <= limit:
                groups.setdefault(self._class_of[i], set()).add(w)
        return {frozenset(g) for g in groups.values()}

    def _same_partition(self, bigger: "TensorOperad") -> bool:
        # no classes merge and no class is missing a word within the smaller bound
        if self._partition(self.word_bound) != bigger._partition(self.word_bound):
            return False
        return all(w.size <= self.word_bound for w in bigger._rep.values())

    # -- operad interface --------------------------------------------------------
    @property
    def objects(self) -> tuple:
        return self._pairs

    @cached_property
    def max_arity(self) -> int:  # type: ignore[override]
        return max((w.arity for w in self._rep.values()), default=1)

    def _profile_keys(self, t: tuple) -> tuple:
        leaves = sorted(_leaves(t), key=lambda x: x[1])
        return tuple(x[2] for x in leaves), self.output_key(t)

    def profile(self, op: TensorWord) -> tuple[tuple, tuple]:
        ins, out = self._profile_keys(op.term)
        return tuple(self._color(k) for k in ins), self._color(out)

    def class_of(self, word: TensorWord | tuple) -> TensorWord:
        t = word.term if isinstance(word, TensorWord) else word
        c = self.canonical(t)
        i = self._words.get(c)
        if i is None:
            return self._reduce(c)
        return self._rep[self._class_of[i]]

    def _reduce(self, t: tuple) -> TensorWord:
        # search for an equivalent word inside the bound, never growing beyond the start
        start = _size(t)
        seen = {t}
        frontier = [t]
        while frontier:
            nxt = []
            for w in frontier:
                for nb in self._moves(w):
                    c = self.canonical(nb)
                    if c in seen or _size(c) > start:
                        continue
                    i = self._words.get(c)
                    if i is not None:
                        return self._rep[self._class_of[i]]
                    seen.add(c)
                    nxt.append(c)
            frontier = nxt
        raise TensorBoundError(f"{_show(t)} has no equivalent word within bound {self.word_bound}")

    def same_class(self, a: TensorWord | tuple, b: TensorWord | tuple) -> bool:
        return self.class_of(a) == self.class_of(b)

    def operations(self, inputs: Sequence, output: Hashable) -> tuple[TensorWord, ...]:
        key = (tuple((self._ckey(c), self._ckey(y)) for c, y in inputs), (self._ckey(output[0]), self._ckey(output[1])))
        return tuple(self._signatures.get(key, ()))

    def operations_into(self, output: Hashable, arity: int) -> Iterator[TensorWord]:
        ok = (self._ckey(output[0]), self._ckey(output[1]))
        for (ins, out), ws in self._signatures.items():
            if out == ok and len(ins) == arity:
                yield from ws

    def arity_bound(self, max_arity: int | None) -> int:
        return self.max_arity if max_arity is None else min(self.max_arity, max_arity)

    def compose(self, p: TensorWord, i: int, q: TensorWord) -> TensorWord:
        ins, _ = self._profile_keys(p.term)
        if ins[i] != self.output_key(q.term):
            raise OperadError("cannot compose: colors differ")
        k = q.arity
        outer = _shift(p.term, i + 1, k - 1)
        inner = _shift(q.term, 0, i)
        return self.class_of(_graft(outer, i, inner))

    def act(self, p: TensorWord, sigma: Perm) -> TensorWord:
        # input k of the result is input sigma[k] of p
        new = {s: k for k, s in enumerate(sigma)}
        return self.class_of(_relabel(p.term, new))

    def unit(self, c: Hashable) -> TensorWord:
        return TensorWord(("L", 0, (self._ckey(c[0]), self._ckey(c[1]))))

    def is_unit(self, op: TensorWord) -> bool:
        return op.term[0] == "L"

    def op_key(self, op: TensorWord) -> str:
        return _show(op.term)

    # -- generators --------------------------------------------------------------
    def p_gen(self, p: Hashable, y: Hashable) -> TensorWord:
        """The operation ``p (x) y``."""
        if self.P.is_unit(p):
            return self.unit((self.P.profile(p)[1], y))
        k = self.fP.key(p)
        kids = tuple(("L", i, (self._ckey(c), self._ckey(y))) for i, c in enumerate(self.fP.inputs(k)))
        return self.class_of(("P", k, self._ckey(y), kids))

    def q_gen(self, c: Hashable, q: Hashable) -> TensorWord:
        """The operation ``c (x) q``."""
        if self.Q.is_unit(q):
            return self.unit((c, self.Q.profile(q)[1]))
        k = self.fQ.key(q)
        kids = tuple(("L", j, (self._ckey(c), self._ckey(y))) for j, y in enumerate(self.fQ.inputs(k)))
        return self.class_of(("Q", self._ckey(c), k, kids))

    @property
    def n_words(self) -> int:
        return len(self._terms)

    @property
    def n_classes(self) -> int:
        return len(self._rep)

    def class_counts(self) -> dict[tuple, int]:
        """Number of classes per signature ``(inputs, output)``."""
        return {(tuple(self._color(k) for k in ins), self._color(out)): len(ws)
                for (ins, out), ws in self._signatures.items()}

    def representatives(self) -> list[TensorWord]:
        return sorted(self._rep.values(), key=lambda w: (w.size, w.term))

    def __repr__(self) -> str:
        return f"TensorOperad({self.P!r}, {self.Q!r}, bound={self.word_bound})"


def tensor(P: FiniteOperad, Q: FiniteOperad, word_bound: int, *, max_arity: int | None = None,
           check_frontier: bool = True) -> TensorOperad:
    return TensorOperad(P, Q, word_bound, max_arity=max_arity, check_frontier=check_frontier)


# -- comparison with nerves --------------------------------------------------------

def nerve_count_oracle(R: Tree, operad: FiniteOperad) -> int:
    """Operad maps ``Omega(R) -> operad`` counted as colorings times vertex choices.

    ``Omega(R)`` is free on its vertices, so a map is an edge coloring plus
    one operation per vertex with the matching profile.
    """
    edges = list(R.edges)
    total = 0
    for colors in itertools.product(operad.objects, repeat=len(edges)):
        col = dict(zip(edges, colors))
        count = 1
        for v in R.vertices:
            count *= len(operad.operations([col[c] for c in R.inputs(v)], col[v]))
            if not count:
                break
        total += count
    return total


@dataclass(frozen=True)
class NerveComparison:
    closure_count: int
    oracle_count: int
    frontier_touched: bool

    @property
    def agree(self) -> bool:
        return self.closure_count == self.oracle_count

    @property
    def conclusive(self) -> bool:
        return not self.frontier_touched


def compare_tensor_nerve(T: Tree, S: Tree, R: Tree, word_bound: int) -> NerveComparison:
    """Dendrices of ``N_d(Omega(T) (x) Omega(S))`` at ``R``: closure at ``word_bound`` vs an oracle.

    The closure side enumerates dendrices top-down; the oracle counts maps
    out of ``Omega(R)`` against a closure with a bigger bound.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TensorBoundWarning)
        small = tensor(TreeOperad(T), TreeOperad(S), word_bound)
        big = tensor(TreeOperad(T), TreeOperad(S), word_bound + 2, check_frontier=False)
    return NerveComparison(len(nerve_dendrices(R, small)), nerve_count_oracle(R, big), small.frontier_touched)
