import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from dendro.trees import (
    Tree, TreeError, TreeSyntaxError, canonical_form, canonical_tree, corolla, edge_leq,
    enumerate_subtrees, enumerate_trees, eta, graft, is_isomorphic, join_eta, linear,
    parse_tree, print_tree, tree_from_shape,
)

SMALL_TREES = enumerate_trees(3, 3)


# -- parsing --------------------------------------------------------------------

def test_parse_corolla():
    t = parse_tree("r[a,b]")
    assert t.root == "r"
    assert set(t.leaves) == {"a", "b"}
    assert t.vertices == ("r",)
    assert t.shape() == "(||)"


def test_parse_eta():
    t = parse_tree("e")
    assert t.edges == ("e",) and t.n_vertices == 0


def test_parse_stump():
    t = parse_tree("r[a[]]")
    assert len(t.edges) == 2 and t.n_vertices == 2
    assert t.is_stump("a") and t.leaves == ()


def test_parse_ignores_whitespace():
    assert parse_tree(" r [ a , b [ c ] ] ") == parse_tree("r[a,b[c]]")


@pytest.mark.parametrize("text", ["", "r[", "r[a,]", "r[a]]", "r[a,a]", "r-x", "r[]x"])
def test_parse_errors(text):
    with pytest.raises(TreeError):
        parse_tree(text)


def test_syntax_error_has_position():
    with pytest.raises(TreeSyntaxError) as err:
        parse_tree("r[a,]")
    assert err.value.position == 4


def test_print_round_trip():
    for t in SMALL_TREES:
        assert parse_tree(print_tree(t)) == t


def test_json_round_trip():
    for t in SMALL_TREES:
        assert Tree.from_json(t.to_json()) == t


def test_duplicate_edges_rejected():
    with pytest.raises(TreeError):
        Tree("r", {"r": ["a"], "a": ["r"]})


# -- the edge order -------------------------------------------------------------

def test_edge_leq_linear():
    t = linear(2)
    assert edge_leq(t, "0", "2")
    assert not edge_leq(t, "2", "0")


def test_edge_leq_incomparable_leaves():
    t = corolla(2)
    assert not edge_leq(t, "a", "b") and not edge_leq(t, "b", "a")


@given(st.sampled_from(enumerate_trees(4, 3)))
@settings(max_examples=200, deadline=None)
def test_edge_leq_partial_order_with_root_maximum(t):
    E = t.edges
    for e in E:
        assert edge_leq(t, e, e)
        assert edge_leq(t, e, t.root)
    for e, f in itertools.product(E, E):
        if e != f and edge_leq(t, e, f):
            assert not edge_leq(t, f, e)
    for e, f, g in itertools.product(E, E, E):
        if edge_leq(t, e, f) and edge_leq(t, f, g):
            assert edge_leq(t, e, g)


# -- subtrees -------------------------------------------------------------------

def test_subtrees_small():
    assert len(enumerate_subtrees(eta())) == 1
    assert len(enumerate_subtrees(corolla(2))) == 4
    subs = enumerate_subtrees(linear(2))
    assert len(subs) == 6
    assert sorted(s.n_vertices for s, _ in subs) == [0, 0, 0, 1, 1, 2]


def _subtree_count_by_leaf_sets(t: Tree) -> int:
    # a subtree is a root edge e together with an antichain of edges above e that
    # cuts every path from a leaf or stump of T_e down to e
    total = 0
    for e in t.edges:
        total += len(t.cuts(e))
    return total


def _cut_oracle(t: Tree, e: str) -> int:
    # independent recursion: a cut at e is {e} or one cut for each input of e's vertex
    if not t.has_vertex(e):
        return 1
    n = 1
    for c in t.inputs(e):
        n *= _cut_oracle(t, c)
    return n + 1


def test_subtree_counts_match_oracle():
    for t in enumerate_trees(5, 3):
        oracle = sum(_cut_oracle(t, e) for e in t.edges)
        assert len(enumerate_subtrees(t)) == oracle == _subtree_count_by_leaf_sets(t), t


# -- grafting -------------------------------------------------------------------

def test_graft_eta_is_identity():
    s = corolla(2)
    assert graft(s, "a", eta("z")) == s


def test_graft_linear():
    g = graft(linear(1), "0", linear(1))
    assert g.n_vertices == 2 and len(g.edges) == 3 and g.is_linear
    assert is_isomorphic(g, linear(2))


def test_graft_corollas_counts():
    s, r = corolla(2), corolla(2)
    g = graft(s, "a", r)
    assert g.n_vertices == 2
    assert len(g.edges) == len(s.edges) + len(r.edges) - 1 == 5


def test_graft_associative_on_disjoint_leaves():
    s = corolla(2)
    r, q = linear(1), corolla(3)
    one = graft(graft(s, "a", r), "b", q)
    two = graft(graft(s, "b", q), "a", r)
    assert is_isomorphic(one, two)


def test_graft_requires_leaf():
    with pytest.raises(TreeError):
        graft(corolla(2), "r", eta())


# -- canonical forms ------------------------------------------------------------

def test_non_planarity():
    assert is_isomorphic(parse_tree("r[a,b]"), parse_tree("r[b,a]"))
    assert not is_isomorphic(parse_tree("r[a,b]"), parse_tree("r[a]"))


@st.composite
def relabelled(draw):
    t = draw(st.sampled_from(enumerate_trees(4, 3)))
    names = draw(st.lists(st.from_regex(r"[a-z][a-z0-9_]{0,3}", fullmatch=True),
                          min_size=len(t.edges), max_size=len(t.edges), unique=True))
    return t, t.rename(dict(zip(t.edges, names)))


@given(relabelled())
@settings(max_examples=150, deadline=None)
def test_canonical_form_invariant_under_relabelling(pair):
    t, u = pair
    assert canonical_form(t) == canonical_form(u)
    can_u, iso = canonical_tree(u)
    assert can_u == canonical_tree(t)[0]
    assert set(iso) == set(u.edges)


@given(st.sampled_from(enumerate_trees(4, 3)), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_canonical_form_invariant_under_sibling_permutation(t, rnd: random.Random):
    verts = {}
    for v in t.vertices:
        ins = list(t.inputs(v))
        rnd.shuffle(ins)
        verts[v] = ins
    assert canonical_form(Tree(t.root, verts)) == canonical_form(t)


def test_enumerated_trees_pairwise_non_isomorphic():
    ts = enumerate_trees(4, 3)
    assert len({canonical_form(t) for t in ts}) == len(ts)


def _shape_count_oracle(max_vertices: int, max_arity: int) -> list[int]:
    # a[n] = trees with n vertices; a root vertex takes a multiset of k <= max_arity
    # subtrees whose vertex counts sum to n-1 (multisets counted by stars and bars)
    a = [1]
    for n in range(1, max_vertices + 1):
        total = 0
        for k in range(max_arity + 1):
            total += _multiset_count(a, n - 1, k)
        a.append(total)
    return a


def _multiset_count(a, budget, k, smallest=0):
    # multisets of k trees, sizes nondecreasing from ``smallest``, total vertices = budget
    if k == 0:
        return 1 if budget == 0 else 0
    out = 0
    for size in range(smallest, budget + 1):
        for j in range(1, k + 1):
            if j * size > budget:
                break
            out += comb(a[size] + j - 1, j) * _multiset_count(a, budget - j * size, k - j, size + 1)
    return out


def test_tree_counts_match_generating_function():
    expected = _shape_count_oracle(4, 3)
    ts = enumerate_trees(4, 3)
    assert [sum(1 for t in ts if t.n_vertices == n) for n in range(5)] == expected


# -- join with eta --------------------------------------------------------------

def test_join_eta():
    j, iota, gamma = join_eta(eta())
    assert is_isomorphic(j, corolla(1))
    j2, _, _ = join_eta(corolla(1))
    assert is_isomorphic(j2, linear(2))


@pytest.mark.parametrize("t", SMALL_TREES, ids=str)
def test_join_eta_images_disjoint(t):
    j, iota, gamma = join_eta(t)
    assert not set(iota.values()) & set(gamma.values())
    assert j.n_vertices == t.n_vertices + 1
    assert len(j.edges) == len(t.edges) + 1
    assert gamma["e"] == j.root


def test_tree_from_shape():
    assert tree_from_shape("|").n_vertices == 0
    assert tree_from_shape("(||)").shape() == "(||)"
