import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dendro.categories import FiniteCategory
from dendro.dendroidal.morphisms import enumerate_tree_morphisms
from dendro.operads import (
    CommutativeOperad, OperadError, TableOperad, TreeOperad, check_operad_axioms, enumerate_morphisms,
    free_operad, from_category, is_sigma_free, nerve_dendrices, object_poset, sigma_free_witness,
    underlying_category,
)
from dendro.trees import corolla, edge_leq, enumerate_trees, eta, graft_with_maps, is_isomorphic, linear


def test_free_operad_on_corolla():
    P = free_operad(corolla(2))
    assert len(P.operations(("a", "b"), "r")) == 1
    assert len(P.operations(("b", "a"), "r")) == 1
    assert P.operations(("a",), "r") == ()


def test_free_operad_on_linear():
    P = free_operad(linear(2))
    assert len(P.operations(("0",), "2")) == 1
    assert P.operations(("2",), "0") == ()


def test_free_operad_on_eta_has_only_the_unit():
    P = free_operad(eta())
    assert P.objects == ("e",)
    assert list(P.iter_operations(3)) == [P.unit("e")]


def _orbit_oracle(t):
    # operations = sum over subtrees of (number of leaves)!
    from math import factorial
    from dendro.trees import enumerate_subtrees
    return sum(factorial(len(s.leaves)) if s.n_vertices else 1 for s, _ in enumerate_subtrees(t))


def test_operation_counts_match_subtrees():
    for t in enumerate_trees(4, 3):
        P = free_operad(t)
        assert sum(1 for _ in P.iter_operations()) == _orbit_oracle(t), t


def test_free_operad_composition_is_grafting():
    for t in enumerate_trees(3, 2):
        P = free_operad(t)
        ops = list(P.iter_operations(3))
        for p, q in itertools.product(ops, ops):
            for i, c in enumerate(p[0]):
                if q[1] != c:
                    continue
                pq = P.compose(p, i, q)
                grafted, _, _ = graft_with_maps(P.subtree_of(p), c, P.subtree_of(q))
                assert is_isomorphic(P.subtree_of(pq), grafted)
                assert set(P.subtree_of(pq).edges) == set(P.subtree_of(p).edges) | set(P.subtree_of(q).edges)


@pytest.mark.parametrize("t", enumerate_trees(2, 2), ids=str)
def test_free_operads_satisfy_axioms(t):
    assert check_operad_axioms(free_operad(t)) == []


def test_commutative_operad_axioms_and_sigma():
    C = CommutativeOperad()
    assert check_operad_axioms(C, 3) == []
    assert not is_sigma_free(C, 2)
    op, sigma = sigma_free_witness(C, 2)
    assert op == ("com", 2) and sigma == (1, 0)


def test_free_operads_are_sigma_free():
    for t in enumerate_trees(2, 3):
        assert is_sigma_free(free_operad(t)), t
    for t in enumerate_trees(5, 3, min_vertices=3):
        assert is_sigma_free(free_operad(t), 3), t


def test_category_operads_are_sigma_free():
    P = from_category(FiniteCategory.from_poset([0, 1, 2], chain=True))
    assert is_sigma_free(P)


def test_object_poset_of_linear_tree():
    rel = object_poset(free_operad(linear(2)))
    assert {("0", "1"), ("1", "2"), ("0", "2")} <= rel
    assert ("2", "0") not in rel


def test_object_poset_of_discrete_operad():
    P = TableOperad(["x", "y"], [])
    assert object_poset(P) == {("x", "x"), ("y", "y")}


def test_object_poset_matches_edge_order():
    for t in enumerate_trees(5, 3):
        # corollas generate, so operations up to the vertex arity suffice
        rel = object_poset(free_operad(t), 3)
        assert rel == {(e, f) for e in t.edges for f in t.edges if edge_leq(t, e, f)}, t


def test_from_terminal_category():
    P = from_category(FiniteCategory.terminal())
    assert P.objects == ("*",)
    assert [P.op_key(o) for o in P.iter_operations(3)] == ["id_*"]


def test_underlying_category_of_corolla_is_discrete():
    cat = underlying_category(free_operad(corolla(2)))
    assert len(cat.objects) == 3
    assert all(a.source == a.target for a in cat.arrows.values())
    assert len(cat.arrows) == 3


def test_category_round_trip():
    cat = FiniteCategory.from_poset([0, 1, 2], chain=True)
    back = underlying_category(from_category(cat))
    assert set(back.objects) == set(cat.objects)
    assert len(back.arrows) == len(cat.arrows) == 6
    for (g, f), r in cat.composition.items():
        assert back.compose(g, f) == r


def test_hom_from_eta_is_objects():
    for P in [free_operad(corolla(2)), CommutativeOperad(), free_operad(linear(2))]:
        assert len(enumerate_morphisms(free_operad(eta()), P)) == len(P.objects)


def test_hom_from_corolla1_counts_unary_operations():
    for P in [free_operad(linear(2)), free_operad(corolla(2)), CommutativeOperad()]:
        unary = sum(1 for c in P.objects for _ in P.operations_into(c, 1))
        assert len(enumerate_morphisms(free_operad(corolla(1)), P)) == unary


def test_hom_corolla_to_itself():
    assert len(enumerate_morphisms(free_operad(corolla(2)), free_operad(corolla(2)))) == 2


def test_morphisms_match_tree_morphisms():
    trees = enumerate_trees(2, 2)
    for S, T in itertools.product(trees, trees):
        ops = enumerate_morphisms(free_operad(S), free_operad(T))
        maps = enumerate_tree_morphisms(S, T)
        assert len(ops) == len(maps), (S, T)
        assert {tuple(m.on_objects(e) for e in S.edges) for m in ops} == \
               {tuple(f(e) for e in S.edges) for f in maps}


def test_enumerated_morphisms_are_operad_maps():
    for m in enumerate_morphisms(free_operad(corolla(2)), CommutativeOperad()):
        assert m.check(3) == []


def _poset_operad():
    return from_category(FiniteCategory.from_poset([0, 1], chain=True))


def test_table_operad_json_round_trip():
    for P in [_poset_operad(), TableOperad.from_operad(free_operad(corolla(2)))]:
        back = TableOperad.from_json(P.to_json())
        assert set(back.ops) == set(P.ops)
        assert back.comp == P.comp


def test_tabulated_free_operad_is_an_operad():
    T = TableOperad.from_operad(free_operad(linear(2)))
    assert check_operad_axioms(T) == []


def test_table_operad_rejects_unknown_color():
    with pytest.raises(OperadError):
        TableOperad(["x"], [("f", ["x"], "y")])


def test_table_operad_rejects_missing_composite():
    with pytest.raises(OperadError):
        TableOperad(["x"], [("f", ["x"], "x")])


def test_table_operad_detects_broken_associativity():
    comps = {("f", 0, "f"): "g", ("f", 0, "g"): "f", ("g", 0, "f"): "g", ("g", 0, "g"): "f"}
    with pytest.raises(OperadError):
        TableOperad(["x"], [("f", ["x"], "x"), ("g", ["x"], "x")], comps)


@given(st.sampled_from(enumerate_trees(3, 3)), st.data())
@settings(max_examples=60, deadline=None)
def test_dendrex_pull_back_is_functorial(t, data):
    P = CommutativeOperad()
    xs = nerve_dendrices(t, P)
    x = data.draw(st.sampled_from(xs))
    sources = enumerate_trees(2, 2)
    S = data.draw(st.sampled_from(sources))
    fs = enumerate_tree_morphisms(S, t)
    if not fs:
        return
    f = data.draw(st.sampled_from(fs))
    R = data.draw(st.sampled_from(sources))
    gs = enumerate_tree_morphisms(R, S)
    if not gs:
        return
    g = data.draw(st.sampled_from(gs))
    assert x.pull_back(f).pull_back(g) == x.pull_back(g.then(f))


def test_nerve_of_free_operad_is_representable():
    for S, T in itertools.product(enumerate_trees(2, 2), repeat=2):
        assert len(nerve_dendrices(S, free_operad(T))) == len(enumerate_tree_morphisms(S, T))


def test_tree_operad_rejects_bad_composition():
    P = TreeOperad(corolla(2))
    with pytest.raises(OperadError):
        P.compose((("a", "b"), "r"), 0, (("b",), "b"))
