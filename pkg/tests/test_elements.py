import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dendro.dendroidal.homotopy import check_homotopy, homotopy_failures
from dendro.dendroidal.morphisms import enumerate_tree_morphisms
from dendro.dendroidal.presheaves import NerveBackend, representable
from dendro.dendroidal.simplicial import SimplicialError, last_vertex, linear_order
from dendro.elements import (
    ElementObject, ElementsOperad, RootFunctor, Section, grafting_decompositions, h_uniqueness_count,
    homotopy_h, interchange_failures, naturality_failures, root_core_failures, root_preserving_ops,
    segal_check,
)
from dendro.operads import CommutativeOperad, TreeOperad, check_operad_axioms, is_sigma_free
from dendro.trees import corolla, enumerate_trees, eta, linear, parse_tree, tree_from_shape

C2 = corolla(2)


def _hom_count_oracle(T, bound, arity):
    return sum(len(enumerate_tree_morphisms(S, T)) for S in enumerate_trees(bound, arity))


@pytest.mark.parametrize("T,bound", [(corolla(1), 2), (C2, 2), (linear(2), 2), (parse_tree("r[a[]]"), 2)], ids=str)
def test_objects_of_representables(T, bound):
    E = ElementsOperad(representable(T), bound)
    assert len(E.objects) == _hom_count_oracle(T, bound, 3)


def test_objects_over_c1_at_bound_two():
    # maps [m] -> [1] for m = 0, 1, 2
    assert len(ElementsOperad(representable(corolla(1)), 2).objects) == 2 + 3 + 4


def test_leaf_inclusion_is_an_operation():
    E = ElementsOperad(representable(C2), 1)
    a = ElementObject(tree_from_shape("|"), next(f for f in E.X.dendrices(tree_from_shape("|")) if f("0") == "a"))
    b = ElementObject(tree_from_shape("|"), next(f for f in E.X.dendrices(tree_from_shape("|")) if f("0") == "b"))
    top = next(o for o in E.objects if o.tree.n_vertices == 1 and o.element.is_isomorphism)
    ops = E.operations((a, b), top)
    assert len(ops) == 1
    assert ops[0].root_images() == tuple(top.element.inverse()(x) for x in ("a", "b"))


def test_no_operation_from_one_leaf():
    E = ElementsOperad(representable(C2), 1)
    top = next(o for o in E.objects if o.tree.n_vertices == 1 and o.element.is_isomorphism)
    assert all(len(op.inputs) != 1 or op.maps[0].is_root_preserving
               for op in E.operations_into(top, 1))


@pytest.mark.parametrize("X", [representable(C2), representable(linear(1)), NerveBackend(CommutativeOperad())],
                         ids=repr)
def test_elements_operad_axioms(X):
    E = ElementsOperad(X, 1, max_arity=2)
    assert check_operad_axioms(E, 2) == []
    assert is_sigma_free(E, 3)


def test_nerve_of_commutative_operad_has_free_elements():
    # Comm is not Sigma-free but its operad of elements is
    E = ElementsOperad(NerveBackend(CommutativeOperad()), 1, max_arity=2)
    assert is_sigma_free(E, 2)
    assert not is_sigma_free(CommutativeOperad(), 2)


def test_root_functor_is_an_operad_map():
    for X in [representable(C2), NerveBackend(TreeOperad(linear(2)))]:
        E = ElementsOperad(X, 2, max_arity=2)
        assert RootFunctor(E).as_morphism().check(2) == []


def test_root_functor_on_simplices():
    X = NerveBackend(TreeOperad(linear(2)))
    E = ElementsOperad(X, 2, max_arity=1)
    r = RootFunctor(E)
    for obj in E.objects:
        assert r.on_objects(obj) == obj.element.color[obj.tree.root] == last_vertex(obj.element)


def test_last_vertex_on_eta():
    X = NerveBackend(TreeOperad(linear(2)))
    x = X.dendrices(tree_from_shape("|"))[0]
    assert last_vertex(x) == x.color["0"]


def test_linear_order_rejects_branching():
    with pytest.raises(SimplicialError):
        linear_order(C2)


def test_root_preserving_operations_go_to_identities():
    E = ElementsOperad(representable(linear(2)), 2)
    r = RootFunctor(E)
    ops = list(root_preserving_ops(E))
    assert ops
    assert all(r.sends_to_identity(op) for op in ops)


@pytest.mark.parametrize("T", enumerate_trees(2, 2), ids=str)
def test_naturality_small(T):
    assert naturality_failures(T, NerveBackend(TreeOperad(C2)), 1) == []


# -- the section and the homotopy ---------------------------------------------

@pytest.mark.parametrize("T", enumerate_trees(2, 3), ids=str)
def test_root_core_small(T):
    assert root_core_failures(T) == []


def test_homotopy_at_leaf_of_linear_tree():
    T = linear(2)
    s = Section(T)
    obj = s.on_objects("0")
    assert obj.tree.n_vertices == 0
    h = homotopy_h(s, obj)
    assert h.output == obj and h.maps[0].is_isomorphism
    assert h_uniqueness_count(s, obj) == 1


def test_homotopy_components_are_unique():
    s = Section(parse_tree("r[a[b,c],d]"), object_bound=2)
    for obj in s.E.objects:
        assert h_uniqueness_count(s, obj) == 1


def _homotopy_data(T):
    s = Section(T, object_bound=2)
    E, r = s.E, RootFunctor(s.E)
    lr_obj = lambda o: s.on_objects(r.on_objects(o))
    lr_op = lambda op: s.on_ops(r.on_ops(op))
    return s, E, lr_obj, lr_op


def test_identity_homotopy():
    s, E, _, _ = _homotopy_data(corolla(2))
    assert check_homotopy(E, E, lambda p: p, lambda p: p, lambda c: c, lambda c: c, E.unit, 2)


@pytest.mark.parametrize("T", [linear(1), corolla(2), parse_tree("r[a[b]]")], ids=str)
def test_h_is_a_homotopy_from_id_to_lr(T):
    s, E, lr_obj, lr_op = _homotopy_data(T)
    comp = lambda c: homotopy_h(s, c)
    assert homotopy_failures(E, E, lambda p: p, lr_op, lambda c: c, lr_obj, comp, 2) == []
    assert interchange_failures(s) == []


def test_perturbed_homotopy_fails():
    s, E, lr_obj, lr_op = _homotopy_data(parse_tree("r[a[b]]"))
    comps = {c: homotopy_h(s, c) for c in E.objects}
    # swap one component for another operation with the same profile, if any
    for c, h in comps.items():
        others = [q for q in E.operations(h.inputs, h.output) if q != h]
        if others:
            comps[c] = others[0]
            break
    else:
        # otherwise replace a non-identity component by the identity, breaking its profile
        c = next(c for c, h in comps.items() if h.output != c)
        comps[c] = E.unit(c)
    assert not check_homotopy(E, E, lambda p: p, lr_op, lambda c: c, lr_obj, comps, 2)


# -- Segal ------------------------------------------------------------------------

def test_corolla_has_no_decomposition():
    assert grafting_decompositions(corolla(3)) == []


def test_decompositions_regraft():
    T = parse_tree("r[a[b,c],d[e]]")
    for a, lower, upper in grafting_decompositions(T):
        assert a in lower.leaves and upper.root == a
        assert set(lower.edges) | set(upper.edges) == set(T.edges)
        assert set(lower.edges) & set(upper.edges) == {a}


@given(st.sampled_from([t for t in enumerate_trees(3, 3) if t.inner_edges]), st.data())
@settings(max_examples=40, deadline=None)
def test_segal_for_commutative_and_free(T, data):
    a = data.draw(st.sampled_from(T.inner_edges))
    for P in [CommutativeOperad(), TreeOperad(C2), TreeOperad(linear(2))]:
        ok, _ = segal_check(P, T, a)
        assert ok
