import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dendro.algebras import (
    AlgebraError, build_r_f, count_functions_oracle, enumerate_algebras,
    is_locally_constant, pullback_algebra, s_over_x,
)
from dendro.dendroidal.presheaves import NerveBackend
from dendro.elements import ElementsOperad
from dendro.operads import CommutativeOperad, OperadMorphism, TableOperad, TreeOperad
from dendro.trees import corolla, linear, tree_from_shape

ARROW = TreeOperad(linear(1))
(GEN,) = ARROW.operations(["0"], "1")


def _functions_oracle(bound):
    # algebras over 0 -> 1 are functions m -> n between nonempty sets
    return sum(n ** m for m in range(1, bound + 1) for n in range(1, bound + 1))


def test_algebras_over_an_arrow():
    algebras = enumerate_algebras(ARROW, 2)
    assert len(algebras) == 8 == _functions_oracle(2)
    assert count_functions_oracle(2) == (8, 3)
    assert all(a.check() == [] for a in algebras)


@pytest.mark.parametrize("bound", [1, 2, 3])
def test_function_oracle_agrees(bound):
    assert len(enumerate_algebras(ARROW, bound)) == count_functions_oracle(bound)[0] == _functions_oracle(bound)


def test_algebras_over_a_corolla():
    # a binary function A(a) x A(b) -> A(r): sum of n_r ** (n_a * n_b)
    expected = sum(r ** (a * b) for a, b, r in itertools.product(range(1, 3), repeat=3))
    assert expected == 30
    assert len(enumerate_algebras(TreeOperad(corolla(2)), 2)) == expected


def test_commutative_monoids_on_two_elements():
    # one on a point, and on {0, 1}: a choice of unit and of x * x
    assert len(enumerate_algebras(CommutativeOperad(), 2)) == 5


def test_trivial_operad_has_one_algebra():
    assert len(enumerate_algebras(TableOperad(["x"], []), 1)) == 1


def test_node_budget():
    with pytest.raises(AlgebraError):
        enumerate_algebras(TreeOperad(corolla(2)), 2, max_nodes=3)


def test_locally_constant_are_the_bijective_ones():
    algebras = enumerate_algebras(ARROW, 2)
    kept = [a for a in algebras if is_locally_constant(a, [GEN])]
    assert len(kept) == 3
    for a in kept:
        assert sorted(a.unary_map(GEN)) == list(range(a.sizes["0"]))


def test_non_injective_map_is_not_locally_constant():
    collapse = next(a for a in enumerate_algebras(ARROW, 2)
                    if a.sizes == {"0": 2, "1": 2} and len(set(a.unary_map(GEN))) == 1)
    assert not is_locally_constant(collapse, [GEN])


def test_empty_set_of_arrows():
    assert all(is_locally_constant(a, []) for a in enumerate_algebras(ARROW, 2))


def test_locally_constant_rejects_non_unary():
    P = TreeOperad(corolla(2))
    a = enumerate_algebras(P, 1)[0]
    with pytest.raises(AlgebraError):
        is_locally_constant(a, P.operations(["a", "b"], "r"))


def _inclusion(m, n, f):
    em = f.edge_map
    return OperadMorphism(TreeOperad(linear(m)), TreeOperad(linear(n)), em.__getitem__,
                          lambda op: (tuple(em[l] for l in op[0]), em[op[1]]))


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_pullback_along_an_inclusion(data):
    from dendro.dendroidal.morphisms import enumerate_tree_morphisms
    big = TreeOperad(linear(2))
    A = data.draw(st.sampled_from(enumerate_algebras(big, 2)))
    f = data.draw(st.sampled_from(enumerate_tree_morphisms(linear(1), linear(2))))
    F = _inclusion(1, 2, f)
    B = pullback_algebra(A, F)
    assert B.check() == []
    (p,) = ARROW.operations(["0"], "1")
    assert B.unary_map(p) == A.unary_map(F.on_ops(p))


def test_algebra_json():
    a = enumerate_algebras(ARROW, 1)[0]
    doc = a.to_json()
    assert doc["carriers"] == [["'0'", 1], ["'1'", 1]]
    assert doc["table"] == [[ARROW.op_key(GEN), [0], 0]]


def test_r_f_is_an_operation_of_the_elements_operad():
    X = NerveBackend(TreeOperad(linear(2)))
    C1 = tree_from_shape("(|)")
    E = ElementsOperad(X, 1)
    S = X.dendrices(C1)
    ops = s_over_x(X, S)
    assert len(ops) == len(S)
    for f, r in zip(S, ops):
        assert r.output.element == f and r.inputs[0].tree.n_vertices == 0
        assert r in E.operations(r.inputs, r.output)
        assert r.maps[0].is_root_preserving
        assert build_r_f(X, f) == r
