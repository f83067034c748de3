import itertools
import warnings

import pytest

from dendro.dendroidal.morphisms import enumerate_tree_morphisms
from dendro.operads import TreeOperad, check_operad_axioms, nerve_dendrices
from dendro.tensor import (
    TensorBoundWarning, compare_tensor_nerve, nerve_count_oracle, sigma_nm, tensor,
)
from dendro.trees import corolla, enumerate_trees, eta, linear, tree_from_shape

C1, C2, C3 = (tree_from_shape(s) for s in ("(|)", "(||)", "(|||)"))


def _tensor(T, S, bound=3):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TensorBoundWarning)
        return tensor(TreeOperad(T), TreeOperad(S), bound)


def test_sigma_nm():
    assert sigma_nm(1, 3) == (0, 1, 2)
    assert sigma_nm(2, 2) == (0, 2, 1, 3)
    assert sorted(sigma_nm(3, 2)) == list(range(6))


@pytest.mark.parametrize("T,S", list(itertools.product(enumerate_trees(1, 2), repeat=2)), ids=str)
def test_objects_multiply(T, S):
    TS = _tensor(T, S, 2)
    assert len(TS.objects) == len(T.edges) * len(S.edges)


def test_square_of_arrows():
    # [1] (x) [1] is the commutative square: one arrow between comparable pairs
    TS = _tensor(C1, C1)
    assert not TS.frontier_touched
    counts = TS.class_counts()
    unary = {sig: n for sig, n in counts.items() if len(sig[0]) == 1}
    assert set(unary.values()) == {1}
    assert len(unary) == 9  # 4 identities, 4 edges of the square, 1 diagonal


@pytest.mark.parametrize("n", [0, 1, 2])
def test_nerve_of_square_on_linear_trees(n):
    # monotone maps [n] -> [1] x [1] are pairs of monotone maps [n] -> [1]
    TS = _tensor(C1, C1)
    assert len(nerve_dendrices(linear(n), TS)) == (n + 2) ** 2


def test_unit_factor():
    # Omega(eta) (x) Omega(S) is Omega(S)
    for S in enumerate_trees(1, 2):
        TS = _tensor(eta(), S, 2)
        for R in enumerate_trees(2, 2):
            assert len(nerve_dendrices(R, TS)) == len(enumerate_tree_morphisms(R, S))


def test_interchange_for_corolla_and_arrow():
    TS = _tensor(C2, C1)
    assert not TS.frontier_touched
    P, Q = TS.P, TS.Q
    p = P.operations(C2.inputs(C2.root), C2.root)[0]
    q = Q.operations(C1.inputs(C1.root), C1.root)[0]
    (leaf,) = C1.inputs(C1.root)
    lhs = TS.compose(TS.q_gen(C2.root, q), 0, TS.p_gen(p, leaf))
    rhs = TS.p_gen(p, C1.root)
    for i in reversed(range(2)):
        rhs = TS.compose(rhs, i, TS.q_gen(C2.inputs(C2.root)[i], q))
    assert TS.same_class(lhs, rhs)
    ins = tuple((c, leaf) for c in C2.inputs(C2.root))
    assert len(TS.operations(ins, (C2.root, C1.root))) == 1


def test_tensor_satisfies_operad_axioms():
    assert check_operad_axioms(_tensor(C1, C1), 2) == []


def test_figure_composites_agree():
    from dendro.suites import _figure_composites_agree
    TP = _tensor(C3, C1)
    assert not TP.frontier_touched
    assert _figure_composites_agree(TP, C3, C1)


def test_nerve_comparison():
    for T, S in itertools.product(enumerate_trees(1, 2), repeat=2):
        for R in enumerate_trees(1, 2):
            cmp = compare_tensor_nerve(T, S, R, 3)
            assert cmp.conclusive and cmp.agree, (T, S, R)


def test_nerve_count_oracle_on_free_operads():
    for R, T in itertools.product(enumerate_trees(2, 2), repeat=2):
        assert nerve_count_oracle(R, TreeOperad(T)) == len(enumerate_tree_morphisms(R, T))


def test_small_bound_warns():
    with pytest.warns(TensorBoundWarning):
        TS = tensor(TreeOperad(C2), TreeOperad(C2), 1)
    assert TS.frontier_touched
