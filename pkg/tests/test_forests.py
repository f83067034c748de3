import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dendro.dendroidal.morphisms import TreeMorphism, enumerate_tree_morphisms
from dendro.forests import (
    Forest, ForestError, ForestMorphism, decompose_wide_independent, direct_sum, enumerate_forest_morphisms,
    forest_root_face, is_independent, is_wide, maximal_paths, parse_forest, recompose, wide_lemma_check,
)
from dendro.trees import corolla, enumerate_trees, eta, is_isomorphic, linear, parse_tree

C2 = corolla(2)


def _leaf(tree, e):
    return TreeMorphism.from_map(eta("x"), tree, {"x": e})


def test_parse_forest():
    f = parse_forest("r[a,b] + e")
    assert len(f) == 2 and f.n_edges == 4
    with pytest.raises(ForestError):
        parse_forest("r[a] + ")


def test_direct_sum():
    f = direct_sum(parse_forest("a"), parse_forest("r[b] + c"))
    assert len(f) == 3


def test_tree_maps_are_independent():
    for S, T in itertools.product(enumerate_trees(2, 2), repeat=2):
        for f in enumerate_tree_morphisms(S, T):
            assert is_independent(ForestMorphism.into_tree([f]))


def test_same_leaf_twice_is_not_independent():
    f = ForestMorphism.into_tree([_leaf(C2, "a"), _leaf(C2, "a")])
    assert not is_independent(f)


def test_two_leaves_independent_and_wide():
    f = ForestMorphism.into_tree([_leaf(C2, "a"), _leaf(C2, "b")])
    assert is_independent(f) and is_wide(f) and wide_lemma_check(f)


def test_one_leaf_not_wide():
    f = ForestMorphism.into_tree([_leaf(C2, "a")])
    assert not is_wide(f) and not wide_lemma_check(f)


def test_linear_maps_are_wide():
    for m, n in itertools.product(range(4), repeat=2):
        for f in enumerate_tree_morphisms(linear(m), linear(n)):
            g = ForestMorphism.into_tree([f])
            assert is_wide(g) and is_independent(g)


def test_root_preserving_maps_are_wide():
    for S, T in itertools.product(enumerate_trees(2, 2), enumerate_trees(3, 2)):
        for f in enumerate_tree_morphisms(S, T, root_image=T.root):
            assert is_wide(ForestMorphism.into_tree([f]))


def test_identity_is_wide():
    for t in enumerate_trees(3, 3):
        f = TreeMorphism.from_map(t, t, {e: e for e in t.edges})
        assert wide_lemma_check(ForestMorphism.into_tree([f]))


def test_maximal_paths():
    assert len(maximal_paths(C2)) == 2
    assert maximal_paths(parse_tree("r[a[]]")) == ()


def test_wide_lemma_rejects_dependent_maps():
    f = ForestMorphism.into_tree([_leaf(C2, "a"), _leaf(C2, "r")])
    with pytest.raises(ForestError):
        wide_lemma_check(f)


def _small_forests():
    trees = enumerate_trees(1, 2)
    for k in (1, 2):
        for combo in itertools.combinations_with_replacement(trees, k):
            yield Forest(combo)


def test_wideness_criteria_agree_small():
    for forest in _small_forests():
        for T in enumerate_trees(2, 2):
            for f in enumerate_forest_morphisms(forest, T, independent_only=True):
                assert is_wide(f) == wide_lemma_check(f)


def test_forest_root_face_of_two_etas():
    bar, rho = forest_root_face(Forest((eta(), eta())))
    assert is_isomorphic(bar, C2)
    assert {x for _, x in rho.root_images()} == set(bar.leaves)
    assert is_wide(rho) and is_independent(rho)


def test_forest_root_face_of_one_tree():
    T = corolla(2)
    bar, rho = forest_root_face(Forest((T,)))
    assert bar.n_vertices == 2 and bar.inputs(bar.root) == (rho.maps[0](T.root),)
    assert set(bar.edges) - set(rho.maps[0].edge_map.values()) == {bar.root}
    assert is_wide(rho)


def test_forest_root_face_needs_constituents():
    with pytest.raises(ForestError):
        forest_root_face(Forest(()))


def test_root_preserving_map_is_one_generator():
    t = parse_tree("r[a[b,c],d]")
    f = next(iter(enumerate_tree_morphisms(C2, t, root_image="r")))
    gens = decompose_wide_independent(ForestMorphism.into_tree([f]))
    assert [g.kind for g in gens] == ["root_preserving"]
    assert recompose(gens) == ForestMorphism.into_tree([f])


def test_forest_root_face_is_one_generator():
    _, rho = forest_root_face(Forest((eta(), C2)))
    gens = decompose_wide_independent(rho)
    assert [g.kind for g in gens] == ["root_face"]


def test_two_etas_into_grafted_corolla():
    target = parse_tree("r[s[a,b]]")
    f = ForestMorphism.into_tree([_leaf(target, "a"), _leaf(target, "b")])
    gens = decompose_wide_independent(f)
    assert [g.kind for g in gens] == ["root_face", "root_preserving"]
    assert recompose(gens) == f


def test_decomposition_rejects_non_wide():
    with pytest.raises(ForestError):
        decompose_wide_independent(ForestMorphism.into_tree([_leaf(C2, "a")]))


def _wide_independent_maps():
    out = []
    for forest in _small_forests():
        for T in enumerate_trees(3, 2):
            for f in enumerate_forest_morphisms(forest, T, independent_only=True):
                if is_wide(f):
                    out.append(f)
    return out


@given(st.sampled_from(_wide_independent_maps()))
@settings(max_examples=200, deadline=None)
def test_decomposition_recomposes(f):
    gens = decompose_wide_independent(f)
    assert recompose(gens) == f
    for g in gens:
        assert is_wide(g.morphism) and is_independent(g.morphism)
        if g.kind == "root_preserving":
            assert all(m.is_root_preserving for m in g.morphism.maps)


def test_composition_of_forest_maps():
    _, rho = forest_root_face(Forest((eta(), eta())))
    f = ForestMorphism.into_tree([TreeMorphism.from_map(rho.target[0], rho.target[0],
                                                        {e: e for e in rho.target[0].edges})])
    assert rho.then(f) == rho
