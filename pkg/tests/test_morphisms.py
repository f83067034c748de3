import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from dendro.dendroidal.morphisms import (
    MorphismError, TreeMorphism, automorphisms, contract, degeneracy, enumerate_tree_morphisms,
    external_face, external_faces, factorize, identity, inner_face, normalize_by_automorphism,
)
from dendro.trees import corolla, enumerate_trees, eta, is_isomorphic, linear, parse_tree

TREES = enumerate_trees(2, 2)


def _brute_force_morphisms(S, T):
    # every edge function that satisfies the vertex condition
    found = set()
    for images in itertools.product(T.edges, repeat=len(S.edges)):
        m = dict(zip(S.edges, images))
        try:
            TreeMorphism.from_map(S, T, m)
        except MorphismError:
            continue
        found.add(tuple(images))
    return found


def test_enumeration_matches_brute_force():
    for S, T in itertools.product(TREES, enumerate_trees(3, 2)):
        enumerated = {tuple(f(e) for e in S.edges) for f in enumerate_tree_morphisms(S, T)}
        assert enumerated == _brute_force_morphisms(S, T), (S, T)


@pytest.mark.parametrize("m,n", [(0, 0), (0, 3), (1, 1), (1, 3), (2, 2), (2, 4), (3, 2)])
def test_linear_maps_are_monotone_maps(m, n):
    # maps [m] -> [n] of linear trees are the monotone maps of the ordinals
    assert len(enumerate_tree_morphisms(linear(m), linear(n))) == comb(n + m + 1, m + 1)


def test_vertex_condition_is_checked():
    with pytest.raises(MorphismError):
        TreeMorphism.from_map(corolla(1), corolla(2), {"r": "r", "a": "a"})


def test_inner_face_of_linear_tree():
    f = inner_face(linear(2), "1")
    assert set(f.edge_map.values()) == {"0", "2"}
    assert is_isomorphic(f.source, linear(1))


def test_inner_face_needs_inner_edge():
    with pytest.raises(MorphismError):
        inner_face(linear(2), "0")


def test_degeneracy_of_eta():
    s = degeneracy(eta(), "e")
    assert is_isomorphic(s.source, corolla(1))
    assert set(s.edge_map.values()) == {"e"}


def test_external_faces_of_corolla():
    faces = external_faces(corolla(2))
    assert len(faces) == 3
    assert all(f.source.n_vertices == 0 for f in faces)
    assert {f(f.source.root) for f in faces} == {"r", "a", "b"}


def test_external_face_rejects_inner_vertex():
    t = parse_tree("r[a[b[c]]]")
    with pytest.raises(MorphismError):
        external_face(t, "a")


def test_contract():
    t = parse_tree("r[a[b,c],d]")
    assert contract(t, "a").inputs("r") == ("b", "c", "d")


def test_automorphisms():
    assert len(automorphisms(corolla(2))) == 2
    assert len(automorphisms(corolla(3))) == 6
    assert len(automorphisms(linear(3))) == 1
    assert len(automorphisms(parse_tree("r[a[b,c],d[e,f]]"))) == 8


def test_composition_is_associative_and_unital():
    S, T, U = corolla(1), corolla(2), parse_tree("r[a[b,c],d]")
    for f in enumerate_tree_morphisms(S, T):
        assert f.then(identity(T)) == f == identity(S).then(f)
        for g in enumerate_tree_morphisms(T, U):
            h = f.then(g)
            TreeMorphism.from_map(h.source, h.target, h.edge_map)  # composites stay valid


def test_inverse():
    f = enumerate_tree_morphisms(corolla(2), corolla(2))[1]
    assert f.then(f.inverse()) == identity(corolla(2))


def test_up_to_automorphism_representatives():
    for S, T in itertools.product(TREES, enumerate_trees(3, 2)):
        all_maps = enumerate_tree_morphisms(S, T)
        reps = enumerate_tree_morphisms(S, T, up_to_automorphism=True)
        auts = automorphisms(S)
        orbits = {frozenset(a.then(f).mapping for a in auts) for f in all_maps}
        assert len(reps) == len(orbits)
        for f in all_maps:
            assert normalize_by_automorphism(f)[0] in reps


def _all_morphisms(max_vertices):
    trees = enumerate_trees(max_vertices, 2)
    return [f for S in trees for T in trees for f in enumerate_tree_morphisms(S, T)]


@given(st.sampled_from(_all_morphisms(3)))
@settings(max_examples=300, deadline=None)
def test_factorization_recomposes(f):
    fac = factorize(f)
    assert fac.compose() == f
    kinds = fac.kinds
    order = ["degeneracy", "isomorphism", "inner_face", "external_face"]
    assert [order.index(k) for k in kinds] == sorted(order.index(k) for k in kinds)
    for _, step in fac.steps:
        TreeMorphism.from_map(step.source, step.target, step.edge_map)


def test_factorization_of_identity():
    fac = factorize(identity(corolla(2)))
    assert fac.kinds == ["isomorphism"]
