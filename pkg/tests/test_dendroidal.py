import pytest

from dendro.dendroidal.horns import (
    HornError, HornProblem, all_faces, check_compatibility, elementary_faces, enumerate_horn_problems,
    horn_filler_counts, solve_inner_horn,
)
from dendro.dendroidal.localization import Glued, iso_nerve, localize_truncated
from dendro.dendroidal.presheaves import (
    BoundError, NerveBackend, TruncatedPresheaf, check_functoriality, is_normal, normality_witness,
    representable,
)
from dendro.operads import CommutativeOperad, TreeOperad
from dendro.trees import corolla, enumerate_trees, eta, linear, parse_tree, tree_from_shape

C1 = tree_from_shape("(|)")


def _nerve_of_chain(n, bound=2):
    return TruncatedPresheaf.from_dendroidal_set(NerveBackend(TreeOperad(linear(n))), bound, max_arity=1)


def test_faces_of_eta_and_corolla():
    assert elementary_faces(eta()) == {}
    assert len(elementary_faces(corolla(2))) == 3
    assert len(all_faces(corolla(2))) == 4


def test_faces_of_linear_tree():
    faces = elementary_faces(linear(2))
    assert sorted(k for k, _ in faces) == ["external", "external", "inner"]


def test_inner_horn_in_chain_nerve_has_unique_filler():
    X = NerveBackend(TreeOperad(linear(2)))
    counts = horn_filler_counts(X, linear(2), ("inner", "1"))
    assert counts and all(n == 1 for n in counts)


def test_missing_composite_gives_no_filler():
    X = _nerve_of_chain(2)
    big = linear(2)
    # drop the dendrices at [2] whose inner face is the composite 0 -> 2
    keep = tuple(x for x in X.dendrices(big) if len({x.color[e] for e in big.edges}) < 3)
    broken = TruncatedPresheaf(2, {**X.elements, big.shape(): keep}, X.act, max_arity=1)
    counts = horn_filler_counts(broken, big, ("inner", "1"))
    assert 0 in counts


def test_solve_inner_horn():
    X = NerveBackend(TreeOperad(parse_tree("r[a[b,c],d]")))
    T = tree_from_shape("((||)|)")
    (label,) = [k for k in elementary_faces(T) if k[0] == "inner"]
    problems = list(enumerate_horn_problems(X, T, label))
    assert problems
    for p in problems:
        assert check_compatibility(X, p) == []
        assert len(solve_inner_horn(X, p)) == 1


def test_solve_rejects_outer_horn():
    X = NerveBackend(TreeOperad(linear(2)))
    label = next(k for k in elementary_faces(linear(2)) if k[0] == "external")
    p = next(enumerate_horn_problems(X, linear(2), label))
    with pytest.raises(HornError):
        solve_inner_horn(X, p)


def test_incompatible_family_is_reported():
    X = NerveBackend(TreeOperad(linear(2)))
    T = linear(2)
    p = next(enumerate_horn_problems(X, T, ("inner", "1")))
    faces = p.faces()
    k = sorted(p.family)[0]
    other = [x for x in X.dendrices(faces[k].source) if x != p.family[k]]
    bad = HornProblem(T, p.missing, {**p.family, k: other[0]})
    assert check_compatibility(X, bad)
    with pytest.raises(HornError):
        solve_inner_horn(X, bad)


def test_commutative_nerve_is_not_normal():
    tree, x, a = normality_witness(NerveBackend(CommutativeOperad()), 1)
    assert tree.shape() == "(||)"
    assert not is_normal(NerveBackend(CommutativeOperad()), 1)


def test_representables_are_normal():
    for T in enumerate_trees(2, 2):
        assert is_normal(representable(T), 2, 2)


def test_truncated_presheaf_is_functorial():
    X = _nerve_of_chain(2)
    assert check_functoriality(X, enumerate_trees(2, 1)) == []


def test_truncation_bound_is_enforced():
    X = _nerve_of_chain(1, bound=1)
    with pytest.raises(BoundError):
        X.dendrices(linear(2))


def test_table_presheaf_round_trip():
    X = _nerve_of_chain(1, bound=1)
    Y = TruncatedPresheaf.from_table(1, X.elements, X.tabulate(), max_arity=1)
    assert check_functoriality(Y, enumerate_trees(1, 1)) == []


# -- localization ---------------------------------------------------------------

def test_localizing_nothing_changes_nothing():
    X = _nerve_of_chain(1)
    Y = localize_truncated(X, [], 2)
    for t in enumerate_trees(2, 1):
        assert Y.dendrices(t) == X.dendrices(t)


def test_localizing_adds_an_inverse():
    X = _nerve_of_chain(1)
    arrow = next(x for x in X.dendrices(C1) if x.color["0"] != x.color["1"])
    Y = localize_truncated(X, [arrow], 2)
    new = [x for x in Y.dendrices(C1) if isinstance(x, Glued)]
    assert len(Y.dendrices(C1)) == len(X.dendrices(C1)) + 1
    assert new[0].coloring == (1, 0)
    assert check_functoriality(Y, enumerate_trees(2, 1)) == []


def test_localized_inverse_composes_to_identities():
    X = _nerve_of_chain(1)
    arrow = next(x for x in X.dendrices(C1) if x.color["0"] != x.color["1"])
    Y = localize_truncated(X, [arrow], 2)
    big = linear(2)
    # the 2-simplex (0, 1, 0) of the glued copy exists, so the inverse is a two-sided one
    assert any(isinstance(x, Glued) and x.coloring == (0, 1, 0) for x in Y.dendrices(big))


def test_localize_rejects_unknown_arrow():
    with pytest.raises(ValueError):
        localize_truncated(_nerve_of_chain(1), ["nope"], 2)


def test_iso_nerve_counts():
    J = iso_nerve(2)
    assert [len(J.dendrices(linear(n))) for n in range(3)] == [2, 4, 8]
    assert J.dendrices(corolla(2)) == ()
