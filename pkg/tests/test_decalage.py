import json

import pytest

from dendro.categories import FiniteCategory
from dendro.dendroidal.morphisms import TreeMorphism, enumerate_tree_morphisms
from dendro.dendroidal.presheaves import NerveBackend
from dendro.decalage import (
    DecalageError, FinitePresheaf, GenericElementsOperad, NervePresheaf, dendroidal_decalage,
    final_object_functor, naturality_in_operad_failures, simplicial_decalage, validate_decalage,
)
from dendro.elements import ElementsOperad, RootFunctor
from dendro.io import decalage_from_json
from dendro.operads import OperadMorphism, TreeOperad, check_operad_axioms
from dendro.trees import corolla, linear, tree_from_shape

C2 = corolla(2)
AXIOMS = ["root_final", "omega_functor", "shift_functor", "iota_natural", "gamma_natural",
          "axiom1_discrete_fibration", "axiom2_cartesian", "axiom3_empty_pullback"]


def _terminal_doc(objects):
    return {
        "schema": "dendro/1", "kind": "decalage",
        "category": FiniteCategory.terminal().to_json(),
        "omega": {"*": {"objects": objects}},
        "root": {"*": objects[0]} if objects else {},
        "base": "*", "shift": {"*": "*"},
        "iota": {"*": "id_*"}, "gamma": {"*": "id_*"},
    }


def test_report_lists_every_axiom():
    report = validate_decalage(simplicial_decalage(2))
    assert [r.name for r in report.results] == AXIOMS
    assert json.loads(json.dumps(report.to_json()))["passed"] is True


def test_terminal_category_with_one_color_fails_empty_pullback():
    # iota and gamma hit the same color, so their pullback is not empty
    report = validate_decalage(decalage_from_json(_terminal_doc(["x"])))
    assert report.failed() == ["axiom3_empty_pullback"]


def test_terminal_category_with_empty_operad_passes():
    report = validate_decalage(decalage_from_json(_terminal_doc([])))
    assert report.passed


@pytest.mark.parametrize("bound", [0, 1, 2, 3])
def test_simplicial_instance_passes(bound):
    assert validate_decalage(simplicial_decalage(bound)).passed


def test_dendroidal_instance_fails_only_functoriality_of_the_join():
    report = validate_decalage(dendroidal_decalage(2))
    assert report.failed() == ["shift_functor"]
    assert "undefined" in report["shift_functor"].witness


def test_join_is_undefined_off_linear_root_paths():
    d = dendroidal_decalage(1)
    leaf = TreeMorphism.from_map(tree_from_shape("|"), C2, {"0": "a"})
    with pytest.raises(DecalageError):
        d.shift_map(leaf)
    # along a linear path to the root the unary operation exists
    lin = TreeMorphism.from_map(tree_from_shape("|"), linear(1), {"0": "0"})
    assert d.shift_map(lin).target.n_vertices == 2


@pytest.mark.parametrize("bound", [1, 2])
def test_root_preserving_subcategory_passes(bound):
    assert validate_decalage(dendroidal_decalage(bound, root_preserving_only=True)).passed


def test_gamma_through_iota_breaks_empty_pullback():
    d = dendroidal_decalage(1, root_preserving_only=True)
    eta = d.base

    def through_iota(t):
        at_root = TreeMorphism.from_map(eta, t, {eta.root: t.root})
        return d.compose(d.iota(t), at_root)

    d.gamma = through_iota
    assert "axiom3_empty_pullback" in validate_decalage(d).failed()


def test_generic_elements_agree_with_module_elements():
    P = TreeOperad(C2)
    d = dendroidal_decalage(2)
    G = GenericElementsOperad(d, NervePresheaf(d, P))
    E = ElementsOperad(NerveBackend(P), 2)
    assert {(a, x) for a, x in G.objects} == {(o.tree, o.element) for o in E.objects}
    gen = {(tuple(op.inputs), op.output, op.arrows) for op in G.iter_operations(3)}
    mod = {(tuple((o.tree, o.element) for o in op.inputs), (op.output.tree, op.output.element), op.maps)
           for op in E.iter_operations(3)}
    assert gen == mod


def test_final_object_functor_is_the_root_functor():
    from dendro.suites import _as_element_op
    P = TreeOperad(C2)
    d = dendroidal_decalage(2)
    G = GenericElementsOperad(d, NervePresheaf(d, P))
    final, root = final_object_functor(d, P, G), RootFunctor(ElementsOperad(NerveBackend(P), 2))
    for obj in G.objects:
        assert final.on_objects(obj) == obj[1].color[obj[0].root]
    for op in G.iter_operations(3):
        assert final.on_ops(op) == root.on_ops(_as_element_op(op))


def test_final_object_functor_is_an_operad_map():
    P = TreeOperad(linear(1))
    d = dendroidal_decalage(1)
    F = final_object_functor(d, P)
    assert F.check(2) == []
    assert check_operad_axioms(F.source, 2) == []


def test_final_object_functor_is_natural_in_the_operad():
    d = dendroidal_decalage(1)
    f = next(g for g in enumerate_tree_morphisms(linear(1), linear(2)) if g.is_injective)
    m = f.edge_map
    u = OperadMorphism(TreeOperad(linear(1)), TreeOperad(linear(2)), m.__getitem__,
                       lambda op: (tuple(m[l] for l in op[0]), m[op[1]]))
    assert u.check(2) == []
    assert naturality_in_operad_failures(d, u) == []


def test_generic_elements_of_a_table_presheaf():
    # a presheaf on the simplices with one element in each degree is the terminal one
    d = simplicial_decalage(1)
    X = FinitePresheaf(lambda n: ("pt",), lambda f, x: x)
    G = GenericElementsOperad(d, X)
    assert len(G.objects) == 2
    assert check_operad_axioms(G, 1) == []
