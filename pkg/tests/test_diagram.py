import pytest
from hypothesis import given, settings, strategies as st

from factory import SPLICED, THREE, TREFOIL, random_tree, star, two_stars
from graphlink.calculus import split
from graphlink.diagram import (
    Arrow, Edge, SpliceDiagram, Stub, components, disjoint_union, geodesic, side_of, validate,
)
from graphlink.errors import DifferentComponents, SelfPathOnLeaf, UnknownElement


def codes(d, strict=False):
    return sorted(v.code for v in validate(d, strict))


def test_trefoil_star_is_valid():
    assert validate(TREFOIL) == []
    assert validate(TREFOIL, strict=True) == []


def test_empty_diagram_is_valid():
    assert validate(SpliceDiagram()) == []


def test_parallel_edges_close_a_cycle():
    d = SpliceDiagram(("u", "v"), (Edge("e1", ("u", "v"), (2, 3)), Edge("e2", ("u", "v"), (5, 7))))
    assert codes(d) == ["cycle"]


@pytest.mark.parametrize("d, code", [
    (SpliceDiagram(("v",), arrows=(Arrow("a", "w", 1),)), "unknown-vertex"),
    (SpliceDiagram(("v",), edges=(Edge("e", ("v", "v"), (2, 3)),)), "loop"),
    (SpliceDiagram(("v",), stubs=(Stub("s", "v", 0),)), "zero-weight"),
    (SpliceDiagram(("v", "w"), edges=(Edge("e", ("v", "w"), (0, 1)),)), "zero-weight"),
    (SpliceDiagram(("v", "v")), "duplicate-id"),
    (SpliceDiagram(("v",), arrows=(Arrow("v", "v", 1),)), "duplicate-id"),
])
def test_violations(d, code):
    assert code in codes(d)


def test_strict_mode_flags_common_factors():
    d = star(stubs=(2, 4), arrows=(1,))
    assert codes(d) == []
    assert codes(d, strict=True) == ["not-coprime"]


def test_negative_weights_are_allowed():
    assert validate(star(stubs=(-2, 3), arrows=(1,)), strict=True) == []


def test_components():
    assert len(components(TREFOIL)) == 1
    assert [c.vertices for c in components(two_stars())] == [("v",), ("w",)]
    assert len(components(THREE)) == 1
    parts = split(SPLICED, "e")
    joined = disjoint_union(parts.piece_a, parts.piece_b)
    assert len(components(joined)) == 2


def test_components_partition_every_element():
    d = two_stars()
    comps = components(d)
    assert sorted(a for c in comps for a in c.arrows) == d.arrow_ids()
    assert sorted(s for c in comps for s in c.stubs) == sorted(s.id for s in d.stubs)


def test_geodesics():
    assert geodesic(TREFOIL, "v", "v") == ("v",)
    assert geodesic(TREFOIL, "a", "v") == ("a", "v")
    assert geodesic(TREFOIL, "s1", "a") == ("s1", "v", "a")
    assert geodesic(SPLICED, "a", "b1") == ("a", "u", "e", "v", "b1")
    assert geodesic(THREE, "a", "c") == ("a", "u", "e1", "v", "e2", "w", "c")


def test_geodesic_errors():
    with pytest.raises(SelfPathOnLeaf):
        geodesic(TREFOIL, "a", "a")
    with pytest.raises(DifferentComponents):
        geodesic(two_stars(), "la1", "ra1")
    with pytest.raises(UnknownElement):
        geodesic(TREFOIL, "a", "nope")


def test_unknown_lookup_is_a_key_error():
    with pytest.raises(KeyError):
        TREFOIL.arrow("s1")


def test_with_multiplicities_rejects_non_arrows():
    with pytest.raises(UnknownElement):
        TREFOIL.with_multiplicities({"s1": 3})
    assert TREFOIL.with_multiplicities({"a": 4}).multiplicities == {"a": 4}


def test_edge_ends_are_normalized():
    e = Edge("e", ("w", "v"), (3, 5))
    assert e.ends == ("v", "w") and e.weights == (5, 3)
    assert e.weight_at("w") == 3 and e.other("w") == "v"


def test_side_of_cut():
    assert side_of(THREE, "u", "e1") == {"u"}
    assert side_of(THREE, "u", "e2") == {"u", "v"}
    assert side_of(THREE, "u") == {"u", "v", "w"}


def test_fresh_id_avoids_clashes():
    d = TREFOIL
    assert d.fresh_id("b") == "b"
    assert d.fresh_id("a") not in d


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(1, 5))
def test_geodesic_is_symmetric_and_simple(rng, k):
    d = random_tree(rng, k)
    items = list(d.vertices) + d.arrow_ids()
    a, b = rng.choice(items), rng.choice(items)
    if a == b and d.kind(a) != "vertex":
        return
    path = geodesic(d, a, b)
    assert path == tuple(reversed(geodesic(d, b, a)))
    assert len(set(path)) == len(path)
    assert validate(d, strict=True) == []
