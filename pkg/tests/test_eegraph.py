from __future__ import annotations

import re

import pytest
from helpers import betti_by_rank, cycle_graph, petersen_hardcoded, petersen_subsets

from ordcover import gallery
from ordcover.eegraph import (
    EEGraph,
    GraphAction,
    GraphError,
    GraphMorphism,
    betti1,
    edges,
    is_isomorphic,
    morphism_findings,
    quotient,
    to_dot,
    trivial_action,
    validate,
)
from ordcover.perms import Permutation, closure, cyclic, symmetric


def single_vertex() -> EEGraph:
    return EEGraph(("v0",), {"v0": ("v0/0",)}, {"v0": "v0/0"}, {"v0/0": "v0/0"})


def loop_vertex() -> EEGraph:
    return EEGraph.from_edges(["v0"], [("x", "v0", "y", "v0")])


def triangle_graph() -> EEGraph:
    return gallery.triangle("C3").graph


class TestValidate:
    def test_edgeless_vertex(self):
        assert validate(single_vertex()) == []

    def test_triangle(self):
        g = triangle_graph()
        assert validate(g) == []
        assert g.involution["C01"] == "C10" and g.empty["C1"] == "C11"

    def test_stray_fixed_point(self):
        g = loop_vertex()
        bad = EEGraph(g.vertices, g.ends, g.empty, {**g.involution, "x": "x", "y": "y"})
        findings = validate(bad)
        assert any("stray fixed point" in f for f in findings)

    def test_not_self_inverse(self):
        g = EEGraph.from_edges(["a", "b"], [("x", "a", "y", "b"), ("z", "a", "w", "b")])
        bad = EEGraph(g.vertices, g.ends, g.empty, {**g.involution, "x": "z"})
        assert any("not self-inverse" in f for f in validate(bad))

    def test_missing_empty_end(self):
        g = single_vertex()
        bad = EEGraph(g.vertices, {"v0": ()}, g.empty, g.involution)
        assert validate(bad)

    def test_shared_end(self):
        g = EEGraph(
            ("a", "b"),
            {"a": ("a0", "x"), "b": ("b0", "x")},
            {"a": "a0", "b": "b0"},
            {"a0": "a0", "b0": "b0", "x": "x"},
        )
        assert any("listed under both" in f for f in validate(g))


class TestEdgesAndBetti:
    def test_edges(self):
        assert edges(single_vertex()) == []
        assert len(edges(triangle_graph())) == 3
        assert edges(loop_vertex()) == [("x", "y")]

    def test_betti(self):
        assert betti1(single_vertex()) == 0
        assert betti1(triangle_graph()) == 1
        assert betti1(petersen_subsets()) == 6
        assert betti1(loop_vertex()) == 1

    def test_disconnected(self):
        g = EEGraph.from_edges(["a", "b", "c"], [("x", "a", "y", "b")])
        assert betti1(g) == 0 == betti_by_rank(g)

    @pytest.mark.parametrize("entry", gallery.gallery_entries(), ids=lambda e: e.build.label)
    def test_betti_matches_rank_oracle(self, entry):
        g = entry.build.graph
        assert betti1(g) == betti_by_rank(g)


class TestIsomorphism:
    def test_self(self):
        ok, w = is_isomorphic(triangle_graph(), triangle_graph())
        assert ok and morphism_findings(w, triangle_graph(), triangle_graph()) == []

    def test_sizes_differ(self):
        assert is_isomorphic(cycle_graph(3), cycle_graph(4)) == (False, None)

    def test_petersen_presentations(self):
        g1, g2 = petersen_subsets(), petersen_hardcoded()
        ok, w = is_isomorphic(g1, g2)
        assert ok
        assert morphism_findings(w, g1, g2) == []
        assert len(set(w.vertex_map.values())) == 10

    def test_petersen_is_not_prism(self):
        prism = EEGraph.from_edges(
            [f"p{i}" for i in range(10)],
            [(f"e{k}a", f"p{u}", f"e{k}b", f"p{w}") for k, (u, w) in enumerate(
                [(i, (i + 1) % 5) for i in range(5)]
                + [(5 + i, 5 + (i + 1) % 5) for i in range(5)]
                + [(i, 5 + i) for i in range(5)]
            )],
        )
        assert not is_isomorphic(petersen_subsets(), prism)[0]

    def test_multigraph_and_loops(self):
        two = EEGraph.from_edges(["a", "b"], [("1", "a", "2", "b"), ("3", "a", "4", "b")])
        loops = EEGraph.from_edges(["a", "b"], [("1", "a", "2", "a"), ("3", "b", "4", "b")])
        assert not is_isomorphic(two, loops)[0]
        ok, w = is_isomorphic(two, two)
        assert ok and morphism_findings(w, two, two) == []
        ok, w = is_isomorphic(loops, loops)
        assert ok and morphism_findings(w, loops, loops) == []

    def test_labels_respected(self):
        g = EEGraph.from_edges(["a", "b"], [("1", "a", "2", "b")])
        assert is_isomorphic(g, g, {"a": 1, "b": 0}, {"a": 0, "b": 1})[0]
        assert not is_isomorphic(g, g, {"a": 1, "b": 1}, {"a": 0, "b": 1})[0]


class TestQuotient:
    def test_triangle_c3_is_loop(self):
        a = gallery.triangle("C3")
        q, proj = quotient(a.graph, a.action)
        assert is_isomorphic(q, loop_vertex())[0]
        assert morphism_findings(proj, a.graph, q) == []

    def test_triangle_s3_is_point(self):
        a = gallery.triangle("S3")
        q, _ = quotient(a.graph, a.action)
        assert is_isomorphic(q, single_vertex())[0]

    def test_naming(self):
        a = gallery.triangle("C3")
        q, _ = quotient(a.graph, a.action)
        assert q.vertices == ("orbit:C0",)
        assert q.empty["orbit:C0"] == "orbit:C00"
        assert all(re.fullmatch(r"orbit:C\d\d", e) for e in q.all_ends())

    @pytest.mark.parametrize("entry", gallery.gallery_entries(), ids=lambda e: e.build.label)
    def test_trivial_group_is_identity(self, entry):
        g = entry.build.graph
        q, proj = quotient(g, trivial_action(g, cyclic(1)))
        assert is_isomorphic(g, q)[0]
        assert morphism_findings(proj, g, q) == []

    @pytest.mark.parametrize("entry", gallery.gallery_entries(), ids=lambda e: e.build.label)
    def test_quotient_is_valid_and_projection_commutes(self, entry):
        a = entry.build
        q, proj = quotient(a.graph, a.action)
        assert validate(q) == []
        for e in a.graph.all_ends():
            assert proj.end_map[a.graph.involution[e]] == q.involution[proj.end_map[e]]
        assert morphism_findings(proj, a.graph, q) == []

    @pytest.mark.parametrize("entry", gallery.gallery_entries(), ids=lambda e: e.build.label)
    def test_orbit_sizes_divide_group_order(self, entry):
        a = entry.build
        assert all(a.group.order % len(orb) == 0 for orb in a.action.vertex_orbits())
        assert all(a.group.order % len(orb) == 0 for orb in a.action.end_orbits())

    def test_rejects_invalid_action(self):
        g = triangle_graph()
        s = Permutation.from_cycles("(0 1)", 3)
        bogus = GraphMorphism({"C0": "C1", "C1": "C0", "C2": "C2"}, {e: e for e in g.all_ends()})
        with pytest.raises(GraphError):
            quotient(g, GraphAction(g, closure([s]), {Permutation.identity(3): GraphMorphism.identity(g), s: bogus}))


class TestGraphAction:
    def test_from_generators_rejects_non_homomorphism(self):
        g = triangle_graph()
        s3 = symmetric(3)
        # send every generator to the rotation: (0 1) would then have order 3
        rot = gallery.triangle("C3").action(Permutation.from_cycles("(0 1 2)", 3))
        with pytest.raises(GraphError):
            GraphAction.from_generators(g, s3, {s: rot for s in s3.generators})

    def test_findings_clean_for_gallery(self):
        for entry in gallery.gallery_entries():
            assert entry.build.action.findings() == []


class TestDot:
    def test_edgeless(self):
        assert re.sub(r"\s+", " ", to_dot(single_vertex())).strip() == "graph { v0; }"

    def test_triangle(self):
        text = to_dot(triangle_graph())
        assert text.count("--") == 3
        assert all(f"C{i};" in text for i in range(3))

    def test_loop(self):
        assert "v0 -- v0;" in to_dot(loop_vertex())

    def test_quoting(self):
        text = to_dot(gallery.triangle("C3").graph, "C")
        assert text.startswith("graph C {")
        a4 = gallery.gallery_entries()[6].build
        assert '"(0 1)(2 3)"' in to_dot(a4.graph)
