import random

import pytest
from hypothesis import given, settings, strategies as st

from spanchrom import graph as gr
from spanchrom.errors import GraphFormatError, IndexOutOfRange, SelfLoop

import oracles


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return gr.graph_from_edges(n, edges)


def test_builders():
    K3 = gr.graph_from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert K3 == gr.complete_graph(3)
    C5 = gr.cycle_graph(5)
    assert C5.n_edges == 5 and all(C5.degree(v) == 2 for v in range(5))
    assert gr.graph_from_edges(0, []).n_vertices == 0
    assert gr.graph_from_edges(2, [(0, 1), (1, 0)]).n_edges == 1


def test_builder_errors():
    with pytest.raises(IndexOutOfRange):
        gr.graph_from_edges(2, [(0, 2)])
    with pytest.raises(SelfLoop):
        gr.graph_from_edges(2, [(1, 1)])


def test_hom_examples():
    assert gr.find_homomorphism(gr.cycle_graph(5), gr.complete_graph(2)) is None
    assert gr.count_homomorphisms(gr.complete_graph(3), gr.complete_graph(3)) == 6
    h = gr.find_homomorphism(gr.cycle_graph(6), gr.complete_graph(2))
    assert h is not None and h.is_valid()
    assert gr.find_homomorphism(gr.empty_graph(0), gr.empty_graph(0)).map == ()
    assert gr.find_homomorphism(gr.empty_graph(1), gr.empty_graph(0)) is None


def test_chromatic_and_clique_examples():
    assert gr.chromatic_number(gr.empty_graph(0)) == 0
    assert gr.chromatic_number(gr.empty_graph(3)) == 1
    assert gr.chromatic_number(gr.cycle_graph(5)) == 3
    assert gr.clique_number(gr.cycle_graph(5)) == 2
    assert gr.clique_number(gr.complete_graph(4)) == 4


def test_two_core_examples():
    core, kept, trace = gr.two_core(gr.path_graph(5))
    assert core.n_vertices == 0 and sorted(trace) == list(range(5))
    core, kept, trace = gr.two_core(gr.cycle_graph(5))
    assert kept == [0, 1, 2, 3, 4] and trace == []
    pendant = gr.graph_from_edges(6, gr.cycle_graph(5).edges() + [(2, 5)])
    core, kept, trace = gr.two_core(pendant)
    assert kept == [0, 1, 2, 3, 4] and trace == [5]


def test_dimacs_roundtrip_and_errors(tmp_path):
    G = gr.cycle_graph(5)
    text = gr.format_dimacs(G)
    assert text.splitlines()[0] == "p 5 5"
    assert gr.parse_dimacs(text) == G
    assert gr.parse_dimacs("c comment\np edge 3 1\ne 1 3\n").edges() == [(0, 2)]
    path = tmp_path / "g.txt"
    gr.write_graph(G, path)
    assert gr.read_graph(path) == G
    for bad in ["e 1 2\n", "p 3 2\ne 1 2\n", "p 3\n", "p 2 1\nx 1 2\n", "p 2 1\ne 1\n"]:
        with pytest.raises(GraphFormatError):
            gr.parse_dimacs(bad)


def test_parallel_search_matches_serial():
    G = gr.cycle_graph(7)
    H = gr.complete_graph(3)
    assert gr.count_homomorphisms(G, H, jobs=2) == gr.count_homomorphisms(G, H)
    assert gr.find_homomorphism(G, H, jobs=2).map == gr.find_homomorphism(G, H).map


@settings(max_examples=120, deadline=None)
@given(graphs())
def test_chromatic_matches_brute_force(G):
    chi = gr.chromatic_number(G)
    assert chi == oracles.chromatic(G.n_vertices, G.edges())
    assert gr.clique_number(G) == oracles.clique(G.n_vertices, G.edges())
    assert gr.clique_number(G) <= chi
    chi2, colours = gr.chromatic_colouring(G)
    assert all(colours[u] != colours[v] for u, v in G.edges())
    if G.n_vertices:
        assert gr.find_homomorphism(G, gr.complete_graph(chi)) is not None
        if chi > 0:
            assert gr.find_homomorphism(G, gr.complete_graph(chi - 1)) is None


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=5), graphs(max_n=4))
def test_hom_count_matches_brute_force(G, H):
    assert gr.count_homomorphisms(G, H) == oracles.count_homs(G.n_vertices, G.edges(), H.n_vertices, H.edges())
    h = gr.find_homomorphism(G, H)
    assert (h is not None) == (gr.count_homomorphisms(G, H) > 0)
    if h is not None:
        assert h.is_valid()


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=5), graphs(max_n=4), graphs(max_n=4))
def test_composition(G, H, J):
    a, b = gr.find_homomorphism(G, H), gr.find_homomorphism(H, J)
    if a is not None and b is not None:
        assert a.compose(b).is_valid()


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=9))
def test_two_core_properties(G):
    core, kept, trace = gr.two_core(G)
    assert sorted(kept + trace) == list(range(G.n_vertices))
    assert all(core.degree(v) >= 2 for v in range(core.n_vertices))
    again, kept2, trace2 = gr.two_core(core)
    assert trace2 == [] and again == core


def test_two_core_contains_min_degree_two_subgraphs():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(3, 8)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35]
        G = gr.graph_from_edges(n, edges)
        _, kept, _ = gr.two_core(G)
        # any cycle's vertex set induces a subgraph of min degree >= 2, so cycle vertices survive
        for u, v in edges:
            rest = gr.graph_from_edges(n, [e for e in edges if e != (u, v)])
            # u and v joined by another path: then both lie on a cycle
            seen, stack = {u}, [u]
            while stack:
                w = stack.pop()
                for x in rest.neighbours(w):
                    if x not in seen:
                        seen.add(x)
                        stack.append(x)
            if v in seen:
                assert u in kept and v in kept
