import json
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from spanchrom import gf, graph as gr, spancolour as sc
from spanchrom.errors import MalformedColouring, NotPrime

import oracles

F2 = gf.make_field(2)
E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def hexagon_with_chord():
    # vertex i sits at angle 60*i; chord between the 120 and 240 degree vertices
    return gr.graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)] + [(2, 4)])


def figure_colourings():
    H = hexagon_with_chord()
    two_dim1 = sc.intermediate_colouring(H, F2, 3, [E2, E1, E2, E1, E3, E1])
    all_dim2 = sc.intermediate_colouring(H, F2, 3, [E1, E3, E2, E1, E3, E2])
    return two_dim1, all_dim2


@st.composite
def graphs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return gr.graph_from_edges(n, edges)


def test_rep_graph_small_cases():
    rep = sc.build_rep_graph(F2, 2)
    G = rep.graph
    assert G.n_vertices == 6 and G.n_edges == 3
    assert all(G.degree(v) == 1 for v in range(6))
    for u, v in G.edges():
        (U, V), (U2, V2) = rep.pairs[u], rep.pairs[v]
        assert U == V2 and V == U2
    assert sc.build_rep_graph(F2, 3).graph.n_vertices == 28
    one = sc.build_rep_graph(F2, 1).graph
    assert one.n_vertices == 1 and one.n_edges == 0
    assert sc.build_rep_graph(F2, 0).graph.n_vertices == 0


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (5, 2), (2, 4)])
def test_rep_vertex_count(q, n):
    rep = sc.build_rep_graph(gf.field_of_order(q), n)
    assert rep.graph.n_vertices == sc.rep_vertex_count(q, n) == (q ** n - 1) // (q - 1) * q ** (n - 1)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2)])
def test_rep_graph_against_set_oracle(q, n):
    F = gf.field_of_order(q)
    ops = oracles.prime_field_ops(q)
    rep = sc.build_rep_graph(F, n)
    as_sets = [(frozenset(U.elements()), frozenset(V.elements())) for U, V in rep.pairs]
    assert set(as_sets) == set(oracles.full_pairs(q, n, ops))
    expected = {frozenset((a, b)) for a, b in combinations(range(len(as_sets)), 2)
                if as_sets[a][0] <= as_sets[b][1] and as_sets[b][0] <= as_sets[a][1]}
    assert {frozenset(e) for e in rep.graph.edges()} == expected


def test_validate_examples():
    C5 = gr.cycle_graph(5)
    assert sc.validate_colouring(sc.weak_colouring(C5, F2, [E1, E2, E1, E2, E3]))
    bad = sc.validate_colouring(sc.weak_colouring(C5, F2, [E1] * 5))
    assert not bad and bad.vertex == 0
    for c in figure_colourings():
        assert sc.validate_colouring(c)


def test_malformed():
    with pytest.raises(MalformedColouring):
        sc.weak_colouring(gr.cycle_graph(3), F2, [E1, E2])
    with pytest.raises(MalformedColouring):
        sc.SpanColouring(gr.empty_graph(1), F2, 3, "full", ((gf.span([E1], F2), gf.span([E1], F2)),))
    with pytest.raises(MalformedColouring):
        sc.count_span_extensions(sc.weak_colouring(gr.empty_graph(1), F2, [E1]))


def test_conversions():
    P3 = gr.path_graph(3)
    inter = sc.convert_colouring(sc.weak_colouring(P3, F2, [E1, E2, E1]), "intermediate")
    assert [U.basis for U in inter.data] == [(E1,), (E2,), (E1,)]
    full = sc.convert_colouring(inter, "full")
    assert sc.validate_colouring(full)
    again = sc.convert_colouring(sc.convert_colouring(full, "intermediate"), "full")
    assert again == full
    assert sc.convert_colouring(again, "intermediate") == inter


def test_least_hyperplane_choice():
    two_dim1, _ = figure_colourings()
    full = sc.convert_colouring(two_dim1, "full")
    assert sc.validate_colouring(full)
    hypers = gf.enumerate_subspaces(F2, 3, 2)
    for x in range(6):
        W, U = two_dim1.neighbour_span(x), two_dim1.data[x]
        ok = [V for V in hypers if gf.subspace_leq(W, V) and not gf.subspace_leq(U, V)]
        assert full.data[x][1] == ok[0]


def test_extension_counts():
    two_dim1, all_dim2 = figure_colourings()
    assert sc.count_span_extensions(all_dim2) == 1
    assert sc.count_span_extensions(two_dim1) == 4
    single = sc.intermediate_colouring(gr.empty_graph(1), F2, 2, [(1, 0)])
    assert sc.count_span_extensions(single) == 2
    single3 = sc.intermediate_colouring(gr.empty_graph(1), gf.make_field(3), 2, [(1, 0)])
    assert sc.count_span_extensions(single3) == 3


def test_span_chromatic_examples():
    n, w = sc.span_chromatic_number(gr.cycle_graph(5), F2)
    assert n == 3 and sc.validate_colouring(w)
    assert sc.span_chromatic_number(gr.complete_graph(4), F2)[0] == 4
    assert sc.span_chromatic_number(gr.empty_graph(0), F2)[0] == 0
    assert sc.span_chromatic_number(gr.empty_graph(2), F2)[0] == 1


@pytest.mark.parametrize("nv,edges,n,expected", [
    (2, [(0, 1)], 2, 6),
    (3, [(0, 1), (1, 2)], 3, 1008),
    (5, [(i, (i + 1) % 5) for i in range(5)], 3, 7560),
])
def test_hom_count_equals_full_colouring_count(nv, edges, n, expected):
    # expected values frozen from oracles.count_full
    G = gr.graph_from_edges(nv, edges)
    rep = sc.build_rep_graph(F2, n)
    assert gr.count_homomorphisms(G, rep.graph) == expected


@settings(max_examples=25, deadline=None)
@given(graphs(max_n=3))
def test_hom_bijection_random(G):
    ops = oracles.prime_field_ops(2)
    rep = sc.build_rep_graph(F2, 2)
    assert gr.count_homomorphisms(G, rep.graph) == oracles.count_full(G.n_vertices, G.edges(), 2, 2, ops)


@pytest.mark.parametrize("q,nv,edges,n,weak,inter", [
    (3, 3, [(0, 1), (1, 2)], 2, 96, 12),
    (2, 5, [(i, (i + 1) % 5) for i in range(5)], 3, 3360, 3360),
])
def test_weak_vs_intermediate_counts(q, nv, edges, n, weak, inter):
    ops = oracles.prime_field_ops(q)
    assert oracles.count_weak(nv, edges, q, n, ops) == weak
    assert oracles.count_intermediate(nv, edges, q, n, ops) == inter
    assert weak == (q - 1) ** nv * inter


def test_every_max_clique_has_basis_form():
    rep = sc.build_rep_graph(F2, 3)
    G = rep.graph
    found = 0
    for tri in combinations(range(G.n_vertices), 3):
        if all(G.has_edge(a, b) for a, b in combinations(tri, 2)):
            found += 1
            Us = [rep.pairs[t][0] for t in tri]
            for i, t in enumerate(tri):
                others = [Us[j].basis[0] for j in range(3) if j != i]
                assert rep.pairs[t][1] == gf.span(others, F2, 3)
    # one triangle per unordered basis
    assert found == 28


@pytest.mark.parametrize("q,n,bases,fiber,quotient", [(2, 2, 3, 1, 3), (2, 3, 28, 3, 28), (3, 2, 24, 2, 12)])
def test_census(q, n, bases, fiber, quotient):
    rep = sc.basis_census(gf.field_of_order(q), n)
    assert rep.basis_count == bases == rep.basis_formula
    assert rep.quotient_count == quotient
    assert set(rep.fiber_counts) == {fiber}
    assert rep.basis_match and rep.fiber_match
    # ordered bases by brute force, over n!
    ordered = oracles.ordered_basis_count(q, n, oracles.prime_field_ops(q))
    assert ordered % {2: 2, 3: 6}[n] == 0 and ordered // {2: 2, 3: 6}[n] == bases


def test_obstruction():
    v = sc.hom_obstruction(2, 3)
    assert v["obstruction"] and "obstruction holds" in v["conclusion"]
    assert not sc.hom_obstruction(4, 3)["obstruction"]
    assert sc.hom_obstruction(2, 5)["obstruction"]
    assert sc.hom_obstruction(3, 3)["q_mod_p"] == 0
    with pytest.raises(NotPrime):
        sc.hom_obstruction(2, 4)


def test_colouring_json_roundtrip():
    two_dim1, _ = figure_colourings()
    H = two_dim1.graph
    for c in (two_dim1, sc.convert_colouring(two_dim1, "weak"), sc.convert_colouring(two_dim1, "full")):
        d = sc.colouring_to_dict(c)
        assert sc.colouring_from_dict(json.loads(json.dumps(d)), H) == c


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_sandwich_and_conversions(G, rnd):
    s, witness = sc.span_chromatic_number(G, F2)
    chi = gr.chromatic_number(G)
    assert gr.clique_number(G) <= s <= chi
    assert (s == 2) == (chi == 2)
    assert sc.validate_colouring(witness)
    for target in sc.VARIANTS:
        c = sc.convert_colouring(witness, target)
        assert sc.validate_colouring(c)
        assert sc.validate_colouring(sc.convert_colouring(c, "full"))


@settings(max_examples=15, deadline=None)
@given(graphs(max_n=4))
def test_fast_gf2_oracle_matches_set_oracle(G):
    ops = oracles.prime_field_ops(2)
    nv, E = G.n_vertices, G.edges()
    slow = [oracles.least_n(f, nv, E, 2, ops)
            for f in (oracles.exists_weak, oracles.exists_intermediate, oracles.exists_full)]
    assert [oracles.gf2_least_n(v, nv, E) for v in sc.VARIANTS] == slow
