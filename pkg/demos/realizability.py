"""
Two x's, odd primes, and brackets
=================================
"""

from spanchrom import gf, graph as gr, spancolour as sc, sr, steenrod as stn

SC = sr.SimplicialComplex

# with two degree-4 generators the question has a finite answer
examples = {
    "A(2, C4)": sr.join_with_simplex(2, sr.graph_complex(gr.cycle_graph(4))),
    "A(2, C5)": sr.join_with_simplex(2, sr.graph_complex(gr.cycle_graph(5))),
    "x-edge, lone y": SC.from_facets([["x1", "x2"], ["y1"]], degrees={"x1": 4, "x2": 4, "y1": 6}),
}
for name, K in examples.items():
    v = stn.classify_two_x(K)
    print(f"{name:16s}", "realizable" if v["realizable"] else f"fails condition {v['failed_condition']}")

# a proper colouring splits the join into blocks of one x and some y's
C4 = sr.graph_complex(gr.cycle_graph(4))
K, blocks = stn.decomposition_from_colouring(2, C4, [0, 1, 0, 1])
print(blocks, stn.decomposition_check(K, blocks)["valid"])

# the reduced power P^1 at p = 5, on one x and one y
F5 = gf.make_field(5)
point = SC.from_facets([["y1"]], degrees=[6])
A, cert = stn.modp_p1_action(5, point, 1, sc.weak_colouring(gr.empty_graph(1), F5, [(1,)]))
print("P1(x1) =", A.image("x1"), "  P1(y1) =", A.image("y1"), "  checks:", cert.passed)
for p in (5, 11, 13):
    print(p, stn.p1_su3_images(p))

# what can be said about chi_Top is a bracket
for name, G in [("C5", gr.cycle_graph(5)), ("K4", gr.complete_graph(4)),
                ("A3", sc.build_rep_graph(gf.make_field(2), 3).graph)]:
    b = stn.chi_top_bracket(G)
    print(f"{b['lower']} <= chi_Top({name}) <= {b['upper']}")
