"""
Span colourings and the graphs that represent them
==================================================

A span colouring gives each vertex a line in k^n that avoids the span of its
neighbours' lines.  Maps G -> A_{k^n} are the same thing.
"""

from spanchrom import gf, graph as gr, spancolour as sc

F2 = gf.make_field(2)

# A_{(Z/2)^2} is just three disjoint edges: (U, V) is joined to (V, U)
rep = sc.build_rep_graph(F2, 2)
for u, v in rep.graph.edges():
    print(rep.label(u), "--", rep.label(v))

# the 5-cycle needs three dimensions, one more than its clique number
C5 = gr.cycle_graph(5)
n, witness = sc.span_chromatic_number(C5, F2)
print("s2chi(C5) =", n, " clique =", gr.clique_number(C5), " chi =", gr.chromatic_number(C5))
for x, (U, V) in enumerate(witness.data):
    print(f"  vertex {x}: line {U}, hyperplane {V}")

# going down to the weak variant just picks a vector on each line
weak = sc.convert_colouring(witness, "weak")
print("weak:", weak.data, bool(sc.validate_colouring(weak)))

# how many full colourings sit over an intermediate one depends on the
# dimensions of the neighbour spans
H = gr.graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)] + [(2, 4)])
e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
for lines in ([e1, e3, e2, e1, e3, e2], [e2, e1, e2, e1, e3, e1]):
    c = sc.intermediate_colouring(H, F2, 3, lines)
    dims = [c.neighbour_span(x).dim for x in range(6)]
    print("neighbour span dims", dims, "->", sc.count_span_extensions(c), "extensions")

# A_{(Z/2)^3}: 28 vertices, triangles only, yet no 3-colouring
A3 = sc.build_rep_graph(F2, 3).graph
print("A3:", A3.n_vertices, "vertices,", A3.n_edges, "edges")
print("clique", gr.clique_number(A3), " maps to K3:", gr.find_homomorphism(A3, gr.complete_graph(3)) is not None)
print("chi(A3) computed:", gr.chromatic_number(A3))

# counting bases gives a cheap obstruction to maps A_{k^n} -> K_n
print(sc.hom_obstruction(2, 3)["conclusion"])
