"""
Steenrod squares on Stanley-Reisner rings
=========================================

A span colouring of G in dimension n builds an unstable action on A(n, G),
and an action on A(n, G) gives back a span colouring.
"""

from spanchrom import gf, graph as gr, spancolour as sc, sr, steenrod as stn

F2 = gf.make_field(2)
C5 = gr.cycle_graph(5)

# the ring: three x's of degree 4 joined to the 5-cycle on y's of degree 6
K = sr.join_with_simplex(3, sr.graph_complex(C5))
print(K)
print("minimal nonfaces:", sr.minimal_nonfaces(K))
print("P_max has", len(sr.p_max(K).elements), "elements")

c = sc.weak_colouring(C5, F2, [(1, 0, 0), (0, 1, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
A = stn.action_from_colouring(sr.graph_complex(C5), 3, c, D=18)
for name in A.ring.names:
    print(f"Sq2({name}) = {A.sq2(name)}    Sq4({name}) = {A.sq4(name)}")

cert = stn.verify_action(A)
for check, r in cert.as_dict()["checks"].items():
    print(f"  {check}: {'pass' if r['pass'] else 'FAIL'}")

# and back again
back, report = stn.extract_colouring(A, C5)
print("extracted J:", report["J"])
print("valid:", bool(sc.validate_colouring(back)))

# Sq on a product uses the Cartan formula
y1, y2 = A.ring.gen("y1"), A.ring.gen("y2")
print("Sq4(y1*y2) =", stn.sq(A, y1 * y2, 4))

# in two dimensions nothing works: every forced-form assignment fails
r = stn.forced_form_search(C5, 2)
print(f"n=2: {r['valid']} valid of {r['assignments']} assignments")

# images that are fine on a polynomial ring can break on a quotient
free = sr.SimplicialComplex.from_facets([["x1", "x2", "x3", "y1", "y2", "y3"]],
                                         degrees=[4, 4, 4, 6, 6, 6])
R = sr.Ring(free)
P = lambda t: sr.parse_poly(R, t)
B = stn.make_action(R, {"x1": P("y1"), "x2": P("y2"), "x3": P("y1+y3")},
                    {"y1": P("y1*x1"), "y2": P("y2*x2"), "y3": P("y1*x1+y1*x3+y3*x3")})
print("free ring:", stn.verify_action(B).passed)
path = sr.SimplicialComplex.from_facets([["y1", "y2"], ["y1", "y3"]], degrees=[6, 6, 6])
cert = stn.verify_action(B.lift(sr.Ring(sr.join_with_simplex(3, path))))
print("on A(3, path):", cert.witness("cartan_welldefined_on_ideal"))
