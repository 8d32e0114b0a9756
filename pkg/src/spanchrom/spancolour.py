"""Span colourings, the representing graph A_{k^n}, and counting obstructions.

Three flavours of colouring are supported, all over a finite field k:

* ``weak``: a vector per vertex, not in the span of its neighbours' vectors;
* ``intermediate``: a line per vertex, not inside the span of its neighbours' lines;
* ``full``: a (line U, hyperplane V) pair per vertex with U not in V, and for
  every edge each line lies in the other end's hyperplane.

Full n-colourings of G are exactly graph maps G -> A_{k^n}.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import factorial

from . import gf
from .errors import MalformedColouring, NoExtension, NotPrime, SpanChromError
from .graph import (
    Homomorphism,
    chromatic_colouring,
    clique_number,
    find_homomorphism,
    graph_from_edges,
)

VARIANTS = ("weak", "intermediate", "full")


@dataclass(frozen=True)
class SpanColouring:
    graph: object
    field: gf.Field
    n: int
    variant: str
    data: tuple

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise MalformedColouring(f"unknown variant {self.variant!r}")
        if len(self.data) != self.graph.n_vertices:
            raise MalformedColouring(
                f"{len(self.data)} assignments for {self.graph.n_vertices} vertices")
        for x, d in enumerate(self.data):
            if self.variant == "weak":
                if len(d) != self.n or any(not 0 <= a < self.field.q for a in d):
                    raise MalformedColouring(f"vertex {x}: bad vector {d}")
            elif self.variant == "intermediate":
                self._check_sub(x, d, 1)
            else:
                if len(d) != 2:
                    raise MalformedColouring(f"vertex {x}: expected a (line, hyperplane) pair")
                self._check_sub(x, d[0], 1)
                self._check_sub(x, d[1], self.n - 1)

    def _check_sub(self, x, S, dim):
        if not isinstance(S, gf.Subspace) or S.field != self.field or S.ambient_dim != self.n:
            raise MalformedColouring(f"vertex {x}: not a subspace of {self.field}^{self.n}")
        if S.dim != dim:
            raise MalformedColouring(f"vertex {x}: expected dimension {dim}, got {S.dim}")

    def line(self, x):
        d = self.data[x]
        if self.variant == "weak":
            return gf.span([d], self.field, self.n)
        if self.variant == "intermediate":
            return d
        return d[0]

    def neighbour_span(self, x):
        F, n = self.field, self.n
        if self.variant == "weak":
            vecs = [self.data[y] for y in self.graph.neighbours(x)]
        else:
            vecs = [self.line(y).basis[0] for y in self.graph.neighbours(x)]
        return gf.span(vecs, F, n)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    vertex: int = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def weak_colouring(graph, field, vectors):
    n = len(vectors[0]) if vectors else 0
    return SpanColouring(graph, field, n, "weak", tuple(tuple(v) for v in vectors))


def intermediate_colouring(graph, field, n, vectors):
    """Build an intermediate colouring from one spanning vector per vertex."""
    return SpanColouring(graph, field, n, "intermediate",
                         tuple(gf.span([v], field, n) for v in vectors))


def validate_colouring(c):
    """Check the defining condition of the colouring's variant, vertex by vertex."""
    G = c.graph
    if c.variant == "weak":
        for x in range(G.n_vertices):
            if c.neighbour_span(x).contains(c.data[x]):
                return Verdict(False, x, "f(x) lies in the span of its neighbours")
        return Verdict(True)
    if c.variant == "intermediate":
        for x in range(G.n_vertices):
            if gf.subspace_leq(c.data[x], c.neighbour_span(x)):
                return Verdict(False, x, "f(x) is contained in the span of its neighbours")
        return Verdict(True)
    for x in range(G.n_vertices):
        U, V = c.data[x]
        if gf.subspace_leq(U, V):
            return Verdict(False, x, "U is contained in V")
        for y in G.neighbours(x):
            U2, V2 = c.data[y]
            if not gf.subspace_leq(U, V2) or not gf.subspace_leq(U2, V):
                return Verdict(False, x, f"edge to {y}: lines not inside the opposite hyperplanes")
    return Verdict(True)


def _least_hyperplane(F, n, contains, avoids):
    for V in gf.enumerate_subspaces(F, n, n - 1):
        if gf.subspace_leq(contains, V) and not gf.subspace_leq(avoids, V):
            return V
    return None


def convert_colouring(c, target):
    if target not in VARIANTS:
        raise MalformedColouring(f"unknown variant {target!r}")
    if target == c.variant:
        return c
    F, n, G = c.field, c.n, c.graph
    if c.variant == "full" and target != "full":
        inter = SpanColouring(G, F, n, "intermediate", tuple(U for U, _ in c.data))
        return convert_colouring(inter, target)
    if c.variant == "weak":
        inter = SpanColouring(G, F, n, "intermediate",
                              tuple(gf.span([v], F, n) for v in c.data))
        return convert_colouring(inter, target)
    # c is intermediate here
    if target == "weak":
        return SpanColouring(G, F, n, "weak", tuple(U.basis[0] for U in c.data))
    pairs = []
    for x in range(G.n_vertices):
        V = _least_hyperplane(F, n, c.neighbour_span(x), c.data[x])
        if V is None:
            raise NoExtension(f"vertex {x}: no hyperplane contains the neighbour span and avoids f(x)")
        pairs.append((c.data[x], V))
    return SpanColouring(G, F, n, "full", tuple(pairs))


def count_span_extensions(c):
    """Number of full colourings whose line component is the intermediate colouring c."""
    if c.variant != "intermediate":
        raise MalformedColouring("count_span_extensions needs an intermediate colouring")
    F, n = c.field, c.n
    hyper = gf.enumerate_subspaces(F, n, n - 1) if n >= 1 else []
    total = 1
    for x in range(c.graph.n_vertices):
        W = c.neighbour_span(x)
        total *= sum(1 for V in hyper
                     if gf.subspace_leq(W, V) and not gf.subspace_leq(c.data[x], V))
        if total == 0:
            break
    return total


# -- the representing graph ---------------------------------------------------

@dataclass(frozen=True)
class RepGraph:
    graph: object
    pairs: tuple
    field: gf.Field
    n: int

    def index(self, pair):
        return self._index[pair]

    @cached_property
    def _index(self):
        return {p: i for i, p in enumerate(self.pairs)}

    def label(self, i):
        U, V = self.pairs[i]
        return f"({U},{V})"


@lru_cache(maxsize=None)
def _rep_graph(F, n, cap):
    if n == 0:
        return RepGraph(graph_from_edges(0, []), (), F, 0)
    lines = gf.enumerate_subspaces(F, n, 1, cap)
    hypers = gf.enumerate_subspaces(F, n, n - 1, cap)
    inside = {(i, j): gf.subspace_leq(U, V) for i, U in enumerate(lines) for j, V in enumerate(hypers)}
    verts = [(i, j) for i in range(len(lines)) for j in range(len(hypers)) if not inside[i, j]]
    verts.sort(key=lambda ij: (lines[ij[0]].key(), hypers[ij[1]].key()))
    edges = []
    for a in range(len(verts)):
        i, j = verts[a]
        for b in range(a + 1, len(verts)):
            k, l = verts[b]
            if inside[i, l] and inside[k, j]:
                edges.append((a, b))
    pairs = tuple((lines[i], hypers[j]) for i, j in verts)
    labels = [f"({lines[i]},{hypers[j]})" for i, j in verts]
    return RepGraph(graph_from_edges(len(verts), edges, labels), pairs, F, n)


def build_rep_graph(F, n, cap=gf.DEFAULT_CAP):
    """The graph A_{k^n}: vertices (line, hyperplane) with the line outside the hyperplane."""
    if n < 0:
        raise SpanChromError("n must be non-negative")
    if n > 0 and F.q ** n > cap:
        raise gf.CapExceeded(f"{F}^{n} exceeds the enumeration cap {cap}")
    return _rep_graph(F, n, cap)


def rep_vertex_count(q, n):
    if n == 0:
        return 0
    return (q ** n - 1) // (q - 1) * q ** (n - 1)


def colouring_from_hom(hom, rep):
    return SpanColouring(hom.source, rep.field, rep.n, "full",
                         tuple(rep.pairs[h] for h in hom.map))


def hom_from_colouring(c, rep):
    full = convert_colouring(c, "full")
    idx = rep._index
    return Homomorphism(c.graph, rep.graph, tuple(idx[p] for p in full.data))


def colouring_from_proper(G, F, n, colours):
    """A proper colouring with colours 0..n-1 read as the lines <e_colour>."""
    inter = intermediate_colouring(G, F, n, [gf.unit_vector(n, c) for c in colours])
    return convert_colouring(inter, "full")


def span_chromatic_number(G, F, cap=gf.DEFAULT_CAP, jobs=1):
    """Least n with an n-span colouring of G over F, plus a full witness colouring.

    The search runs upward from the clique number; the chromatic number is an
    upper bound, realised by colouring with basis lines.
    """
    if G.n_vertices == 0:
        return 0, SpanColouring(G, F, 0, "full", ())
    lower = clique_number(G)
    upper, colours = chromatic_colouring(G)
    for n in range(lower, upper):
        rep = build_rep_graph(F, n, cap)
        hom = find_homomorphism(G, rep.graph, jobs=jobs)
        if hom is not None:
            return n, colouring_from_hom(hom, rep)
    return upper, colouring_from_proper(G, F, upper, colours)


# -- counting -----------------------------------------------------------------

@dataclass(frozen=True)
class CensusReport:
    q: int
    n: int
    basis_count: int
    basis_formula: Fraction
    quotient_count: int
    fiber_counts: tuple
    fiber_formula: Fraction
    vertex_count: int

    @property
    def basis_match(self):
        return self.basis_count == self.basis_formula

    @property
    def fiber_match(self):
        return all(c == self.fiber_formula for c in self.fiber_counts)

    def as_dict(self):
        return {
            "q": self.q,
            "n": self.n,
            "basis_count": self.basis_count,
            "basis_formula": str(self.basis_formula),
            "basis_match": self.basis_match,
            "quotient_count": self.quotient_count,
            "vertex_count": self.vertex_count,
            "fiber_counts": sorted(set(self.fiber_counts)),
            "fiber_formula": str(self.fiber_formula),
            "fiber_match": self.fiber_match,
        }


def basis_count_formula(q, n):
    prod = 1
    for i in range(n):
        prod *= q ** n - q ** i
    return Fraction(prod, factorial(n))


def fiber_formula(q, n):
    prod = 1
    for i in range(n - 1):
        prod *= q ** (n - 1) - q ** i
    return Fraction(prod, factorial(n - 1))


def basis_census(F, n, cap=gf.DEFAULT_CAP):
    """Enumerate unordered bases, quotient by scalars, and count fibres over A_{k^n}."""
    if n < 1:
        raise SpanChromError("census needs n >= 1")
    rep = build_rep_graph(F, n, cap)
    idx = rep._index
    vecs = gf.nonzero_vectors(F, n)
    bases = [B for B in combinations(vecs, n) if len(gf.rref(F, B)) == n]
    fibers = [0] * len(rep.pairs)
    n_reps = 0
    for B in bases:
        orbit = [tuple(sorted(gf.vec_scale(F, a, v) for v in B)) for a in range(1, F.q)]
        if min(orbit) != B:
            continue
        n_reps += 1
        for j in range(n):
            U = gf.span([B[j]], F, n)
            V = gf.span(B[:j] + B[j + 1:], F, n)
            fibers[idx[(U, V)]] += 1
    return CensusReport(F.q, n, len(bases), basis_count_formula(F.q, n), n_reps,
                        tuple(fibers), fiber_formula(F.q, n), len(rep.pairs))


def hom_obstruction(q, p):
    """Does counting rule out maps A_{k^p} -> K_p for a field of order q?"""
    if not gf.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    divisible = ((q ** p - 1) * q ** (p - 1)) % p == 0
    residue = q % p
    applies = residue not in (0, 1)
    if applies:
        conclusion = f"no map A_(k^{p}) -> K_{p}; chi(A_(k^{p})) > {p}: obstruction holds"
    else:
        conclusion = f"q = {residue} mod {p}: obstruction silent"
    return {
        "q": q,
        "p": p,
        "divisibility_holds": divisible,
        "q_mod_p": residue,
        "obstruction": applies,
        "conclusion": conclusion,
    }


# -- serialization ------------------------------------------------------------

def _matrix(S):
    return [list(row) for row in S.basis]


def colouring_to_dict(c):
    if c.variant == "weak":
        assignments = [list(v) for v in c.data]
    elif c.variant == "intermediate":
        assignments = [_matrix(U) for U in c.data]
    else:
        assignments = [[_matrix(U), _matrix(V)] for U, V in c.data]
    return {
        "variant": c.variant,
        "field": {"p": c.field.p, "e": c.field.e},
        "n": c.n,
        "assignments": assignments,
    }


def colouring_from_dict(d, graph):
    try:
        F = gf.make_field(d["field"]["p"], d["field"].get("e", 1))
        n = int(d["n"])
        variant = d["variant"]
        raw = d["assignments"]
    except (KeyError, TypeError) as exc:
        raise MalformedColouring(f"colouring JSON missing field: {exc}") from None
    if variant == "weak":
        data = tuple(gf.make_vector(F, v) for v in raw)
    elif variant == "intermediate":
        data = tuple(gf.span(m, F, n) for m in raw)
    elif variant == "full":
        data = tuple((gf.span(u, F, n), gf.span(v, F, n)) for u, v in raw)
    else:
        raise MalformedColouring(f"unknown variant {variant!r}")
    return SpanColouring(graph, F, n, variant, data)
