"""Finite simple graphs and an exact graph-homomorphism engine.

Adjacency is stored as one Python int bitmask per vertex.  The search engine
is plain backtracking: most-constrained vertex first (ties to the lowest
index), with forward checking that intersects each unassigned neighbour's
candidate set with the neighbourhood of the chosen image.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import GraphFormatError, IndexOutOfRange, SelfLoop


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    adj: tuple
    labels: tuple = None

    def neighbours(self, v):
        return list(_bits(self.adj[v]))

    def degree(self, v):
        return self.adj[v].bit_count()

    def has_edge(self, u, v):
        return bool(self.adj[u] >> v & 1)

    def edges(self):
        return [(u, v) for u in range(self.n_vertices) for v in _bits(self.adj[u]) if u < v]

    @property
    def n_edges(self):
        return sum(a.bit_count() for a in self.adj) // 2

    def label(self, v):
        return self.labels[v] if self.labels else str(v)

    def induced_subgraph(self, vertices):
        vertices = list(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        labels = tuple(self.label(v) for v in vertices) if self.labels else None
        return graph_from_edges(len(vertices), edges, labels)

    def adjacency_matrix(self):
        return [[int(self.has_edge(u, v)) for v in range(self.n_vertices)] for u in range(self.n_vertices)]

    def __repr__(self):
        return f"Graph(n={self.n_vertices}, m={self.n_edges})"


def graph_from_edges(n, edges, labels=None):
    adj = [0] * n
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self loop at {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise IndexOutOfRange("label count does not match vertex count")
    return Graph(n, tuple(adj), labels)


def complete_graph(n):
    return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n):
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def empty_graph(n):
    return graph_from_edges(n, [])


def disjoint_union(G, H):
    edges = G.edges() + [(u + G.n_vertices, v + G.n_vertices) for u, v in H.edges()]
    return graph_from_edges(G.n_vertices + H.n_vertices, edges)


def graph_join(G, H):
    """Disjoint union plus every edge between the two parts."""
    n = G.n_vertices
    edges = G.edges() + [(u + n, v + n) for u, v in H.edges()]
    edges += [(u, n + v) for u in range(n) for v in range(H.n_vertices)]
    return graph_from_edges(n + H.n_vertices, edges)


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    source: Graph
    target: Graph
    map: tuple

    def is_valid(self):
        return is_homomorphism(self.source, self.target, self.map)

    def compose(self, other):
        """self: G -> H, other: H -> J; returns G -> J."""
        return Homomorphism(self.source, other.target, tuple(other.map[h] for h in self.map))


def is_homomorphism(G, H, mapping):
    if len(mapping) != G.n_vertices:
        return False
    if any(not 0 <= h < H.n_vertices for h in mapping):
        return False
    return all(H.has_edge(mapping[u], mapping[v]) for u, v in G.edges())


def _pick(doms, unassigned):
    best, best_size = None, None
    for v in unassigned:
        s = doms[v].bit_count()
        if best is None or s < best_size:
            best, best_size = v, s
    return best


def _assign(G, H, doms, unassigned, u, h):
    """Forward check u -> h; returns new domains or None on a wipe-out."""
    new = list(doms)
    new[u] = 1 << h
    nb = H.adj[h]
    for w in _bits(G.adj[u]):
        if w in unassigned:
            d = new[w] & nb
            if not d:
                return None
            new[w] = d
    return new


def _first(G, H, doms, unassigned):
    if not unassigned:
        return [d.bit_length() - 1 for d in doms]
    u = _pick(doms, unassigned)
    rest = unassigned - {u}
    for h in _bits(doms[u]):
        new = _assign(G, H, doms, rest, u, h)
        if new is None:
            continue
        found = _first(G, H, new, rest)
        if found is not None:
            return found
    return None


def _count(G, H, doms, unassigned):
    if not unassigned:
        return 1
    u = _pick(doms, unassigned)
    rest = unassigned - {u}
    if not any(w in rest for w in _bits(G.adj[u])):
        # no pending constraints through u: its choices multiply out
        return doms[u].bit_count() * _count(G, H, doms, rest)
    total = 0
    for h in _bits(doms[u]):
        new = _assign(G, H, doms, rest, u, h)
        if new is not None:
            total += _count(G, H, new, rest)
    return total


def _branch(args):
    G, H, mode, u, h = args
    doms = [(1 << H.n_vertices) - 1] * G.n_vertices
    unassigned = frozenset(range(G.n_vertices)) - {u}
    new = _assign(G, H, doms, unassigned, u, h)
    if new is None:
        return None if mode == "first" else 0
    if mode == "first":
        return _first(G, H, new, unassigned)
    return _count(G, H, new, unassigned)


def find_homomorphism(G, H, mode="first", jobs=1):
    """Exhaustive search for graph maps G -> H.

    ``mode="first"`` returns a Homomorphism or None, ``mode="count"`` the exact
    number of maps.  With ``jobs > 1`` the branches on the first chosen vertex
    run in worker processes; the result does not depend on ``jobs``.
    """
    if mode not in ("first", "count"):
        raise ValueError(f"unknown mode {mode!r}")
    if G.n_vertices == 0:
        return Homomorphism(G, H, ()) if mode == "first" else 1
    if H.n_vertices == 0:
        return None if mode == "first" else 0
    doms = [(1 << H.n_vertices) - 1] * G.n_vertices
    unassigned = frozenset(range(G.n_vertices))
    if jobs > 1:
        u = _pick(doms, unassigned)
        tasks = [(G, H, mode, u, h) for h in range(H.n_vertices)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_branch, tasks))
        if mode == "count":
            return sum(results)
        found = next((r for r in results if r is not None), None)
    elif mode == "count":
        return _count(G, H, doms, unassigned)
    else:
        found = _first(G, H, doms, unassigned)
    if found is None:
        return None
    return Homomorphism(G, H, tuple(found))


def count_homomorphisms(G, H, jobs=1):
    return find_homomorphism(G, H, mode="count", jobs=jobs)


# -- colouring invariants -----------------------------------------------------

def _colour(G, k):
    """Proper k-colouring by DSATUR-ordered backtracking, colours up to symmetry."""
    n = G.n_vertices
    colour = [-1] * n
    # forbidden colour masks per vertex
    forb = [0] * n

    def rec(done, used):
        if done == n:
            return True
        # max saturation, then max degree, then lowest index
        best, key = None, None
        for v in range(n):
            if colour[v] < 0:
                kv = (forb[v].bit_count(), G.degree(v), -v)
                if key is None or kv > key:
                    best, key = v, kv
        v = best
        for c in range(min(used + 1, k)):
            if forb[v] >> c & 1:
                continue
            colour[v] = c
            touched = [w for w in _bits(G.adj[v]) if colour[w] < 0 and not forb[w] >> c & 1]
            for w in touched:
                forb[w] |= 1 << c
            if rec(done + 1, max(used, c + 1)):
                return True
            for w in touched:
                forb[w] &= ~(1 << c)
            colour[v] = -1
        return False

    return list(colour) if rec(0, 0) else None


def chromatic_colouring(G):
    """Returns (chi, colouring) with colours 0..chi-1."""
    if G.n_vertices == 0:
        return 0, []
    k = max(clique_number(G), 1)
    while True:
        c = _colour(G, k)
        if c is not None:
            return k, c
        k += 1


def chromatic_number(G):
    return chromatic_colouring(G)[0]


def max_clique(G):
    best = []

    def expand(clique, cand):
        nonlocal best
        if not cand:
            if len(clique) > len(best):
                best = list(clique)
            return
        while cand:
            if len(clique) + cand.bit_count() <= len(best):
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            clique.append(v)
            expand(clique, cand & G.adj[v])
            clique.pop()
        if len(clique) > len(best):
            best = list(clique)

    expand([], (1 << G.n_vertices) - 1)
    return sorted(best)


def clique_number(G):
    return len(max_clique(G))


def two_core(G):
    """Iteratively delete a lowest-index vertex of degree <= 1.

    Returns (core, kept, trace): the induced subgraph, the original indices of
    its vertices, and the removed vertices in removal order.
    """
    alive = (1 << G.n_vertices) - 1
    trace = []
    while True:
        v = next((v for v in _bits(alive) if (G.adj[v] & alive).bit_count() <= 1), None)
        if v is None:
            break
        trace.append(v)
        alive &= ~(1 << v)
    kept = list(_bits(alive))
    return G.induced_subgraph(kept), kept, trace


# -- text format --------------------------------------------------------------

def parse_dimacs(text):
    n = m = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            nums = [x for x in parts[1:] if x.lstrip("-").isdigit()]
            if n is not None or len(nums) != 2:
                raise GraphFormatError(f"line {lineno}: bad header {line!r}")
            n, m = int(nums[0]), int(nums[1])
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: bad edge {line!r}")
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p' header")
    if len(edges) != m:
        raise GraphFormatError(f"header promises {m} edges, found {len(edges)}")
    return graph_from_edges(n, edges)


def format_dimacs(G):
    lines = [f"p {G.n_vertices} {G.n_edges}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def read_graph(path):
    with open(path) as fh:
        return parse_dimacs(fh.read())


def write_graph(G, path):
    with open(path, "w") as fh:
        fh.write(format_dimacs(G))
