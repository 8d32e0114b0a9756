"""Simplicial complexes, graded Stanley-Reisner rings, and truncated arithmetic.

A complex is stored by its facets (as bitmasks over an ordered vertex list)
plus an optional degree per vertex.  Ring elements are kept reduced: a
monomial survives only if its support is a face and its degree is at most
the truncation bound ``D``.  Coefficients live in Z/p (p = 2 by default).
"""

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations

from .errors import (
    BadDegrees,
    ContextMismatch,
    NameClash,
    NotASimplex,
    SpanChromError,
)
from .graph import graph_from_edges

DEFAULT_D = 18


def _mask(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _members(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple
    facet_masks: tuple
    degrees: tuple = None

    @classmethod
    def from_facets(cls, facets, vertices=None, degrees=None):
        """Build from facet name lists; non-maximal sets are dropped.

        ``vertices`` fixes the vertex order (default: first appearance);
        vertices listed there but in no facet become singleton facets.
        ``degrees`` may be a dict name -> degree or a sequence aligned with vertices.
        """
        facets = [list(f) for f in facets]
        if vertices is None:
            vertices = []
            for f in facets:
                for v in f:
                    if v not in vertices:
                        vertices.append(v)
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise NameClash("repeated vertex name")
        pos = {v: i for i, v in enumerate(vertices)}
        masks = set()
        for f in facets:
            try:
                masks.add(_mask(pos[str(v)] for v in f))
            except KeyError as exc:
                raise SpanChromError(f"facet uses unknown vertex {exc}") from None
        covered = 0
        for m in masks:
            covered |= m
        for i in range(len(vertices)):
            if not covered >> i & 1:
                masks.add(1 << i)
        maximal = [m for m in masks if not any(m != o and m & o == m for o in masks)]
        maximal = [m for m in maximal if m] or ([0] if not vertices and facets else [])
        maximal.sort(key=lambda m: (-m.bit_count(), _members(m)))
        if degrees is not None:
            if isinstance(degrees, dict):
                degrees = tuple(int(degrees[v]) for v in vertices)
            else:
                degrees = tuple(int(d) for d in degrees)
            if len(degrees) != len(vertices):
                raise BadDegrees("degree list does not match vertices")
            if any(d <= 0 or d % 2 for d in degrees):
                raise BadDegrees("degrees must be positive even integers")
        return cls(vertices, tuple(maximal), degrees)

    @cached_property
    def _pos(self):
        return {v: i for i, v in enumerate(self.vertices)}

    def index(self, name):
        return self._pos[name]

    def mask_of(self, names):
        return _mask(self._pos[str(v)] for v in names)

    def names(self, mask):
        return tuple(self.vertices[i] for i in _members(mask))

    @property
    def facets(self):
        return [self.names(m) for m in self.facet_masks]

    def is_face(self, mask):
        if not self.vertices:
            return mask == 0
        return any(mask & f == mask for f in self.facet_masks)

    def contains(self, names):
        try:
            return self.is_face(self.mask_of(names))
        except KeyError:
            return False

    def degree_of(self, name):
        return self.degrees[self._pos[name]]

    def faces(self):
        out = set()
        for f in self.facet_masks:
            members = _members(f)
            for k in range(len(members) + 1):
                for c in combinations(members, k):
                    out.add(_mask(c))
        return sorted(out, key=lambda m: (m.bit_count(), _members(m)))

    def induced(self, names):
        """Full subcomplex on the given vertices."""
        names = [str(v) for v in names]
        keep = self.mask_of(names)
        facets = [self.names(f & keep) for f in self.facet_masks]
        degrees = None
        if self.degrees:
            degrees = {v: self.degree_of(v) for v in names}
        return SimplicialComplex.from_facets([f for f in facets if f], vertices=names, degrees=degrees)

    def one_skeleton(self, names=None):
        """The 1-skeleton as a Graph (optionally restricted to ``names``), labelled by name."""
        names = list(self.vertices) if names is None else [str(v) for v in names]
        pos = {v: i for i, v in enumerate(names)}
        edges = [(pos[a], pos[b]) for a, b in combinations(names, 2) if self.contains([a, b])]
        return graph_from_edges(len(names), edges, names)

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(f) + "}" for f in self.facets) + "}"


def graph_complex(G, names=None, degree=6):
    """A graph as a 1-dimensional complex; vertices named y1..ym by default."""
    if names is None:
        names = list(G.labels) if G.labels else [f"y{i + 1}" for i in range(G.n_vertices)]
    facets = [[names[u], names[v]] for u, v in G.edges()]
    return SimplicialComplex.from_facets(facets, vertices=names, degrees=[degree] * len(names))


def join_with_simplex(n, L, prefix="x"):
    """The join of the simplex on x1..xn (degree 4) with L (degree 6)."""
    xs = [f"{prefix}{i + 1}" for i in range(n)]
    clash = set(xs) & set(L.vertices)
    if clash:
        raise NameClash(f"names already used in L: {sorted(clash)}")
    facets = [xs + list(f) for f in L.facets] or ([xs] if xs else [])
    degrees = {v: 4 for v in xs}
    degrees.update({v: 6 for v in L.vertices})
    return SimplicialComplex.from_facets(facets, vertices=xs + list(L.vertices), degrees=degrees)


@dataclass(frozen=True)
class PmaxPoset:
    complex: SimplicialComplex
    elements: tuple

    def leq(self, a, b):
        return a & b == a

    def pairs(self):
        """All (sigma, tau) with tau strictly inside sigma."""
        return [(s, t) for s in self.elements for t in self.elements if s != t and t & s == t]

    def named(self):
        return [self.complex.names(m) for m in self.elements]


def p_max(K):
    """Facets closed under pairwise intersection."""
    elems = set(K.facet_masks)
    frontier = set(elems)
    while frontier:
        new = set()
        for a in frontier:
            for b in elems:
                c = a & b
                if c not in elems:
                    new.add(c)
        elems |= new
        frontier = new
    ordered = sorted(elems, key=lambda m: (-m.bit_count(), _members(m)))
    return PmaxPoset(K, tuple(ordered))


def minimal_nonfaces(K):
    """Inclusion-minimal non-faces, as sorted tuples of vertex names."""
    nv = len(K.vertices)
    faces = set(K.faces())
    out = []
    level = [m for m in faces if m.bit_count() == 0]
    k = 1
    while level:
        cands = set()
        for f in level:
            for v in range(nv):
                if not f >> v & 1:
                    cands.add(f | 1 << v)
        next_level = []
        for c in cands:
            if c in faces:
                next_level.append(c)
            elif all(c & ~(1 << v) in faces for v in _members(c)):
                out.append(c)
        level = next_level
        k += 1
    out.sort(key=lambda m: (m.bit_count(), _members(m)))
    return [K.names(m) for m in out]


@dataclass(frozen=True)
class Classification:
    is_AnL: bool
    is_AnG: bool
    n: int = None
    x_names: tuple = ()
    y_names: tuple = ()
    L: SimplicialComplex = None
    G: object = None


def classify_complex(K):
    """Is SR(K) of the form A(n, L), and moreover A(n, G) for a graph G?"""
    if K.degrees is None or any(d not in (4, 6) for d in K.degrees):
        raise BadDegrees("classification needs every degree in {4, 6}")
    xs = tuple(v for v in K.vertices if K.degree_of(v) == 4)
    ys = tuple(v for v in K.vertices if K.degree_of(v) == 6)
    ymask = K.mask_of(ys)
    mnf = [K.mask_of(s) for s in minimal_nonfaces(K)]
    is_anl = all(m & ymask == m for m in mnf)
    if not is_anl:
        return Classification(False, False)
    is_ang = not any((f & ymask).bit_count() >= 3 for f in K.facet_masks)
    L = K.induced(ys)
    G = K.one_skeleton(ys) if is_ang else None
    return Classification(True, is_ang, len(xs), xs, ys, L, G)


# -- rings --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Ring:
    """SR(K, phi) tensored with Z/p and truncated above degree D."""

    complex: SimplicialComplex
    D: int = DEFAULT_D
    p: int = 2
    _face_cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.complex.degrees is None:
            raise BadDegrees("ring needs vertex degrees")

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Ring) and self.complex == other.complex
            and self.D == other.D and self.p == other.p)

    def __hash__(self):
        return hash((self.complex, self.D, self.p))

    @property
    def names(self):
        return self.complex.vertices

    @property
    def degrees(self):
        return self.complex.degrees

    @property
    def ngens(self):
        return len(self.complex.vertices)

    def index(self, name):
        return self.complex.index(name)

    def mono_degree(self, m):
        return sum(e * d for e, d in zip(m, self.complex.degrees))

    def support(self, m):
        return _mask(i for i, e in enumerate(m) if e)

    def alive(self, m):
        if self.mono_degree(m) > self.D:
            return False
        s = self.support(m)
        hit = self._face_cache.get(s)
        if hit is None:
            hit = self._face_cache[s] = self.complex.is_face(s)
        return hit

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.ngens: 1})

    def gen(self, name):
        i = name if isinstance(name, int) else self.index(name)
        m = tuple(1 if j == i else 0 for j in range(self.ngens))
        return Poly(self, {m: 1} if self.alive(m) else {})

    def monomial(self, exps):
        """exps: dict name -> exponent."""
        m = [0] * self.ngens
        for name, e in exps.items():
            m[self.index(name)] += int(e)
        m = tuple(m)
        return Poly(self, {m: 1} if self.alive(m) else {})

    def element(self, terms):
        """Reduce a dict monomial -> coefficient into the ring."""
        out = {}
        for m, c in terms.items():
            c %= self.p
            if c and self.alive(m):
                out[m] = (out.get(m, 0) + c) % self.p
        return Poly(self, {m: c for m, c in out.items() if c})

    def monomials(self, max_degree=None):
        """Surviving monomials of degree <= max_degree, in degree-lex order."""
        top = self.D if max_degree is None else min(max_degree, self.D)
        degs = self.complex.degrees
        out = []

        def rec(i, cur, deg):
            if i == self.ngens:
                m = tuple(cur)
                if self.alive(m):
                    out.append(m)
                return
            e = 0
            while deg + e * degs[i] <= top:
                cur.append(e)
                rec(i + 1, cur, deg + e * degs[i])
                cur.pop()
                if e and not self.alive(tuple(cur) + (e,) + (0,) * (self.ngens - i - 1)):
                    break
                e += 1

        rec(0, [], 0)
        out.sort(key=lambda m: (self.mono_degree(m), tuple(-e for e in m)))
        return out

    def free(self):
        """Same generators and degrees, no Stanley-Reisner relations."""
        K = self.complex
        full = SimplicialComplex.from_facets([list(K.vertices)] if K.vertices else [], vertices=K.vertices, degrees=K.degrees)
        return Ring(full, self.D, self.p)

    def on_simplex(self, names):
        names = [str(v) for v in names]
        if not self.complex.contains(names):
            raise NotASimplex(f"{names} is not a simplex")
        degs = {v: self.complex.degree_of(v) for v in names}
        return Ring(SimplicialComplex.from_facets([names] if names else [], vertices=names, degrees=degs), self.D, self.p)

    def with_bound(self, D):
        return Ring(self.complex, D, self.p)

    def mono_str(self, m):
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _check(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ring is not self.ring and other.ring != self.ring:
            raise ContextMismatch("elements of different rings")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    def __radd__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {m: (-c) % p for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        p = self.ring.p
        c %= p
        if not c:
            return Poly(self.ring, {})
        return Poly(self.ring, {m: (v * c) % p for m, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, int):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        R = self.ring
        p = R.p
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if not R.alive(m):
                    continue
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(R, out)

    def __pow__(self, k):
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.ring is other.ring or self.ring == other.ring) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def monomials(self):
        R = self.ring
        return sorted(self.terms, key=lambda m: (R.mono_degree(m), tuple(-e for e in m)))

    def degrees(self):
        return {self.ring.mono_degree(m) for m in self.terms}

    def is_homogeneous(self, d=None):
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (d is None or d in ds)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            s = self.ring.mono_str(m)
            parts.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(parts)

    __repr__ = __str__


def ring_mul(a, b):
    return a * b


def project(a, target):
    """Send a to the ring ``target`` by generator name; generators missing there map to 0."""
    src = a.ring
    pos = [target.complex._pos.get(name) for name in src.names]
    out = {}
    for m, c in a.terms.items():
        if any(e and pos[i] is None for i, e in enumerate(m)):
            continue
        t = [0] * target.ngens
        for i, e in enumerate(m):
            if e:
                t[pos[i]] = e
        out[tuple(t)] = (out.get(tuple(t), 0) + c)
    return target.element(out)


def restrict_to_simplex(a, sigma):
    """Image of a in the polynomial ring on the simplex sigma."""
    return project(a, a.ring.on_simplex(sigma))


def wipeout_check(K, U, D=DEFAULT_D):
    """Compare the intersection of the ideals (V minus sigma), sigma in U, with the
    kernel of SR(K) -> SR(union of U), monomial by monomial up to degree D.

    Monomials of SR(K) (those surviving I_K) are tested; when U covers every
    facet the intersection is additionally compared with I_K on all monomials.
    """
    R = Ring(K, D)
    masks = [K.mask_of(s) if not isinstance(s, int) else s for s in U]
    for m in masks:
        if not K.is_face(m):
            raise NotASimplex(f"{K.names(m)} is not a simplex of K")
    covered = 0
    for m in masks:
        covered |= m
    sub_names = K.names(covered)
    Kp = SimplicialComplex.from_facets([K.names(m) for m in masks], vertices=sub_names,
                                       degrees={v: K.degree_of(v) for v in sub_names})
    target = Ring(Kp, D)
    free = R.free()
    covers = all(any(f & m == f for m in masks) for f in K.facet_masks)
    checked = 0
    for mono in free.monomials():
        s = free.support(mono)
        in_intersection = all(s & m != s for m in masks)
        if R.alive(mono):
            in_kernel = project(R.element({mono: 1}), target).is_zero()
            checked += 1
            if in_intersection != in_kernel:
                return {"equal": False, "witness": R.mono_str(mono), "checked": checked}
        if covers and in_intersection != (not K.is_face(s)):
            return {"equal": False, "witness": R.mono_str(mono), "checked": checked,
                    "statement": "intersection differs from I_K"}
    return {"equal": True, "witness": None, "checked": checked, "covers_all_facets": covers}


# -- serialization ------------------------------------------------------------

def complex_to_dict(K):
    verts = [{"name": v, "degree": d} for v, d in zip(K.vertices, K.degrees or [None] * len(K.vertices))]
    return {"vertices": verts, "facets": [list(f) for f in K.facets]}


def complex_from_dict(d):
    try:
        names = [v["name"] for v in d["vertices"]]
        degrees = [v.get("degree") for v in d["vertices"]]
        facets = d["facets"]
    except (KeyError, TypeError) as exc:
        raise SpanChromError(f"complex JSON missing field: {exc}") from None
    if any(x is None for x in degrees):
        degrees = None
    return SimplicialComplex.from_facets(facets, vertices=names, degrees=degrees)


def poly_to_json(a):
    """Mod 2: a list of {generator: exponent} maps.  Other primes add a "coeff" entry."""
    out = []
    for m in a.monomials():
        entry = {name: e for name, e in zip(a.ring.names, m) if e}
        if a.ring.p != 2:
            entry = {"coeff": a.terms[m], "monomial": entry}
        out.append(entry)
    return out


def poly_from_json(ring, data):
    total = ring.zero()
    for entry in data:
        if ring.p != 2 and "monomial" in entry:
            total = total + ring.monomial(entry["monomial"]).scale(entry.get("coeff", 1))
        else:
            total = total + ring.monomial(entry)
    return total


def parse_poly(ring, text):
    """Parse text like ``"y1*x1 + 2*x3^2"`` (or ``"0"``) into ``ring``."""
    total = ring.zero()
    text = text.strip()
    if text in ("", "0"):
        return total
    for term in text.split("+"):
        coeff = 1
        exps = {}
        for factor in term.strip().split("*"):
            factor = factor.strip()
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, e = factor.partition("^")
            if name not in ring.complex._pos:
                raise SpanChromError(f"unknown generator {name!r}")
            exps[name] = exps.get(name, 0) + (int(e) if e else 1)
        total = total + ring.monomial(exps).scale(coeff)
    return total
