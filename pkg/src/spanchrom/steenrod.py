"""Steenrod squares on graded Stanley-Reisner rings.

An action is given by generator images only; everything else follows from
the Cartan formula and the unstable law.  Verification runs in all degrees
up to the ring's truncation bound ``D`` and returns a certificate instead of
raising.  The module also covers the construction from a span colouring,
the extraction of a colouring back out of an action, a 𝒫¹ construction at
primes p = 5 mod 6, and a few realizability tests for small cases.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import factorial

from . import gf
from .errors import (
    BadPrime,
    ContextMismatch,
    DimensionMismatch,
    ExtractionInvalid,
    InvalidColouring,
    NotAPartition,
    NotAnG,
    NotPrime,
    Sq4NotInPrincipalIdeal,
    WrongShape,
)
from .graph import chromatic_number, two_core
from .spancolour import (
    SpanColouring,
    convert_colouring,
    span_chromatic_number,
    validate_colouring,
    weak_colouring,
)
from .sr import (
    DEFAULT_D,
    Ring,
    SimplicialComplex,
    classify_complex,
    complex_from_dict,
    complex_to_dict,
    graph_complex,
    join_with_simplex,
    minimal_nonfaces,
    p_max,
    poly_from_json,
    poly_to_json,
    project,
)


def binom_mod2(n, k):
    """binom(n, k) mod 2 by Lucas: 1 iff the bits of k are a subset of those of n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if k & ~n == 0 else 0


def sugawara_toda(n_x, m_y):
    """Z/2[x_1..x_n, y_1..y_m] (degrees 4, 6) carries an unstable action iff n >= m."""
    return n_x >= m_y


def in_principal_ideal(a, name):
    """Does every monomial of a involve the generator ``name``?"""
    i = a.ring.index(name)
    return all(m[i] > 0 for m in a.terms)


# -- actions ------------------------------------------------------------------

@dataclass(eq=False)
class SteenrodAction:
    """Generator images ``images[(name, k)]`` for 0 < k < degree, k even."""

    ring: Ring
    images: dict
    _memo: dict = dc_field(default_factory=dict, repr=False)

    def image(self, name, k):
        R = self.ring
        d = R.complex.degree_of(name)
        if k == 0:
            return R.gen(name)
        if k % 2 or k > d:
            return R.zero()
        if k == d:
            return R.gen(name) * R.gen(name)
        return self.images.get((name, k), R.zero())

    def sq2(self, name):
        return self.image(name, 2)

    def sq4(self, name):
        return self.image(name, 4)

    def lift(self, ring):
        """The same generator images, read in another ring with matching names."""
        return SteenrodAction(ring, {key: project(v, ring) for key, v in self.images.items()
                                     if key[0] in ring.complex._pos})


def make_action(ring, sq2=None, sq4=None):
    """Build from dicts name -> Poly (Sq^2 for all generators, Sq^4 for degree-6 ones)."""
    images = {}
    for k, table in ((2, sq2 or {}), (4, sq4 or {})):
        for name, v in table.items():
            if v.ring != ring:
                raise ContextMismatch(f"image of {name} lives in another ring")
            images[(name, k)] = v
    return SteenrodAction(ring, images)


def _sq_mono(action, m, k):
    R = action.ring
    if k == 0:
        return R.element({m: 1})
    if k % 2 or k > R.mono_degree(m):
        return R.zero()
    key = (m, k)
    hit = action._memo.get(key)
    if hit is not None:
        return hit
    g = next(i for i, e in enumerate(m) if e)
    name = R.names[g]
    if sum(m) == 1:
        out = action.image(name, k)
    else:
        rest = list(m)
        rest[g] -= 1
        rest = tuple(rest)
        out = R.zero()
        for i in range(0, min(k, R.degrees[g]) + 1, 2):
            left = action.image(name, i)
            if left:
                out = out + left * _sq_mono(action, rest, k - i)
    action._memo[key] = out
    return out


def sq(action, a, k):
    """Sq^k(a) via the Cartan formula."""
    if a.ring != action.ring:
        raise ContextMismatch("element and action use different rings")
    out = action.ring.zero()
    for m in a.terms:
        out = out + _sq_mono(action, m, k)
    return out


# -- standard actions ---------------------------------------------------------

def su3_generator_action(n=1, m=None, D=DEFAULT_D):
    """Sq^2 x_i = y_i (i <= m), Sq^2 x_i = 0 (i > m), Sq^2 y_i = 0, Sq^4 y_i = y_i x_i."""
    m = n if m is None else m
    if m > n:
        raise DimensionMismatch(f"need m <= n, got m={m}, n={n}")
    xs = [f"x{i + 1}" for i in range(n)]
    ys = [f"y{i + 1}" for i in range(m)]
    degrees = [4] * n + [6] * m
    K = SimplicialComplex.from_facets([xs + ys] if n + m else [], vertices=xs + ys, degrees=degrees)
    R = Ring(K, D)
    sq2 = {x: (R.gen(ys[i]) if i < m else R.zero()) for i, x in enumerate(xs)}
    sq2.update({y: R.zero() for y in ys})
    sq4 = {y: R.gen(y) * R.gen(xs[i]) for i, y in enumerate(ys)}
    return make_action(R, sq2, sq4)


def _splittings(c):
    """lambda_i: least functional with lambda_i(f(y_i)) = 1 and lambda_i(f(y_j)) = 0 on neighbours."""
    F, n, G = c.field, c.n, c.graph
    out = []
    for i in range(G.n_vertices):
        eqs = [c.data[i]] + [c.data[j] for j in G.neighbours(i)]
        rhs = [1] + [0] * G.degree(i)
        lam = gf.least_solution(F, eqs, rhs, n)
        if lam is None:
            raise InvalidColouring(f"no splitting at vertex {i}")
        out.append(lam)
    return out


def _check_colouring(L, n, c, p=2):
    if c.variant != "weak":
        c = convert_colouring(c, "weak")
    if c.field.p != p or c.field.e != 1:
        raise InvalidColouring(f"colouring must be over GF({p})")
    if c.n != n:
        raise DimensionMismatch(f"colouring lives in dimension {c.n}, expected {n}")
    skel = L.one_skeleton()
    if c.graph.n_vertices != skel.n_vertices or set(c.graph.edges()) != set(skel.edges()):
        raise InvalidColouring("colouring is not on the 1-skeleton of L")
    # re-anchor on the skeleton so neighbourhoods come from L itself
    c = SpanColouring(skel, c.field, c.n, "weak", c.data)
    verdict = validate_colouring(c)
    if not verdict:
        raise InvalidColouring(f"vertex {verdict.vertex}: {verdict.reason}")
    return c


def _linear_form(R, xs, v):
    out = R.zero()
    for k, a in enumerate(v):
        if a:
            out = out + R.gen(xs[k]).scale(a)
    return out


def action_from_colouring(L, n, c, D=DEFAULT_D):
    """The action on A(n, L) (mod 2) built from a weak span colouring c of L's 1-skeleton."""
    c = _check_colouring(L, n, c)
    K = join_with_simplex(n, L)
    R = Ring(K, D)
    xs = [f"x{k + 1}" for k in range(n)]
    ys = list(L.vertices)
    lams = _splittings(c)
    sq2 = {}
    for k, x in enumerate(xs):
        img = R.zero()
        for i, y in enumerate(ys):
            if lams[i][k]:
                img = img + R.gen(y)
        sq2[x] = img
    sq2.update({y: R.zero() for y in ys})
    sq4 = {y: R.gen(y) * _linear_form(R, xs, c.data[i]) for i, y in enumerate(ys)}
    return make_action(R, sq2, sq4)


# -- verification -------------------------------------------------------------

def _check_unstable(action):
    R = action.ring
    for (name, k), v in sorted(action.images.items()):
        d = R.complex.degree_of(name)
        if k % 2 or not 0 < k < d:
            return False, f"stored image for Sq^{k}({name}) outside 0 < k < {d}"
        if not v.is_homogeneous(d + k):
            return False, f"Sq^{k}({name}) = {v} is not homogeneous of degree {d + k}"
    for m in R.monomials(R.D // 2):
        d = R.mono_degree(m)
        a = R.element({m: 1})
        if d and sq(action, a, d) != a * a:
            return False, f"Sq^{d}({R.mono_str(m)}) != square"
        if d + 2 <= R.D and sq(action, a, d + 2):
            return False, f"Sq^{d + 2}({R.mono_str(m)}) != 0"
    return True, None


def _check_ideal(action):
    R = action.ring
    free_action = action.lift(R.free())
    Rf = free_action.ring
    for names in minimal_nonfaces(R.complex):
        exps = {v: 1 for v in names}
        m = Rf.monomial(exps)
        if not m:
            continue  # beyond the truncation
        top = R.D - R.mono_degree(next(iter(m.terms)))
        for k in range(2, top + 1, 2):
            image = project(sq(free_action, m, k), R)
            if image:
                return False, f"Sq^{k}({'*'.join(names)}) = {image} modulo I_K"
    return True, None


def _check_adem(action):
    R = action.ring
    for name in R.names:
        g = R.gen(name)
        d = R.complex.degree_of(name)
        for b in range(1, R.D - d + 1):
            for a in range(1, min(2 * b, R.D - d - b + 1)):
                lhs = sq(action, sq(action, g, b), a)
                rhs = R.zero()
                for c in range(0, a // 2 + 1):
                    if binom_mod2(b - c - 1, a - 2 * c):
                        rhs = rhs + sq(action, sq(action, g, c), a + b - c)
                if lhs != rhs:
                    return False, f"Sq^{a}Sq^{b}({name}): {lhs} != {rhs}"
    return True, None


def _check_pmax(action):
    R = action.ring
    K = R.complex
    P = p_max(K)
    local = {}
    for s in P.elements:
        names = K.names(s)
        Rs = R.on_simplex(names)
        for (g, k), v in action.images.items():
            if g not in names and project(v, Rs):
                return False, f"Sq^{k}({g}) restricts nonzero to {{{','.join(names)}}}"
        local[s] = action.lift(Rs)
    for s, t in P.pairs():
        As, At = local[s], local[t]
        Rs = As.ring
        for m in Rs.monomials():
            a = Rs.element({m: 1})
            for k in range(2, R.D - Rs.mono_degree(m) + 1, 2):
                if project(sq(As, a, k), At.ring) != sq(At, project(a, At.ring), k):
                    return False, (f"Sq^{k}({Rs.mono_str(m)}) on {{{','.join(K.names(s))}}} "
                                   f"vs {{{','.join(K.names(t))}}}")
    return True, None


CHECKS = (
    ("unstable", _check_unstable),
    ("cartan_welldefined_on_ideal", _check_ideal),
    ("adem_on_generators", _check_adem),
    ("pmax_projection_compatible", _check_pmax),
)


@dataclass(frozen=True)
class Certificate:
    D: int
    results: tuple  # (name, passed, witness)

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.results)

    def __getitem__(self, name):
        for n, ok, _ in self.results:
            if n == name:
                return ok
        raise KeyError(name)

    def witness(self, name):
        return next(w for n, _, w in self.results if n == name)

    def as_dict(self):
        return {
            "D": self.D,
            "checks": {n: {"pass": ok, "witness": w} for n, ok, w in self.results},
            "all_pass": self.passed,
        }


def verify_action(action):
    """Certificate for the unstable law, ideal preservation, Adem on generators, and P_max compatibility."""
    results = []
    for name, check in CHECKS:
        ok, witness = check(action)
        results.append((name, ok, witness))
    return Certificate(action.ring.D, tuple(results))


# -- extraction ---------------------------------------------------------------

def _read_J(image, y, xs):
    """Return the x's in Sq^4(y) = y * sum(x_j), or raise."""
    R = image.ring
    iy = R.index(y)
    J = []
    for m in image.monomials():
        others = [i for i, e in enumerate(m) if e and i != iy]
        if m[iy] != 1 or len(others) != 1 or R.names[others[0]] not in xs or m[others[0]] != 1:
            raise Sq4NotInPrincipalIdeal(y, image)
        J.append(R.names[others[0]])
    return sorted(J, key=xs.index)


def _vector(J, xs):
    return tuple(1 if x in J else 0 for x in xs)


def _least_complement(F, n, line, V):
    for W in gf.enumerate_subspaces(F, n, n - 2):
        if gf.subspace_leq(W, V) and not gf.subspace_leq(line, W):
            return W
    return None


def extract_colouring(action, G=None):
    """Read a span colouring of G out of an action on A(n, G) (mod 2).

    Returns (full colouring, report).
    """
    R = action.ring
    cls = classify_complex(R.complex)
    if not cls.is_AnG:
        raise NotAnG("ring is not of the form A(n, G)")
    Gr = cls.G
    if G is not None and (G.n_vertices != Gr.n_vertices or set(G.edges()) != set(Gr.edges())):
        raise NotAnG("ring does not match the given graph")
    n, xs, ys = cls.n, list(cls.x_names), list(cls.y_names)
    F = gf.make_field(2)
    report = {"n": n, "x": xs, "y": ys}

    if n <= 1:
        bad = [f for f in R.complex.facets
               if not sugawara_toda(sum(v in xs for v in f), sum(v in ys for v in f))]
        report["sugawara_toda"] = not bad
        if bad:
            raise ExtractionInvalid(f"facet {bad[0]} has more degree-6 than degree-4 vertices; no action exists")

    core, kept, trace = two_core(Gr)
    report["two_core"] = [ys[i] for i in kept]
    report["trace"] = [ys[i] for i in trace]
    data = [None] * len(ys)
    if kept:
        Lc = graph_complex(core, [ys[i] for i in kept])
        Rc = Ring(join_with_simplex(n, Lc), R.D)
        J = {}
        for i in kept:
            J[ys[i]] = _read_J(project(action.sq4(ys[i]), Rc), ys[i], xs)
        report["J"] = J
        weak = weak_colouring(core, F, [_vector(J[ys[i]], xs) for i in kept])
        if any(not any(v) for v in weak.data) or not validate_colouring(weak):
            raise ExtractionInvalid("extracted map is not a span colouring of the 2-core")
        full = convert_colouring(weak, "full")
        for pos, i in enumerate(kept):
            data[i] = full.data[pos]

    lines = gf.enumerate_subspaces(F, n, 1) if n else []
    hypers = gf.enumerate_subspaces(F, n, n - 1) if n else []
    for v in reversed(trace):
        nbrs = [w for w in Gr.neighbours(v) if data[w] is not None]
        if not nbrs:
            if not lines:
                raise ExtractionInvalid("no lines in dimension 0")
            U = lines[0]
            V = next(H for H in hypers if not gf.subspace_leq(U, H))
        else:
            Uw, Vw = data[nbrs[0]]
            U = next((l for l in lines if gf.subspace_leq(l, Vw)), None)
            W = _least_complement(F, n, U, Vw) if U is not None else None
            if W is None:
                raise ExtractionInvalid(f"cannot extend over {ys[v]} in dimension {n}")
            V = gf.subspace_sum(W, Uw)
        data[v] = (U, V)
    c = SpanColouring(Gr, F, n, "full", tuple(data))
    verdict = validate_colouring(c)
    if not verdict:
        raise ExtractionInvalid(f"extended colouring fails at {ys[verdict.vertex]}: {verdict.reason}")
    return c, report


def forced_form_search(G, n, D=DEFAULT_D):
    """Try every Sq^4(y_i) = y_i * v_i with v_i in GF(2)^n and collect those giving span colourings.

    When G has minimum degree at least 2 every action has Sq^4 of this form,
    so an empty result rules out actions on A(n, G) altogether.
    """
    F = gf.make_field(2)
    names = [f"y{i + 1}" for i in range(G.n_vertices)]
    L = graph_complex(G, names)
    R = Ring(join_with_simplex(n, L), D)
    xs = [f"x{k + 1}" for k in range(n)]
    found = []
    total = 0
    for vs in product(list(gf.all_vectors(F, n)), repeat=G.n_vertices):
        total += 1
        f = []
        for y, v in zip(names, vs):
            img = R.gen(y) * _linear_form(R, xs, v)
            f.append(_vector(_read_J(img, y, xs), xs))
        c = weak_colouring(G, F, f) if f else SpanColouring(G, F, n, "weak", ())
        if all(any(v) for v in f) and validate_colouring(c):
            found.append(tuple(f))
    return {"assignments": total, "valid": len(found), "colourings": found}


# -- mod p --------------------------------------------------------------------

def wu_coefficient(i2, i3, p):
    """(-1)^(i2+i3+1) (i2+i3-1)! / (i2! i3!) reduced mod p."""
    num = (-1) ** (i2 + i3 + 1) * factorial(i2 + i3 - 1)
    den = factorial(i2) * factorial(i3)
    return num * pow(den, -1, p) % p


def _wu_terms(total, p):
    return [(i2, (total - 2 * i2) // 3) for i2 in range(total // 2 + 1) if (total - 2 * i2) % 3 == 0]


def p1_su3_images(p):
    """P^1 on Z/p[x, y]: (coefficients of P^1 y, coefficients of P^1 x), as {(i2, i3): c}."""
    y = {t: 2 * wu_coefficient(*t, p) % p for t in _wu_terms(p + 2, p)}
    x = {t: wu_coefficient(*t, p) for t in _wu_terms(p + 1, p)}
    return {k: v for k, v in y.items() if v}, {k: v for k, v in x.items() if v}


@dataclass(eq=False)
class P1Action:
    ring: Ring
    images: dict  # name -> Poly

    def image(self, name):
        return self.images.get(name, self.ring.zero())


def p1(action, a):
    """P^1 extended as a derivation (P^1(ab) = P^1(a) b + a P^1(b))."""
    R = action.ring
    out = R.zero()
    for m, c in a.terms.items():
        for i, e in enumerate(m):
            if not e:
                continue
            rest = list(m)
            rest[i] -= 1
            term = R.element({tuple(rest): c * e}) * action.image(R.names[i])
            out = out + term
    return out


def modp_p1_action(p, L, n, c, D=None):
    """P^1 images on A(n, L) mod p from a weak span colouring over GF(p), with a limited certificate."""
    if not gf.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p % 6 != 5:
        raise BadPrime(f"p = {p} is not 5 mod 6")
    D = DEFAULT_D + 2 * (p - 1) if D is None else D
    ys = list(L.vertices)
    if ys:
        c = _check_colouring(L, n, c, p)
    K = join_with_simplex(n, L)
    R = Ring(K, D, p)
    xs = [f"x{k + 1}" for k in range(n)]
    cy, cx = p1_su3_images(p)
    lams = _splittings(c) if ys else []
    su3 = []
    for i, y in enumerate(ys):
        fy = _linear_form(R, xs, c.data[i])
        gy = R.gen(y)
        ypart = sum(((fy ** a) * (gy ** b)).scale(co) for (a, b), co in cy.items()) if cy else R.zero()
        xpart = sum(((fy ** a) * (gy ** b)).scale(co) for (a, b), co in cx.items()) if cx else R.zero()
        su3.append((ypart or R.zero(), xpart or R.zero()))
    images = {}
    for i, y in enumerate(ys):
        images[y] = su3[i][0]
    for k, x in enumerate(xs):
        img = R.zero()
        for i in range(len(ys)):
            if lams[i][k]:
                img = img + su3[i][1].scale(lams[i][k])
        images[x] = img
    action = P1Action(R, images)
    return action, verify_p1(action)


def verify_p1(action):
    R = action.ring
    p = R.p
    results = []
    bad = None
    for name, v in sorted(action.images.items()):
        d = R.complex.degree_of(name) + 2 * (p - 1)
        if not v.is_homogeneous(d):
            bad = f"P^1({name}) = {v} is not homogeneous of degree {d}"
            break
    results.append(("degrees", bad is None, bad))
    free = P1Action(R.free(), {k: project(v, R.free()) for k, v in action.images.items()})
    bad = None
    for names in minimal_nonfaces(R.complex):
        m = free.ring.monomial({v: 1 for v in names})
        if m and project(p1(free, m), R):
            bad = f"P^1({'*'.join(names)}) leaves I_K"
            break
    results.append(("ideal_preserved", bad is None, bad))
    return Certificate(R.D, tuple(results))


# -- realizability tests ------------------------------------------------------

def classify_two_x(K):
    """Evaluate the three conditions for complexes with exactly two degree-4 vertices."""
    if K.degrees is None or any(d not in (4, 6) for d in K.degrees):
        raise WrongShape("degrees must all be 4 or 6")
    xs = [v for v in K.vertices if K.degree_of(v) == 4]
    ys = [v for v in K.vertices if K.degree_of(v) == 6]
    if len(xs) != 2:
        raise WrongShape(f"need exactly two degree-4 vertices, found {len(xs)}")
    x1, x2 = xs
    conditions = {}
    skel = K.one_skeleton(ys)
    chi = chromatic_number(skel)
    conditions[1] = (chi <= 2, None if chi <= 2 else f"chromatic number {chi}")
    w2 = next((y for y in ys if not K.contains([x1, y]) and not K.contains([x2, y])), None)
    conditions[2] = (w2 is None, w2)
    w3 = next(((a, b) for a, b in (tuple(skel.label(u) for u in e) for e in skel.edges())
               if not K.contains([x1, x2, a, b])), None)
    conditions[3] = (w3 is None, w3)
    failed = next((i for i in (1, 2, 3) if not conditions[i][0]), None)
    return {
        "realizable": failed is None,
        "failed_condition": failed,
        "conditions": {str(i): {"pass": ok, "witness": w} for i, (ok, w) in conditions.items()},
    }


def decomposition_check(K, partition):
    """Every P_max cell meets every block in degree multiset {4,6}, {4} or nothing."""
    blocks = [list(b) for b in partition]
    flat = [v for b in blocks for v in b]
    if sorted(flat) != sorted(K.vertices) or len(set(flat)) != len(flat):
        raise NotAPartition("blocks must cover the vertices exactly once")
    allowed = ([4, 6], [4], [])
    for s in p_max(K).elements:
        cell = set(K.names(s))
        for b in blocks:
            ms = sorted(K.degree_of(v) for v in b if v in cell)
            if ms not in allowed:
                return {"valid": False, "cell": sorted(cell), "block": b, "multiset": ms}
    return {"valid": True}


def decomposition_from_colouring(n, L, colours):
    """Blocks A_i = colour class i plus x_i, from a proper colouring of L's 1-skeleton."""
    skel = L.one_skeleton()
    if len(colours) != skel.n_vertices or any(not 0 <= c < n for c in colours):
        raise InvalidColouring("colours must be 0..n-1, one per vertex")
    if any(colours[u] == colours[v] for u, v in skel.edges()):
        raise InvalidColouring("colouring is not proper")
    K = join_with_simplex(n, L)
    blocks = [[f"x{i + 1}"] + [y for y, c in zip(L.vertices, colours) if c == i] for i in range(n)]
    return K, blocks


def chi_top_bracket(G):
    """The bounds s_2 chi(G) <= chi_Top(G) <= chi(G); the middle value is not computed."""
    s2, _ = span_chromatic_number(G, gf.make_field(2))
    return {"lower": s2, "upper": chromatic_number(G)}


# -- serialization ------------------------------------------------------------

def action_to_dict(action):
    R = action.ring
    sq2 = {g: poly_to_json(action.image(g, 2)) for g in R.names}
    sq4 = {g: poly_to_json(action.image(g, 4)) for g in R.names if R.complex.degree_of(g) > 4}
    return {"ring": complex_to_dict(R.complex), "D": R.D, "sq2": sq2, "sq4": sq4}


def action_from_dict(d):
    K = complex_from_dict(d["ring"])
    R = Ring(K, int(d.get("D", DEFAULT_D)))
    sq2 = {g: poly_from_json(R, v) for g, v in d.get("sq2", {}).items()}
    sq4 = {g: poly_from_json(R, v) for g, v in d.get("sq4", {}).items()}
    return make_action(R, sq2, sq4)


def p1_to_dict(action):
    R = action.ring
    return {"ring": complex_to_dict(R.complex), "D": R.D, "p": R.p,
            "p1": {g: poly_to_json(action.image(g)) for g in R.names}}
