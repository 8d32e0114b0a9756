"""Exact linear algebra over small finite fields GF(q), q = p^e <= 16.

Elements are the integers 0..q-1.  For an extension field the base-p
digits of an element are the coefficients of its polynomial representative,
lowest degree first, so in GF(4) the generator ``x`` is element 2.
Vectors are plain tuples of element indices; subspaces are stored by their
reduced row echelon basis, which makes equality structural.
"""

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, product

from .errors import CapExceeded, MixedAmbient, NotPrime, OrderTooLarge, SpanChromError

MAX_ORDER = 16
DEFAULT_CAP = 2 ** 20

# lowest degree coefficient first, monic
IRREDUCIBLE = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
}


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    p: int
    e: int
    q: int = dc_field(compare=False)
    add_table: tuple = dc_field(compare=False, repr=False)
    mul_table: tuple = dc_field(compare=False, repr=False)
    neg_table: tuple = dc_field(compare=False, repr=False)
    inv_table: tuple = dc_field(compare=False, repr=False)

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def elements(self):
        return range(self.q)

    def __str__(self):
        return f"GF({self.q})"


# alias matching the name used in the docs
FieldDesc = Field


def _digits(a, p, e):
    out = []
    for _ in range(e):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p):
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def _poly_mulmod(a, b, p, modulus):
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # modulus is monic: x^e = -(lower terms)
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for k in range(e):
                prod[deg - e + k] = (prod[deg - e + k] - c * modulus[k]) % p
    return prod[:e]


@lru_cache(maxsize=None)
def make_field(p, e=1):
    """Build GF(p^e) from lookup tables.

    Raises NotPrime when p is not prime and OrderTooLarge when p^e > 16.
    """
    p, e = int(p), int(e)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise SpanChromError("extension degree must be positive")
    q = p ** e
    if q > MAX_ORDER:
        raise OrderTooLarge(f"GF({p}^{e}) has order {q} > {MAX_ORDER}")
    if e == 1:
        add = tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
        mul = tuple(tuple((a * b) % p for b in range(q)) for a in range(q))
    else:
        modulus = IRREDUCIBLE[(p, e)]
        digs = [_digits(a, p, e) for a in range(q)]
        add = tuple(
            tuple(_undigits([(x + y) % p for x, y in zip(digs[a], digs[b])], p) for b in range(q))
            for a in range(q)
        )
        mul = tuple(
            tuple(_undigits(_poly_mulmod(digs[a], digs[b], p, modulus), p) for b in range(q))
            for a in range(q)
        )
    neg = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
    inv = (0,) + tuple(next(b for b in range(q) if mul[a][b] == 1) for a in range(1, q))
    return Field(p, e, q, add, mul, neg, inv)


def field_of_order(q):
    for p in range(2, q + 1):
        if is_prime(p):
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r == 1:
                return make_field(p, e)
            if e:
                break
    raise SpanChromError(f"{q} is not a prime power")


def check_field_axioms(F):
    """Exhaustive check of the field axioms on the tables; returns a list of failures."""
    bad = []
    R = range(F.q)
    for a in R:
        if F.add(a, 0) != a or F.mul(a, 1) != a:
            bad.append(("identity", a))
        if F.add(a, F.neg(a)) != 0:
            bad.append(("additive inverse", a))
        if a and F.mul(a, F.inv(a)) != 1:
            bad.append(("multiplicative inverse", a))
        for b in R:
            if F.add(a, b) != F.add(b, a) or F.mul(a, b) != F.mul(b, a):
                bad.append(("commutativity", a, b))
            for c in R:
                if F.add(F.add(a, b), c) != F.add(a, F.add(b, c)):
                    bad.append(("add associativity", a, b, c))
                if F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c)):
                    bad.append(("mul associativity", a, b, c))
                if F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)):
                    bad.append(("distributivity", a, b, c))
    return bad


# -- vectors ------------------------------------------------------------------

def make_vector(F, coords):
    v = tuple(int(c) for c in coords)
    if any(c < 0 or c >= F.q for c in v):
        raise SpanChromError(f"coordinates {v} out of range for {F}")
    return v


def vec_add(F, u, v):
    return tuple(F.add_table[a][b] for a, b in zip(u, v))


def vec_sub(F, u, v):
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def vec_scale(F, c, v):
    row = F.mul_table[c]
    return tuple(row[a] for a in v)


def dot(F, u, v):
    s = 0
    for a, b in zip(u, v):
        s = F.add_table[s][F.mul_table[a][b]]
    return s


def unit_vector(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def all_vectors(F, n):
    return product(range(F.q), repeat=n)


def nonzero_vectors(F, n):
    return [v for v in all_vectors(F, n) if any(v)]


def _check_cap(F, n, cap):
    if F.q ** n > cap:
        raise CapExceeded(f"{F}^{n} has {F.q ** n} vectors, cap is {cap}")


# -- subspaces ----------------------------------------------------------------

def rref(F, rows):
    """Reduced row echelon form, zero rows dropped."""
    rows = [list(r) for r in rows]
    if not rows:
        return ()
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, a) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r])


@dataclass(frozen=True)
class Subspace:
    field: Field
    ambient_dim: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    @property
    def pivots(self):
        return tuple(next(i for i, a in enumerate(row) if a) for row in self.basis)

    def reduce(self, v):
        """Residue of v after elimination against the basis (zero iff v in self)."""
        F = self.field
        v = list(v)
        for row, c in zip(self.basis, self.pivots):
            a = v[c]
            if a:
                v = [F.sub(x, F.mul(a, y)) for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v):
        return not any(self.reduce(v))

    __contains__ = contains

    def key(self):
        return tuple(a for row in self.basis for a in row)

    def elements(self):
        F = self.field
        out = set()
        for coeffs in product(range(F.q), repeat=self.dim):
            v = (0,) * self.ambient_dim
            for c, row in zip(coeffs, self.basis):
                v = vec_add(F, v, vec_scale(F, c, row))
            out.add(v)
        return out

    def __str__(self):
        return "<" + ", ".join("(" + ",".join(map(str, r)) + ")" for r in self.basis) + ">"


def span(vectors, field=None, n=None):
    """Subspace spanned by ``vectors``; ``field`` and ``n`` are required when empty."""
    vectors = [tuple(v) for v in vectors]
    if vectors:
        if n is None:
            n = len(vectors[0])
        if any(len(v) != n for v in vectors):
            raise MixedAmbient("vectors of different lengths")
    if field is None or n is None:
        raise SpanChromError("span of no vectors needs an explicit field and dimension")
    return Subspace(field, n, rref(field, vectors))


def zero_subspace(F, n):
    return Subspace(F, n, ())


def subspace_leq(A, B):
    if A.field != B.field or A.ambient_dim != B.ambient_dim:
        raise MixedAmbient("subspaces live in different ambient spaces")
    return all(B.contains(row) for row in A.basis)


def subspace_sum(A, B):
    if A.field != B.field or A.ambient_dim != B.ambient_dim:
        raise MixedAmbient("subspaces live in different ambient spaces")
    return span(A.basis + B.basis, A.field, A.ambient_dim)


@lru_cache(maxsize=None)
def _enumerate(F, n, l):
    out = []
    for pivots in combinations(range(n), l):
        # free slots: row i, columns after its pivot that are not pivots
        slots = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for vals in product(range(F.q), repeat=len(slots)):
            rows = [[0] * n for _ in range(l)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), a in zip(slots, vals):
                rows[i][c] = a
            out.append(Subspace(F, n, tuple(tuple(r) for r in rows)))
    out.sort(key=Subspace.key)
    return tuple(out)


def enumerate_subspaces(F, n, l, cap=DEFAULT_CAP):
    """All l-dimensional subspaces of F^n in lexicographic order of their RREF bases."""
    if not 0 <= l <= n:
        raise SpanChromError(f"need 0 <= l <= n, got l={l}, n={n}")
    _check_cap(F, n, cap)
    return list(_enumerate(F, n, l))


def gaussian_binomial(q, n, l):
    num = den = 1
    for i in range(l):
        num *= q ** (n - i) - 1
        den *= q ** (l - i) - 1
    return num // den


def least_solution(F, equations, rhs, n):
    """Lexicographically least x in F^n with <a_k, x> = rhs_k for every k, or None."""
    eqs = [tuple(a) + (b,) for a, b in zip(equations, rhs)]

    def consistent(system):
        R = rref(F, system)
        return not any(all(a == 0 for a in row[:-1]) for row in R)

    if not consistent(eqs):
        return None
    x = []
    for i in range(n):
        for t in range(F.q):
            trial = eqs + [unit_vector(n, i) + (t,)]
            if consistent(trial):
                eqs = trial
                x.append(t)
                break
    return tuple(x)
