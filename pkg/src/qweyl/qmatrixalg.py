"""The quadratic algebras generated by Z_ij (plus side) and W_ij (minus side).

Both sides obey the same four relation schemata, so the rewriting engine is
shared and elements only carry a side tag.  Monomials are exponent tuples in
column-major order (1,1) < (2,1) < ... < (n,1) < (1,2) < ... < (n,n).
"""

from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .qcoeff import ONE, ZERO, QRat, as_qrat, eval_at, gamma, q, qpow

PLUS = "+"
MINUS = "-"


def check_side(side):
    if side not in (PLUS, MINUS):
        raise ValueError("side must be '+' or '-', got %r" % (side,))
    return side


def pos(n, i, j):
    """Column-major position of node (i, j), 1-based indices."""
    return (j - 1) * n + (i - 1)


def node(n, p):
    return (p % n + 1, p // n + 1)


def nodes(n):
    """All nodes in monomial order."""
    return [node(n, p) for p in range(n * n)]


class PbwMonomial:
    """An ordered product of generators, stored as a column-major exponent tuple."""

    __slots__ = ("n", "exps", "side")

    def __init__(self, n, exps, side=PLUS):
        exps = tuple(exps)
        if len(exps) != n * n or any(a < 0 for a in exps):
            raise ValueError("bad exponent vector %r for n=%d" % (exps, n))
        self.n, self.exps, self.side = n, exps, check_side(side)

    @classmethod
    def from_matrix(cls, mat, side=PLUS):
        n = len(mat)
        exps = [0] * (n * n)
        for i in range(n):
            for j in range(n):
                exps[pos(n, i + 1, j + 1)] = mat[i][j]
        return cls(n, exps, side)

    def matrix(self):
        n = self.n
        return [[self.exps[pos(n, i, j)] for j in range(1, n + 1)] for i in range(1, n + 1)]

    def exponent(self, i, j):
        return self.exps[pos(self.n, i, j)]

    @property
    def degree(self):
        return sum(self.exps)

    def __eq__(self, other):
        return (isinstance(other, PbwMonomial) and self.exps == other.exps
                and self.side == other.side)

    def __hash__(self):
        return hash((self.exps, self.side))

    def __repr__(self):
        return "PbwMonomial(%s%s)" % (self.side, monomial_str(self.n, self.exps, self.side))


def monomial_str(n, exps, side=PLUS):
    letter = "Z" if side == PLUS else "W"
    parts = []
    for p, a in enumerate(exps):
        if a:
            i, j = node(n, p)
            parts.append("%s%d%d%s" % (letter, i, j, "^%d" % a if a > 1 else ""))
    return "*".join(parts) or "1"


class AlgElement:
    """Finite QRat-linear combination of PBW monomials of one side."""

    __slots__ = ("n", "side", "terms")

    def __init__(self, n, side=PLUS, terms=None):
        self.n = n
        self.side = check_side(side)
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = as_qrat(c)
                if not c.is_zero():
                    self.terms[tuple(m)] = c

    @classmethod
    def one(cls, n, side=PLUS):
        return cls(n, side, {(0,) * (n * n): ONE})

    @classmethod
    def generator(cls, n, i, j, side=PLUS):
        exps = [0] * (n * n)
        exps[pos(n, i, j)] = 1
        return cls(n, side, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, m, coeff=ONE):
        return cls(m.n, m.side, {m.exps: coeff})

    def _like(self, terms):
        out = AlgElement(self.n, self.side)
        out.terms = terms
        return out

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, ZERO) + c
            if s.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = s
        return self._like(terms)

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_qrat(c)
        if c.is_zero():
            return self._like({})
        return self._like({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.n == other.n and self.side == other.side and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({sum(m) for m in self.terms})

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), ZERO)

    def _check(self, other):
        if self.n != other.n or self.side != other.side:
            raise ValueError("elements live in different algebras")

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = ["(%s)*%s" % (c, monomial_str(self.n, m, self.side))
                 for m, c in sorted(self.terms.items())]
        return " + ".join(parts)


def _add_into(acc, m, c):
    s = acc.get(m)
    s = c if s is None else s + c
    if s.is_zero():
        acc.pop(m, None)
    else:
        acc[m] = s


def swap_rule(n, p, s):
    """Rewrite the out-of-order product g_p * g_s (s < p).

    Returns (c, extra): g_p g_s = c * g_s g_p + extra, where extra is None or
    (coefficient, p1, p2) with p1 <= p2 an ordered pair.
    """
    i, j = node(n, p)
    a, b = node(n, s)
    if a == i or b == j:          # same row (b < j) or same column (a < i)
        return qpow(1), None
    if a > i:                     # b < j, a > i: plain commutation
        return ONE, None
    # a < i and b < j: the cross relation
    p1, p2 = pos(n, i, b), pos(n, a, j)
    return ONE, (gamma, min(p1, p2), max(p1, p2))


@lru_cache(maxsize=None)
def gen_times_monomial(n, p, m):
    """Normal form of g_p * Z^m as a tuple of (monomial, QRat) pairs."""
    first = next((k for k, a in enumerate(m) if a), None)
    if first is None or p <= first:
        out = list(m)
        out[p] += 1
        return ((tuple(out), ONE),)
    rest = list(m)
    rest[first] -= 1
    rest = tuple(rest)
    c, extra = swap_rule(n, p, first)
    acc = {}
    # g_p x rest = c x (g_p rest) + extra-term
    for mm, cc in gen_times_monomial(n, p, rest):
        for m2, c2 in gen_times_monomial(n, first, mm):
            _add_into(acc, m2, c * cc * c2)
    if extra is not None:
        ce, p1, p2 = extra
        for mm, cc in gen_times_monomial(n, p2, rest):
            for m2, c2 in gen_times_monomial(n, p1, mm):
                _add_into(acc, m2, ce * cc * c2)
    return tuple(sorted(acc.items()))


def _expand(m):
    word = []
    for p, a in enumerate(m):
        word.extend([p] * a)
    return word


@lru_cache(maxsize=None)
def monomial_times_monomial(n, m1, m2):
    """Normal form of Z^m1 * Z^m2."""
    cur = {m2: ONE}
    for p in reversed(_expand(m1)):
        nxt = {}
        for mm, cc in cur.items():
            for m3, c3 in gen_times_monomial(n, p, mm):
                _add_into(nxt, m3, cc * c3)
        cur = nxt
    return tuple(sorted(cur.items()))


def multiply(x, y):
    """PBW normal form of x*y."""
    x._check(y)
    acc = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            for m3, c3 in monomial_times_monomial(x.n, m1, m2):
                _add_into(acc, m3, c1 * c2 * c3)
    return x._like(acc)


def left_mult_generator(i, j, v):
    """Z_ij * v computed with the memoized engine."""
    p = pos(v.n, i, j)
    acc = {}
    for m, c in v.terms.items():
        for m2, c2 in gen_times_monomial(v.n, p, m):
            _add_into(acc, m2, c * c2)
    return v._like(acc)


def right_mult_generator(i, j, v):
    """v * Z_ij."""
    return multiply(v, AlgElement.generator(v.n, i, j, v.side))


# -- word rewriting with an explicit strategy (used as a confluence oracle) --

def normal_order(word, n, side=PLUS, strategy="leftmost"):
    """PBW normal form of a product of generators, given as a sequence of nodes.

    Applies one relation at a time to an adjacent out-of-order pair; the
    strategy selects the leftmost or rightmost such pair.  Independent of the
    memoized engine used by ``multiply``.
    """
    check_side(side)
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError("unknown strategy %r" % (strategy,))
    start = tuple(pos(n, i, j) for (i, j) in word)
    pending = {start: ONE}
    done = {}
    while pending:
        w, c = pending.popitem()
        idx = [k for k in range(len(w) - 1) if w[k] > w[k + 1]]
        if not idx:
            m = [0] * (n * n)
            for p in w:
                m[p] += 1
            _add_into(done, tuple(m), c)
            continue
        k = idx[0] if strategy == "leftmost" else idx[-1]
        cc, extra = swap_rule(n, w[k], w[k + 1])
        _add_into(pending, w[:k] + (w[k + 1], w[k]) + w[k + 2:], c * cc)
        if extra is not None:
            ce, p1, p2 = extra
            _add_into(pending, w[:k] + (p1, p2) + w[k + 2:], c * ce)
    return AlgElement(n, side, done)


def word_element(word, n, side=PLUS):
    """The product of generators in ``word`` via the memoized engine."""
    out = AlgElement.one(n, side)
    for (i, j) in reversed(word):
        out = left_mult_generator(i, j, out)
    return out


# -- grading --------------------------------------------------------------

def generator_weight(n, i, j, side=PLUS):
    """wt(Z_ij) = e_{n+1-i} - e_{n+j} as a length-2n integer tuple."""
    w = [0] * (2 * n)
    w[n - i] += 1          # e_{n+1-i}
    w[n + j - 1] -= 1      # e_{n+j}
    if side == MINUS:
        w = [-x for x in w]
    return tuple(w)


def weight_of(m):
    """Weight of a PbwMonomial (or of an exponent tuple on the plus side)."""
    if isinstance(m, PbwMonomial):
        n, exps, side = m.n, m.exps, m.side
    else:
        raise TypeError("weight_of expects a PbwMonomial")
    return exps_weight(n, exps, side)


def exps_weight(n, exps, side=PLUS):
    w = [0] * (2 * n)
    for p, a in enumerate(exps):
        if a:
            i, j = node(n, p)
            w[n - i] += a
            w[n + j - 1] -= a
    if side == MINUS:
        w = [-x for x in w]
    return tuple(w)


def inner(u, v):
    return sum(a * b for a, b in zip(u, v))


def unit_vector(n, k):
    """e_k in R^{2n}, 1-based."""
    w = [0] * (2 * n)
    w[k - 1] = 1
    return tuple(w)


def root_beta(n):
    return tuple(a - b for a, b in zip(unit_vector(n, n), unit_vector(n, n + 1)))


def root_mu(n, k):
    """The compact simple root with wt(Z_{k+1,j}) = wt(Z_{k,j}) + mu_k."""
    return tuple(a - b for a, b in zip(unit_vector(n, n - k), unit_vector(n, n - k + 1)))


def root_nu(n, k):
    """The compact simple root with wt(Z_{i,k+1}) = wt(Z_{i,k}) + nu_k."""
    return tuple(a - b for a, b in zip(unit_vector(n, n + k), unit_vector(n, n + k + 1)))


@lru_cache(maxsize=None)
def basis_of_degree(n, d):
    """All exponent tuples of total degree d, lexicographically ordered."""
    out = []
    for combo in combinations_with_replacement(range(n * n), d):
        m = [0] * (n * n)
        for p in combo:
            m[p] += 1
        out.append(tuple(m))
    out.sort(reverse=True)
    return tuple(out)


def basis_monomials(n, d, side=PLUS):
    return [PbwMonomial(n, m, side) for m in basis_of_degree(n, d)]


def pbw_dimension(n, d):
    return comb(n * n + d - 1, d)


def specialize_q1(x):
    """Evaluate every coefficient at q = 1 (t-free elements only)."""
    acc = {}
    for m, c in x.terms.items():
        v = eval_at(c, 1)
        if v:
            acc[m] = QRat(v)
    return x._like(acc)


__all__ = [
    "PLUS", "MINUS", "PbwMonomial", "AlgElement", "normal_order", "multiply",
    "weight_of", "basis_of_degree", "basis_monomials", "pbw_dimension", "pos",
    "node", "nodes", "generator_weight", "root_beta", "root_mu", "root_nu",
    "inner", "left_mult_generator", "right_mult_generator", "word_element",
    "monomial_str", "exps_weight", "gen_times_monomial", "specialize_q1", "q",
]
