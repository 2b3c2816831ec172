"""Degree-truncated free algebra on simple root vectors modulo the quantum Serre ideal.

This is the ground truth used to certify the quadratic relations of the
iterated q-commutators Z_ij, and to derive commutation rules between the
generators of the quadratic algebras and the compact root vectors.

Letters are integers indexing the simple roots along the Dynkin path
mu_{n-1}, ..., mu_1, beta, nu_1, ..., nu_{n-1}; letter n-1 is beta.
The same code models the positive part (letters E) and the negative part
(letters F); the Serre relators have the same shape on both.
"""

from collections import Counter
from functools import lru_cache
from itertools import permutations

from .linalg import SparseEchelon, axpy
from .qcoeff import ONE, as_qrat, q, qpow
from .qmatrixalg import PLUS, node, nodes, pos, root_beta, root_mu, root_nu, swap_rule

QINT2 = q + qpow(-1)


class DegreeMismatch(ValueError):
    pass


def letter_beta(n):
    return n - 1


def letter_mu(n, k):
    return n - 1 - k


def letter_nu(n, k):
    return n - 1 + k


def alphabet(n):
    return list(range(2 * n - 1))


def letter_name(n, a):
    if a == n - 1:
        return "b"
    if a < n - 1:
        return "m%d" % (n - 1 - a)
    return "n%d" % (a - n + 1)


@lru_cache(maxsize=None)
def letter_root(n, a):
    if a == n - 1:
        return root_beta(n)
    if a < n - 1:
        return root_mu(n, n - 1 - a)
    return root_nu(n, a - n + 1)


def root_pairing(n, a, b):
    ra, rb = letter_root(n, a), letter_root(n, b)
    return sum(x * y for x, y in zip(ra, rb))


class FreeElement:
    """Finite QRat-combination of words over the simple-root alphabet."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        for w, c in (terms or {}).items():
            c = as_qrat(c)
            if not c.is_zero():
                self.terms[tuple(w)] = c

    @classmethod
    def letter(cls, n, a):
        return cls(n, {(a,): ONE})

    @classmethod
    def one(cls, n):
        return cls(n, {(): ONE})

    def _like(self, terms):
        out = FreeElement(self.n)
        out.terms = terms
        return out

    def __add__(self, other):
        acc = dict(self.terms)
        axpy(acc, ONE, other.terms)
        return self._like(acc)

    def __neg__(self):
        return self._like({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_qrat(c)
        if c.is_zero():
            return self._like({})
        return self._like({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            acc = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    axpy(acc, c1, {w1 + w2: c2})
            return self._like(acc)
        return self.scale(other)

    __rmul__ = scale

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)*%s" % (c, ".".join(letter_name(self.n, a) for a in w) or "1")
                          for w, c in sorted(self.terms.items()))


def adjacent(a, b):
    return abs(a - b) == 1


def serre_relators(n):
    """Cubic relators for ordered adjacent pairs, commutators for non-adjacent ones."""
    out = []
    letters = alphabet(n)
    for a in letters:
        for b in letters:
            if adjacent(a, b):
                out.append(FreeElement(n, {(a, a, b): ONE, (a, b, a): -QINT2, (b, a, a): ONE}))
    for a in letters:
        for b in letters:
            if a < b and not adjacent(a, b):
                out.append(FreeElement(n, {(a, b): ONE, (b, a): -ONE}))
    return out


def content(word):
    return tuple(sorted(Counter(word).items()))


@lru_cache(maxsize=None)
def _words_with_content(cont):
    letters = []
    for a, k in cont:
        letters.extend([a] * k)
    return tuple(sorted(set(permutations(letters))))


class SerreQuotientSpace:
    """The degree-d slice of the free algebra modulo the Serre ideal.

    Built lazily one weight space (letter multiset) at a time; relators are
    weight-homogeneous, so the ideal slice splits along weight spaces.
    """

    def __init__(self, n, d):
        self.n = n
        self.d = d
        self._relators = [(len(next(iter(r.terms))), content(next(iter(r.terms))), r)
                          for r in serre_relators(n)]
        self._spaces = {}

    def weight_space(self, cont):
        ech = self._spaces.get(cont)
        if ech is not None:
            return ech
        ech = SparseEchelon()
        seen = set()
        for w in _words_with_content(cont):
            for k in range(len(w)):
                for L, rc, r in self._relators:
                    if k + L > len(w) or content(w[k:k + L]) != rc:
                        continue
                    key = (w[:k], id(r), w[k + L:])
                    if key in seen:
                        continue
                    seen.add(key)
                    x, y = w[:k], w[k + L:]
                    ech.insert({x + s + y: c for s, c in r.terms.items()})
        self._spaces[cont] = ech
        return ech

    def reduce(self, elem):
        """Normal form modulo the ideal, as {word: QRat} on non-pivot words."""
        terms = elem.terms if isinstance(elem, FreeElement) else elem
        if any(len(w) != self.d for w in terms):
            raise DegreeMismatch("element has terms outside degree %d" % self.d)
        out = {}
        by_cont = {}
        for w, c in terms.items():
            by_cont.setdefault(content(w), {})[w] = c
        for cont, part in sorted(by_cont.items()):
            out.update(self.weight_space(cont).reduce(part))
        return out

    def quotient_dimension(self, cont=None):
        if cont is not None:
            return len(_words_with_content(cont)) - len(self.weight_space(cont))
        total = 0
        for c in all_contents(self.n, self.d):
            total += self.quotient_dimension(c)
        return total


def all_contents(n, d):
    letters = alphabet(n)
    out = []

    def rec(i, left, acc):
        if i == len(letters) - 1:
            cont = acc + ([(letters[i], left)] if left else [])
            out.append(tuple(cont))
            return
        for k in range(left + 1):
            rec(i + 1, left - k, acc + ([(letters[i], k)] if k else []))

    rec(0, d, [])
    return out


class SerreAlgebra:
    """Cache of quotient spaces for all degrees of one rank n."""

    def __init__(self, n):
        self.n = n
        self._spaces = {}

    def space(self, d):
        sp = self._spaces.get(d)
        if sp is None:
            sp = self._spaces[d] = SerreQuotientSpace(self.n, d)
        return sp

    def reduce(self, elem):
        """Normal form of a (possibly inhomogeneous) element, keyed by word."""
        by_deg = {}
        for w, c in elem.terms.items():
            by_deg.setdefault(len(w), {})[w] = c
        out = {}
        for d, part in sorted(by_deg.items()):
            out.update(self.space(d).reduce(part))
        return out

    def is_zero(self, elem):
        return not self.reduce(elem)

    def equal(self, a, b):
        return self.is_zero(a - b)


_ALGEBRAS = {}


def serre_algebra(n):
    alg = _ALGEBRAS.get(n)
    if alg is None:
        alg = _ALGEBRAS[n] = SerreAlgebra(n)
    return alg


def reduce(w, space):
    """Coordinates of w in the quotient slice ``space``."""
    return space.reduce(w)


# -- generators of the quadratic algebras inside the free algebras ---------

def q_adjoint(e, x, c):
    """e*x - c*x*e."""
    return e * x - (x * e).scale(c)


@lru_cache(maxsize=None)
def z_generator(i, j, n):
    """Z_ij as an iterated q-commutator in the E letters.

    Rows first: Z_{i+1,1} = ad(E_mu_i)(Z_{i,1}), then columns:
    Z_{i,j+1} = ad(E_nu_j)(Z_{i,j}), with ad(E)(x) = E x - q^-1 x E.
    """
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("node (%d,%d) out of range" % (i, j))
    if j > 1:
        return q_adjoint(FreeElement.letter(n, letter_nu(n, j - 1)), z_generator(i, j - 1, n), qpow(-1))
    if i > 1:
        return q_adjoint(FreeElement.letter(n, letter_mu(n, i - 1)), z_generator(i - 1, 1, n), qpow(-1))
    return FreeElement.letter(n, letter_beta(n))


@lru_cache(maxsize=None)
def w_generator(i, j, n):
    """W_ij in the F letters: W_{i+1,1} = W_i1 F_mu_i - q F_mu_i W_i1, columns alike.

    This normalization gives r_beta(W_11) = 1 and r_mu_i(W_{i+1,j}) = -gamma W_ij.
    """
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("node (%d,%d) out of range" % (i, j))
    if j > 1:
        f = FreeElement.letter(n, letter_nu(n, j - 1))
        w = w_generator(i, j - 1, n)
        return w * f - (f * w).scale(q)
    if i > 1:
        f = FreeElement.letter(n, letter_mu(n, i - 1))
        w = w_generator(i - 1, 1, n)
        return w * f - (f * w).scale(q)
    return FreeElement.letter(n, letter_beta(n))


def generator_word(side, n, i, j):
    return z_generator(i, j, n) if side == PLUS else w_generator(i, j, n)


def pbw_to_free(n, exps, side=PLUS):
    """The free-algebra image of a PBW monomial."""
    out = FreeElement.one(n)
    for p, a in enumerate(exps):
        if a:
            i, j = node(n, p)
            g = generator_word(side, n, i, j)
            for _ in range(a):
                out = out * g
    return out


def alg_to_free(x):
    out = FreeElement(x.n)
    for m, c in x.terms.items():
        out = out + pbw_to_free(x.n, m, x.side).scale(c)
    return out


# -- certification ----------------------------------------------------------

def relation_instances(n):
    """Every ordered generator pair (g, h) with the rewrite of g*h.

    Returns tuples (g, h, lhs_alg, rhs_alg_terms) where the identity to check
    is g*h = normal form of g*h.  Out-of-order pairs are the instances of the
    four relation schemata; in-order pairs and squares are included so the
    whole multiplication table of degree-2 words is covered.
    """
    out = []
    for g in nodes(n):
        for h in nodes(n):
            pg, ph = pos(n, *g), pos(n, *h)
            if pg <= ph:
                kind = "ordered"
                rhs = [(ONE, (pg, ph))]
            else:
                c, extra = swap_rule(n, pg, ph)
                i, j = g
                s, t = h
                if i == s:
                    kind = "same row"
                elif j == t:
                    kind = "same column"
                elif s > i:
                    kind = "commuting"
                else:
                    kind = "cross"
                rhs = [(c, (ph, pg))]
                if extra is not None:
                    rhs.append((extra[0], (extra[1], extra[2])))
            out.append((g, h, kind, rhs))
    return out


def certify_quadratic_relations(n, D=6, side=PLUS):
    """Check every degree-2 rewrite rule in the Serre quotient.

    Returns a list of dicts {instance, kind, degree, status}.
    """
    alg = serre_algebra(n)
    report = []
    for g, h, kind, rhs in relation_instances(n):
        deg = (g[0] + g[1] - 1) + (h[0] + h[1] - 1)
        letter = "Z" if side == PLUS else "W"
        name = "%s%d%d*%s%d%d" % (letter, g[0], g[1], letter, h[0], h[1])
        if deg > D:
            report.append({"instance": name, "kind": kind, "degree": deg, "status": "inconclusive"})
            continue
        lhs = generator_word(side, n, *g) * generator_word(side, n, *h)
        diff = lhs
        for c, (p1, p2) in rhs:
            a, b = node(n, p1), node(n, p2)
            diff = diff - (generator_word(side, n, *a) * generator_word(side, n, *b)).scale(c)
        ok = alg.is_zero(diff)
        report.append({"instance": name, "kind": kind, "degree": deg,
                       "status": "pass" if ok else "fail"})
    return report


def positive_root_heights(n):
    """Heights of the positive roots of the Dynkin path (contiguous intervals)."""
    L = 2 * n - 1
    return [b - a for a in range(L) for b in range(a + 1, L + 1)]


def pbw_root_count(n, d, graded_by="height"):
    """Number of PBW monomials in the positive root vectors.

    graded_by="height" counts by the number of simple letters (the grading of
    the free algebra); graded_by="roots" counts root-vector factors.
    """
    heights = positive_root_heights(n)
    if graded_by == "roots":
        from math import comb
        return comb(len(heights) + d - 1, d)
    counts = [1] + [0] * d
    for h in heights:
        for k in range(h, d + 1):
            counts[k] += counts[k - h]
    return counts[d]


# -- twisted derivations on free words --------------------------------------

def r_free(elem, a, primed, side):
    """The r_alpha / r'_alpha operators on free words (alpha = letter a).

    Minus side:  r(y y') = r(y) y' + q^{(a, wt y)} y r(y'),
                 r'(y y') = q^{(a, wt y')} r'(y) y' + y r'(y').
    Plus side:   r(x x') = q^{(a, wt x')} r(x) x' + x r(x'),
                 r'(x x') = r'(x) x' + q^{(a, wt x)} x r'(x').
    Weights are the positive root contents of the words.
    """
    n = elem.n
    # which side of the removed letter carries the q-power
    weigh_left = (side != PLUS) != primed
    acc = {}
    for w, c in elem.terms.items():
        for k, b in enumerate(w):
            if b != a:
                continue
            other = w[:k] if weigh_left else w[k + 1:]
            e = sum(root_pairing(n, a, x) for x in other)
            axpy(acc, c * qpow(e), {w[:k] + w[k + 1:]: ONE})
    return FreeElement(n, acc)



# -- parabolic decomposition ---------------------------------------------------

class NotInSpan(ValueError):
    """The element is not a combination of the offered candidates."""


def compact_letters(n):
    return tuple(a for a in alphabet(n) if a != letter_beta(n))


def _generator_content(n, i, j):
    return Counter(next(iter(z_generator(i, j, n).terms)))


def _pbw_with_content(n, cont):
    """PBW exponent tuples whose letter content fits inside cont and uses all beta letters."""
    nb = cont.get(letter_beta(n), 0)
    gens = [(pos(n, i, j), _generator_content(n, i, j)) for (i, j) in nodes(n)]
    out = []

    def rec(k, left, exps, used):
        if left == 0:
            if all(used[a] <= cont.get(a, 0) for a in used):
                out.append((tuple(exps), used))
            return
        if k == len(gens):
            return
        p, gc = gens[k]
        for a in range(left, -1, -1):
            u = used + Counter({x: a * c for x, c in gc.items()})
            if any(u[x] > cont.get(x, 0) for x in u):
                continue
            e = list(exps)
            e[p] = a
            rec(k + 1, left - a, e, u)

    rec(0, nb, [0] * (n * n), Counter())
    return out


def express_parabolic(elem, side):
    """Write a homogeneous free element as sum c * (PBW monomial)(compact word).

    Returns {(exps, word): QRat}.  Solved by linear algebra in the Serre
    quotient; compact words may be linearly dependent there, and then one
    valid combination is returned.
    """
    n = elem.n
    if not elem.terms:
        return {}
    conts = {content(w) for w in elem.terms}
    if len(conts) != 1:
        raise DegreeMismatch("element is not weight-homogeneous")
    cont = dict(next(iter(conts)))
    d = sum(cont.values())
    space = serre_algebra(n).space(d)
    candidates, labels = [], []
    for exps, used in _pbw_with_content(n, cont):
        rest = Counter(cont)
        rest.subtract(used)
        rest = tuple(sorted((a, k) for a, k in rest.items() if k))
        head = pbw_to_free(n, exps, side)
        for word in _words_with_content(rest):
            candidates.append(space.reduce(head * FreeElement(n, {word: ONE})))
            labels.append((exps, word))
    from .linalg import solve_combination
    sol = solve_combination(candidates, space.reduce(elem))
    if sol is None:
        raise NotInSpan("element is not in the parabolic span")
    return {labels[k]: c for k, c in sol.items() if not c.is_zero()}
