"""The quantized Weyl algebra on n*n commuting nodes.

Each node carries a raising operator M, a lowering operator D and an
invertible grading operator H with

    D M - q M D = H^-1,   H M = q M H,   H D = q^-1 D H.

Elements are kept in the per-node normal form M^m D^d H^h with min(m, d) = 0;
the two commutation rules together give M D = (H - H^-1) / (q - q^-1), so
these monomials form a basis.  Acting on the
quadratic algebras, M raises the exponent at its node, D lowers it with a
factor [a], and H multiplies by q^a.
"""

from functools import lru_cache
from itertools import product

from .qcoeff import ONE, QIntFlavor, as_qrat, gamma, qint, qpow
from .qmatrixalg import AlgElement, basis_of_degree, pos
from .opmatrix import OperatorMatrix

_IDLE = (0, 0, 0)

# exponent of H in the flavored lowering operator: J -> H D, L -> D, K -> H^-1 D
FLAVOR_H = {QIntFlavor.BRACKET_J: 1, QIntFlavor.BRACKET_L: 0, QIntFlavor.BRACKET_K: -1}


def _add_into(acc, k, c):
    s = acc.get(k)
    s = c if s is None else s + c
    if s.is_zero():
        acc.pop(k, None)
    else:
        acc[k] = s


@lru_cache(maxsize=None)
def _lower_past_raise(d, m, d2, h):
    """D^d M^m D^d2 H^h at one node, as a tuple of ((m', d', h'), QRat)."""
    if d == 0 or m == 0:
        return (((m, d + d2, h), ONE),)
    # D M^m = q^m M^m D + [m] M^(m-1) H^-1, and H^-1 D^d2 = q^d2 D^d2 H^-1
    acc = {}
    for k, c in _lower_past_raise(d - 1, m, d2 + 1, h):
        _add_into(acc, k, qpow(m) * c)
    for k, c in _lower_past_raise(d - 1, m - 1, d2, h - 1):
        _add_into(acc, k, qint(m) * qpow(d2) * c)
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=None)
def _reduce_node(m, d, h):
    """M^m D^d H^h with min(m, d) = 0, using M D = (H - H^-1) / (q - q^-1)."""
    if m == 0 or d == 0:
        return (((m, d, h), ONE),)
    ginv = gamma.inverse()
    acc = {}
    for k, c in _reduce_node(m - 1, d - 1, h + 1):
        _add_into(acc, k, ginv * qpow(1 - d) * c)
    for k, c in _reduce_node(m - 1, d - 1, h - 1):
        _add_into(acc, k, -ginv * qpow(d - 1) * c)
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=None)
def node_product(a, b):
    """Normal form of (M^m1 D^d1 H^h1)(M^m2 D^d2 H^h2) at a single node."""
    m1, d1, h1 = a
    m2, d2, h2 = b
    pref = qpow(h1 * (m2 - d2))
    acc = {}
    for (mm, dd, hh), c in _lower_past_raise(d1, m2, d2, h1 + h2):
        for k, c2 in _reduce_node(m1 + mm, dd, hh):
            _add_into(acc, k, pref * c * c2)
    return tuple(sorted(acc.items()))


class WeylElement:
    """Finite sum of node-wise normal monomials with QRat coefficients.

    A monomial is a tuple of (m, d, h) triples, one per node in column-major
    order.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        for k, c in (terms or {}).items():
            if len(k) != n * n:
                raise ValueError("monomial has wrong number of nodes")
            c = as_qrat(c)
            if not c.is_zero():
                self.terms[tuple(k)] = c

    @classmethod
    def _raw(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n, obj.terms = n, terms
        return obj

    @classmethod
    def one(cls, n):
        return cls._raw(n, {(_IDLE,) * (n * n): ONE})

    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def node_monomial(cls, n, i, j, m=0, d=0, h=0, coeff=ONE):
        """coeff * M^m D^d H^h at node (i, j), brought to normal form."""
        p = pos(n, i, j)
        terms = {}
        for t, c in _reduce_node(m, d, h):
            k = [_IDLE] * (n * n)
            k[p] = t
            terms[tuple(k)] = as_qrat(coeff) * c
        return cls(n, terms)

    @classmethod
    def from_grading(cls, n, exps, coeff=ONE):
        """The H-monomial with the given column-major exponent tuple."""
        return cls(n, {tuple((0, 0, e) for e in exps): coeff})

    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return WeylElement._raw(self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        c = as_qrat(c)
        if c.is_zero():
            return WeylElement.zero(self.n)
        return WeylElement._raw(self.n, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return weyl_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are only defined for H-monomials")
        out = WeylElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def _lift(self, other):
        if isinstance(other, WeylElement):
            if other.n != self.n:
                raise ValueError("mixing Weyl algebras of different rank")
            return other
        return WeylElement.one(self.n).scale(other)

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def monomials(self):
        return sorted(self.terms)

    def is_grading_monomial(self):
        """True for c * (H-monomial)."""
        return len(self.terms) == 1 and all(m == 0 and d == 0
                                            for (m, d, _) in next(iter(self.terms)))

    def grading_exponents(self):
        if not self.is_grading_monomial():
            raise ValueError("not an H-monomial")
        return tuple(h for (_, _, h) in next(iter(self.terms)))

    def inverse_grading(self):
        """Inverse of c * H^e."""
        (k, c), = self.terms.items()
        if not self.is_grading_monomial():
            raise ValueError("only H-monomials are invertible here")
        return WeylElement._raw(self.n, {tuple((0, 0, -h) for (_, _, h) in k): c.inverse()})

    def __repr__(self):
        return "WeylElement(%s)" % to_string(self)


def weyl_multiply(x, y):
    """Normal form of x*y."""
    if x.n != y.n:
        raise ValueError("mixing Weyl algebras of different rank")
    acc = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            parts = []
            for a, b in zip(k1, k2):
                if a == _IDLE:
                    parts.append((((b), ONE),))
                elif b == _IDLE:
                    parts.append((((a), ONE),))
                else:
                    parts.append(node_product(a, b))
            for combo in product(*parts):
                c = c1 * c2
                for _, cc in combo:
                    if not cc.is_one():
                        c = c * cc
                _add_into(acc, tuple(k for k, _ in combo), c)
    return WeylElement._raw(x.n, acc)


# -- named elements ---------------------------------------------------------

def raise_op(n, i, j):
    return WeylElement.node_monomial(n, i, j, m=1)


def lower_op(n, i, j):
    return WeylElement.node_monomial(n, i, j, d=1)


def grade_op(n, i, j, power=1):
    return WeylElement.node_monomial(n, i, j, h=power)


def derivative_flavor(n, i, j, flavor):
    """The lowering operator whose action produces the flavor's q-integer.

    J gives H D ([[a]]), L gives D ([a]), K gives H^-1 D ({{a}}).
    """
    flavor = QIntFlavor.parse(flavor)
    return grade_op(n, i, j, FLAVOR_H[flavor]) * lower_op(n, i, j)


def weight_shift(x):
    """For an element whose monomials all shift exponents alike, that shift."""
    shifts = {tuple(m - d for (m, d, _) in k) for k in x.terms}
    if len(shifts) != 1:
        raise ValueError("element is not homogeneous")
    return shifts.pop()


def conjugation_exponent(phi, k):
    """k' with phi O phi^-1 = q^k' O for the monomial O with key k."""
    return sum(e * (m - d) for e, (m, d, _) in zip(phi, k))


# -- action on the quadratic algebras ---------------------------------------

@lru_cache(maxsize=None)
def _monomial_action(k, exps):
    """(new exps, QRat) for the Weyl monomial k applied to Z^exps, or None."""
    coeff = ONE
    out = list(exps)
    for p, (m, d, h) in enumerate(k):
        if (m, d, h) == _IDLE:
            continue
        a = out[p]
        if h:
            coeff = coeff * qpow(h * a)
        if d:
            if d > a:
                return None
            for s in range(a - d + 1, a + 1):
                coeff = coeff * qint(s)
            a -= d
        out[p] = a + m
    return tuple(out), coeff


def act_on_vector(x, vec):
    """Apply x to a sparse {exps: QRat} vector."""
    acc = {}
    for e, c in vec.items():
        for k, cx in x.terms.items():
            r = _monomial_action(k, e)
            if r is not None:
                _add_into(acc, r[0], c * cx * r[1])
    return acc


def act(x, v):
    """The action of x on an element of either quadratic algebra."""
    if x.n != v.n:
        raise ValueError("rank mismatch")
    return AlgElement(v.n, v.side, act_on_vector(x, v.terms))


def degree_shift(x):
    """Set of total-degree changes of the monomials of x."""
    return {sum(m - d for (m, d, _) in k) for k in x.terms}


def window_basis(n, d_lo, d_hi):
    out = []
    for d in range(d_lo, d_hi + 1):
        out.extend(basis_of_degree(n, d))
    return tuple(out)


def operator_matrix(x, n, d_lo, d_hi, target=None):
    """Matrix of x from the degree window [d_lo, d_hi] into its image window.

    The target defaults to all degrees x can reach from the source window.
    """
    if x.n != n:
        raise ValueError("rank mismatch")
    source = window_basis(n, d_lo, d_hi)
    if target is None:
        shifts = degree_shift(x) or {0}
        lo = max(0, d_lo + min(shifts))
        hi = d_hi + max(shifts)
        target = window_basis(n, lo, max(lo, hi))
    return OperatorMatrix.from_function(source, target,
                                        lambda e: act_on_vector(x, {e: ONE}))


# -- H-monomial toolkit ------------------------------------------------------

# exponent of the node's own H in the dressing V_ij, per form
FORM_BIAS = {"J": 0, "K": -2, "L": -1}


def _grading(n, cells):
    e = [0] * (n * n)
    for (i, j), k in cells:
        e[pos(n, i, j)] += k
    return tuple(e)


def _mul_gradings(*gs):
    return tuple(sum(t) for t in zip(*gs))


def northwest(n, i, j):
    """Product of H over the nodes above (i,j) in its column and left of it in its row."""
    return _grading(n, [((k, j), 1) for k in range(1, i)] + [((i, s), 1) for s in range(1, j)])


def southeast(n, i, j):
    """Product of H over the nodes below (i,j) in its column and right of it in its row."""
    return _grading(n, [((k, j), 1) for k in range(i + 1, n + 1)]
                    + [((i, s), 1) for s in range(j + 1, n + 1)])


def dressing(n, i, j, form):
    """northwest * southeast * H_ij^bias, with bias 0 (J), -2 (K), -1 (L)."""
    return _mul_gradings(northwest(n, i, j), southeast(n, i, j),
                         _grading(n, [((i, j), FORM_BIAS[form])]))


@lru_cache(maxsize=None)
def nested_dressing(n, i, j, form):
    """dressing(i,j) times the nested dressings of the nodes above and to the right."""
    out = dressing(n, i, j, form)
    for a in range(1, i):
        out = _mul_gradings(out, nested_dressing(n, a, j, form))
    for b in range(j + 1, n + 1):
        out = _mul_gradings(out, nested_dressing(n, i, b, form))
    return out


@lru_cache(maxsize=None)
def square_dressing(n, i, j):
    """The squared dressing family of the J case, by its defining recursion.

    Y_ij = (southeast_ij * prod_{a>i} Y_aj)^2; on the last row this is
    southeast_nj squared.
    """
    out = southeast(n, i, j)
    for a in range(i + 1, n + 1):
        out = _mul_gradings(out, square_dressing(n, a, j))
    return tuple(2 * e for e in out)


def square_dressing_closed(n, i, j):
    """The published closed form of the square_dressing family; it agrees with the recursion for n <= 2."""
    cells = []
    if i == n:
        return _grading(n, [((n, y), 2) for y in range(j + 1, n + 1)])
    for x in range(2, n - i + 1):
        cells.append(((i + x, j), 2 * 3 ** (x - 2)))
    cells.append(((i + 1, j), 2))
    for y in range(j + 1, n + 1):
        cells.append(((i, y), 2))
        for x in range(1, n - i + 1):
            cells.append(((i + x, y), 4 * 3 ** (x - 1)))
    return _grading(n, cells)


def h_toolkit(n, form):
    """All named H-monomials for the given form, keyed by (name, i, j)."""
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            out[("northwest", i, j)] = northwest(n, i, j)
            out[("southeast", i, j)] = southeast(n, i, j)
            out[("dressing", i, j)] = dressing(n, i, j, form)
            out[("nested", i, j)] = nested_dressing(n, i, j, form)
            if form == "J":
                out[("square", i, j)] = square_dressing(n, i, j)
    return out


def grading_element(n, exps, coeff=ONE):
    return WeylElement.from_grading(n, exps, coeff)


# -- printing ----------------------------------------------------------------

def monomial_string(n, k):
    parts = []
    for p, (m, d, h) in enumerate(k):
        i, j = p % n + 1, p // n + 1
        for sym, e in (("M", m), ("D", d), ("H", h)):
            if e == 1:
                parts.append("%s%d%d" % (sym, i, j))
            elif e:
                parts.append("%s%d%d^%d" % (sym, i, j, e))
    return "*".join(parts) or "1"


def to_string(x):
    if not x.terms:
        return "0"
    return " + ".join("(%s)*%s" % (c, monomial_string(x.n, k))
                      for k, c in sorted(x.terms.items()))
