"""Actions of the Levi part on the quadratic algebras, and the generalized Verma module.

Elements of U^- (resp. U^+) are written in the parabolic form
sum c * X^a * (word in compact letters), X = W (resp. Z).  The rules for a
compact letter times a generator, and for the twisted derivations r, r' on a
generator, are solved once in the Serre quotient; everything else follows by
pushing letters through PBW words and by the Leibniz rules of r and r'.

A right tail records what is left of a generator of U_q after moving it to
the right end: a tuple of (kind, letter, power) with kind in "F", "E", "K".
"""

from collections import Counter
from functools import lru_cache

from .opmatrix import OperatorMatrix
from .qcoeff import ONE, ZERO, gamma, qint, qpow, t
from .qmatrixalg import (MINUS, PLUS, AlgElement, check_side, gen_times_monomial,
                         monomial_times_monomial, node, pos)
from .uqserre import (FreeElement, express_parabolic, letter_beta,
                      letter_mu, letter_nu, r_free, root_pairing, w_generator, z_generator)
from .weylq import WeylElement, grade_op, lower_op, operator_matrix, raise_op, window_basis


class UnsupportedRank(ValueError):
    """Matrix-valued highest weights are only built for n <= 2."""


GINV = gamma.inverse()


def _generator(side, n, i, j):
    return z_generator(i, j, n) if side == PLUS else w_generator(i, j, n)


@lru_cache(maxsize=None)
def _gen_content(n, p):
    i, j = node(n, p)
    return Counter(next(iter(z_generator(i, j, n).terms)))


@lru_cache(maxsize=None)
def content_pairing(n, a, exps):
    """(alpha_a, positive letter content of the PBW monomial exps)."""
    out = 0
    for p, e in enumerate(exps):
        if e:
            out += e * sum(k * root_pairing(n, a, x) for x, k in _gen_content(n, p).items())
    return out


def word_pairing(n, a, word):
    return sum(root_pairing(n, a, x) for x in word)


def weight_pairing(n, a, exps, side, word=()):
    """(alpha_a, weight of X^exps * word) with the sign of the side."""
    s = content_pairing(n, a, exps) + word_pairing(n, a, word)
    return s if side == PLUS else -s


# -- generator-level data from the Serre quotient ------------------------------

@lru_cache(maxsize=None)
def generator_r(n, side, a, primed, p):
    """r_a or r'_a of the generator at position p, in parabolic form."""
    i, j = node(n, p)
    return _freeze(express_parabolic(r_free(_generator(side, n, i, j), a, primed, side), side))


@lru_cache(maxsize=None)
def letter_times_generator(n, side, c, p):
    """Compact letter c times the generator at position p, in parabolic form."""
    i, j = node(n, p)
    return _freeze(express_parabolic(FreeElement.letter(n, c) * _generator(side, n, i, j), side))


def _freeze(d):
    return tuple(sorted(d.items()))


# -- parabolic arithmetic -------------------------------------------------------

def _add(acc, key, c):
    s = acc.get(key)
    s = c if s is None else s + c
    if s.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = s


@lru_cache(maxsize=None)
def push_letter(n, side, c, exps):
    """c * X^exps in parabolic form, as a frozen tuple of ((exps, word), QRat)."""
    first = next((p for p, e in enumerate(exps) if e), None)
    if first is None:
        return ((((0,) * (n * n), (c,)), ONE),)
    rest = list(exps)
    rest[first] -= 1
    rest = tuple(rest)
    acc = {}
    for (m, f), coeff in letter_times_generator(n, side, c, first):
        # X^m f X^rest
        for (m2, f2), c2 in push_word(n, side, f, rest):
            for m3, c3 in monomial_times_monomial(n, m, m2):
                _add(acc, (m3, f2), coeff * c2 * c3)
    return _freeze(acc)


@lru_cache(maxsize=None)
def push_word(n, side, word, exps):
    """word * X^exps in parabolic form."""
    cur = {(exps, ()): ONE}
    for c in reversed(word):
        nxt = {}
        for (m, f), coeff in cur.items():
            for (m2, f2), c2 in push_letter(n, side, c, m):
                _add(nxt, (m2, f2 + f), coeff * c2)
        cur = nxt
    return _freeze(cur)


def parabolic_multiply(n, side, x, y):
    """Product of two parabolic-form dicts."""
    acc = {}
    for (a, f), c1 in x.items():
        for (b, g), c2 in y.items():
            for (m, f2), c3 in push_word(n, side, f, b):
                for m2, c4 in monomial_times_monomial(n, a, m):
                    _add(acc, (m2, f2 + g), c1 * c2 * c3 * c4)
    return acc


@lru_cache(maxsize=None)
def r_monomial(n, side, a, primed, exps):
    """r_a / r'_a of the PBW monomial X^exps, by the twisted Leibniz rule."""
    first = next((p for p, e in enumerate(exps) if e), None)
    if first is None:
        return ()
    rest = list(exps)
    rest[first] -= 1
    rest = tuple(rest)
    unit = [0] * (n * n)
    unit[first] = 1
    unit = tuple(unit)
    weigh_left = (side != PLUS) != primed
    acc = {}
    # r(g * rest) = r(g) rest * q^{(a, rest)}?  + q^{(a, g)}? g r(rest)
    e_rest = 0 if weigh_left else content_pairing(n, a, rest)
    e_head = content_pairing(n, a, unit) if weigh_left else 0
    for key, c in parabolic_multiply(n, side, dict(generator_r(n, side, a, primed, first)),
                                     {(rest, ()): ONE}).items():
        _add(acc, key, qpow(e_rest) * c)
    tail = dict(r_monomial(n, side, a, primed, rest))
    if tail:
        for key, c in parabolic_multiply(n, side, {(unit, ()): ONE}, tail).items():
            _add(acc, key, qpow(e_head) * c)
    return _freeze(acc)


def r_parabolic(n, side, a, primed, x):
    """r_a / r'_a of a parabolic-form dict, by the twisted Leibniz rule on X^m * word."""
    weigh_left = (side != PLUS) != primed
    acc = {}
    for (m, f), c in x.items():
        # r(X^m) f, weighted by the word on the right if needed
        e = 0 if weigh_left else word_pairing(n, a, f)
        for (m2, f2), c2 in r_monomial(n, side, a, primed, m):
            for key, c4 in parabolic_multiply(n, side, {(m2, f2): c2}, {((0,) * (n * n), f): ONE}).items():
                _add(acc, key, c * qpow(e) * c4)
        # X^m r(f), weighted by X^m if needed
        if f:
            e = content_pairing(n, a, m) if weigh_left else 0
            for w, c2 in r_free(FreeElement(n, {f: ONE}), a, primed, side).terms.items():
                _add(acc, (m, w), c * qpow(e) * c2)
    return acc


def r_op(a, primed, x):
    """r_a / r'_a of an AlgElement; raises ValueError if compact letters survive.

    Use r_monomial / r_parabolic for the general parabolic form.
    """
    acc = {}
    for e, c in x.terms.items():
        for key, cc in r_monomial(x.n, x.side, a, primed, e):
            _add(acc, key, c * cc)
    return parabolic_to_alg(x.n, x.side, acc)


def parabolic_to_alg(n, side, d):
    """The AlgElement of a parabolic dict with only empty words (else ValueError)."""
    if any(f for (_, f) in d):
        raise ValueError("element has compact-letter tails")
    return AlgElement(n, side, {m: c for (m, _), c in d.items()})


# -- the Levi generators acting on X^a, with right tails ---------------------------

def _tail(kind, a, power=1):
    return (kind, a, power)


def _word_tail(word, kind):
    return tuple(_tail(kind, c) for c in word)


def k_generator_action(n, gen, a, exps, side):
    """gen in {"E", "F", "K", "Kinv"} for letter a acting on X^exps from the left.

    Returns {(exps', tail): QRat}; the empty tail is the A-component.  On the
    minus side E_a is commuted with r-calculus, F_a (compact) is pushed
    through; on the plus side E_a (compact) is pushed, F_a uses the mirrored
    commutator.  K_a is diagonal with the weight.
    """
    check_side(side)
    acc = {}
    if gen in ("K", "Kinv"):
        s = 1 if gen == "K" else -1
        _add(acc, (exps, (_tail("K", a, s),)), qpow(s * weight_pairing(n, a, exps, side)))
        return acc
    word_kind = "F" if side == MINUS else "E"
    if (gen == "F") == (side == MINUS):
        # same-sign letter: pushed through the algebra
        if a == letter_beta(n):
            p = pos(n, 1, 1)
            for m, c in gen_times_monomial(n, p, exps):
                _add(acc, (m, ()), c)
            return acc
        for (m, f), c in push_letter(n, side, a, exps):
            _add(acc, (m, _word_tail(f, word_kind)), c)
        return acc
    # opposite-sign letter: commutator through r-calculus
    other = "E" if side == MINUS else "F"
    _add(acc, (exps, (_tail(other, a),)), ONE)
    r = r_monomial(n, side, a, False, exps)
    rp = r_monomial(n, side, a, True, exps)
    if side == MINUS:
        # E y = y E + g^-1 (K r(y) - r'(y) K^-1)
        for (m, f), c in r:
            w = weight_pairing(n, a, m, side, f)
            _add(acc, (m, _word_tail(f, word_kind) + (_tail("K", a, 1),)), GINV * qpow(w) * c)
        for (m, f), c in rp:
            _add(acc, (m, _word_tail(f, word_kind) + (_tail("K", a, -1),)), -GINV * c)
    else:
        # F x = x F - g^-1 (r(x) K - K^-1 r'(x))
        for (m, f), c in r:
            _add(acc, (m, _word_tail(f, word_kind) + (_tail("K", a, 1),)), -GINV * c)
        for (m, f), c in rp:
            w = weight_pairing(n, a, m, side, f)
            _add(acc, (m, _word_tail(f, word_kind) + (_tail("K", a, -1),)), GINV * qpow(-w) * c)
    return acc


def split_by_tail(action):
    """{tail: {exps: QRat}} from a k_generator_action result."""
    out = {}
    for (m, tail), c in action.items():
        out.setdefault(tail, {})[m] = c
    return out


def tail_matrix(n, gen, a, side, d_lo, d_hi, tail):
    """Matrix (on a degree window) of the component of the action with the given tail."""
    src = window_basis(n, d_lo, d_hi)
    tgt = window_basis(n, max(0, d_lo - 1), d_hi + 1)
    return OperatorMatrix.from_function(
        src, tgt, lambda e: split_by_tail(k_generator_action(n, gen, a, e, side)).get(tail, {}))


# -- the operator expressions of the Levi action -------------------------------------

def _hprod(n, cells):
    out = WeylElement.one(n)
    for (i, j), k in cells:
        out = out * grade_op(n, i, j, k)
    return out


def k_operator_formulas(n, k):
    """Weyl-element forms of the mu_k actions, keyed by (side, gen, tail-name).

    tail-name is "A" for the tail-free component, "K", "Kinv", "E", "F" for
    the component followed by that right factor.
    """
    out = {}
    rng = range(1, n + 1)
    e_minus = WeylElement.zero(n)
    f_minus = WeylElement.zero(n)
    e_plus = WeylElement.zero(n)
    f_plus = WeylElement.zero(n)
    for j in rng:
        e_minus = e_minus + (raise_op(n, k, j) * lower_op(n, k + 1, j) * _hprod(
            n, [((k, s), 1) for s in range(j + 1, n + 1)] + [((k + 1, s), -1) for s in range(j + 1, n + 1)])
        ).scale(-qpow(1))
        f_minus = f_minus + (raise_op(n, k + 1, j) * lower_op(n, k, j) * _hprod(
            n, [((k + 1, s), 1) for s in range(1, j)] + [((k, s), -1) for s in range(1, j)])
        ).scale(-qpow(-1))
        e_plus = e_plus + lower_op(n, k, j) * raise_op(n, k + 1, j) * _hprod(
            n, [((k, s), -1) for s in range(1, j)] + [((k + 1, s), 1) for s in range(1, j)])
        f_plus = f_plus + lower_op(n, k + 1, j) * raise_op(n, k, j) * _hprod(
            n, [((k + 1, s), -1) for s in range(j + 1, n + 1)] + [((k, s), 1) for s in range(j + 1, n + 1)])
    k_minus = _hprod(n, [((k, j), 1) for j in rng] + [((k + 1, j), -1) for j in rng])
    k_plus = _hprod(n, [((k + 1, j), 1) for j in rng] + [((k, j), -1) for j in rng])
    out[(MINUS, "E", "K")] = e_minus
    out[(MINUS, "E", "E")] = WeylElement.one(n)
    out[(MINUS, "F", "A")] = f_minus
    out[(MINUS, "F", "F")] = k_plus
    out[(PLUS, "E", "A")] = e_plus
    out[(PLUS, "E", "E")] = k_plus
    out[(PLUS, "F", "Kinv")] = f_plus
    out[(PLUS, "F", "F")] = WeylElement.one(n)
    out[(MINUS, "K", "K")] = k_minus
    out[(PLUS, "K", "K")] = k_plus
    # S-twisted forms: -K^-1 E (minus side) and q F (-K) (minus side)
    out[(MINUS, "SE", "A")] = WeylElement.zero(n)
    out[(MINUS, "SF", "A")] = WeylElement.zero(n)
    for j in rng:
        out[(MINUS, "SE", "A")] = out[(MINUS, "SE", "A")] + (
            grade_op(n, k, j, -1) * raise_op(n, k, j) * grade_op(n, k + 1, j) * lower_op(n, k + 1, j)
            * _hprod(n, [((k + 1, s), 1) for s in range(1, j)] + [((k, s), -1) for s in range(1, j)])
        ).scale(qpow(1))
        out[(MINUS, "SF", "A")] = out[(MINUS, "SF", "A")] + (
            raise_op(n, k + 1, j) * grade_op(n, k + 1, j, -1) * lower_op(n, k, j) * grade_op(n, k, j)
            * _hprod(n, [((k + 1, s), -1) for s in range(j + 1, n + 1)] + [((k, s), 1) for s in range(j + 1, n + 1)]))
    return out


def transpose_nodes(x):
    """Swap the roles of rows and columns: node (i, j) -> (j, i)."""
    n = x.n
    perm = [pos(n, j, i) for (i, j) in (node(n, p) for p in range(n * n))]
    out = {}
    for k, c in x.terms.items():
        new = [None] * (n * n)
        for p, trip in enumerate(k):
            new[perm[p]] = trip
        out[tuple(new)] = c
    return WeylElement(n, out)


def _tail_name(tail):
    if not tail:
        return "A"
    if len(tail) != 1:
        return None
    kind, _, power = tail[0]
    return "Kinv" if (kind == "K" and power == -1) else kind


def _s_twisted(n, gen, a, exps):
    """-K_a^-1 E_a or q F_a (-K_a) on W^exps, tail-free components only."""
    acc = {}
    if gen == "SE":
        for (m, tail), c in k_generator_action(n, "E", a, exps, MINUS).items():
            if tail == (("K", a, 1),):
                # -K^-1 (y K) = -q^{-(a, wt y)} y
                _add(acc, m, -qpow(-weight_pairing(n, a, m, MINUS)) * c)
        return acc
    # q F (-K) y = -q q^{(a, wt y)} F y
    s = -qpow(1 + weight_pairing(n, a, exps, MINUS))
    for (m, tail), c in k_generator_action(n, "F", a, exps, MINUS).items():
        if not tail:
            _add(acc, m, s * c)
    return acc


def verify_levi_formulas(n, d, roots=("mu", "nu")):
    """Compare the r-calculus actions with the Weyl-element formulas.

    Returns a list of check dicts {name, status, detail}.  The nu-roots use
    the row/column mirror of the mu formulas.
    """
    checks = []
    for family in roots:
        for k in range(1, n):
            a = letter_mu(n, k) if family == "mu" else letter_nu(n, k)
            forms = k_operator_formulas(n, k)
            if family == "nu":
                forms = {key: transpose_nodes(x) for key, x in forms.items()}
            for (side, gen, tname), expr in sorted(forms.items()):
                name = "%s_%d %s%s tail=%s" % (family, k, gen, side, tname)
                src = window_basis(n, 0, d)
                if gen in ("SE", "SF"):
                    got = OperatorMatrix.from_function(src, window_basis(n, 0, d), lambda e: _s_twisted(n, gen, a, e))
                else:
                    got = OperatorMatrix.from_function(
                        src, window_basis(n, 0, d),
                        lambda e: {m: c for (m, tail), c in k_generator_action(n, gen, a, e, side).items()
                                   if _tail_name(tail) == tname and sum(m) <= d})
                want = operator_matrix(expr, n, 0, d, target=got.target)
                want = want.restrict(target=got.target)
                diff = got.differences(want)
                checks.append({"name": name, "status": "pass" if not diff else "fail",
                               "detail": "" if not diff else "entry %r <- %r: %s vs %s" % (
                                   diff[0][0], diff[0][1], diff[0][2].to_string(), diff[0][3].to_string())})
            # every tail must be one of the named ones
            stray = set()
            for side in (MINUS, PLUS):
                for gen in ("E", "F"):
                    for e in window_basis(n, 0, d):
                        for (_, tail) in k_generator_action(n, gen, a, e, side):
                            if (side, gen, _tail_name(tail)) not in forms:
                                stray.add((side, gen, tail))
            checks.append({"name": "%s_%d tails" % (family, k),
                           "status": "pass" if not stray else "fail",
                           "detail": "" if not stray else "unexpected tails %r" % sorted(stray)[:3]})
    return checks


# -- finite-dimensional Levi modules ------------------------------------------------

class LeviModule:
    """A finite module of the Levi part with a K_beta eigenvalue carried by t.

    Labels are tuples (k, l) of lowering counts along mu_1 and nu_1 for
    n = 2, or () for scalar modules.  Each operator is a dict
    label -> {label: QRat}.
    """

    def __init__(self, n, lam_mu=0, lam_nu=0, lam=None):
        if (lam_mu or lam_nu) and n != 2:
            raise UnsupportedRank("matrix-valued highest weights need n = 2")
        if lam_mu < 0 or lam_nu < 0:
            raise ValueError("compact labels must be nonnegative integers")
        self.n = n
        self.lam_mu, self.lam_nu = lam_mu, lam_nu
        self.lam = lam
        self.t_value = t if lam is None else qpow(lam)
        if n == 2:
            self.labels = tuple((k, l) for k in range(lam_mu + 1) for l in range(lam_nu + 1))
        else:
            self.labels = ((),)
        self.scalar = len(self.labels) == 1

    @property
    def beta(self):
        return letter_beta(self.n)

    def _factor(self, a):
        """(slot, highest label) for the sl2 factor of compact letter a, or None."""
        if self.n != 2:
            return None
        if a == letter_mu(2, 1):
            return 0, self.lam_mu
        if a == letter_nu(2, 1):
            return 1, self.lam_nu
        return None

    def apply(self, kind, a, power, label):
        """{label: QRat} for one generator on one basis vector."""
        if kind == "K":
            return {label: self.k_value(a, label) ** power}
        fac = self._factor(a)
        if fac is None:
            if a == self.beta or self.n != 2:
                return {}
            raise ValueError("unknown letter %r" % (a,))
        slot, lam = fac
        k = label[slot]
        new = list(label)
        if kind == "E":
            if k == 0:
                return {}
            new[slot] = k - 1
            return {tuple(new): qint(lam - k + 1)}
        if kind == "F":
            if k == lam:
                return {}
            new[slot] = k + 1
            return {tuple(new): qint(k + 1)}
        raise ValueError("unknown generator kind %r" % (kind,))

    def k_value(self, a, label):
        """Eigenvalue of K_a on a basis vector."""
        if a == self.beta:
            lowered = sum(label) if self.n == 2 else 0
            return self.t_value * qpow(lowered)
        fac = self._factor(a)
        if fac is None:
            return ONE
        slot, lam = fac
        return qpow(lam - 2 * label[slot])

    def apply_tail(self, tail, vec):
        """Apply a tail (product, rightmost first) to {label: QRat}."""
        cur = dict(vec)
        for kind, a, power in reversed(tail):
            nxt = {}
            for lab, c in cur.items():
                for lab2, c2 in self.apply(kind, a, power, lab).items():
                    _add(nxt, lab2, c * c2)
            cur = nxt
        return cur


def build_VLambda(n, lam_mu=0, lam_nu=0, lam=None):
    return LeviModule(n, lam_mu, lam_nu, lam)


def letter_of(n, root):
    """Letter for "beta", ("mu", k) or ("nu", k)."""
    if root == "beta":
        return letter_beta(n)
    family, k = root
    return letter_mu(n, k) if family == "mu" else letter_nu(n, k)


def verma_action(module, gen, a, vec):
    """Left action of gen in {"E", "F", "K", "Kinv"} on a module vector.

    vec is {(exps, label): QRat} on the minus side (the Verma module).
    """
    n = module.n
    acc = {}
    for (e, lab), c in vec.items():
        for (m, tail), c2 in k_generator_action(n, gen, a, e, MINUS).items():
            for lab2, c3 in module.apply_tail(tail, {lab: ONE}).items():
                _add(acc, (m, lab2), c * c2 * c3)
    return acc


def module_basis(module, d_lo, d_hi):
    return tuple((e, lab) for e in window_basis(module.n, d_lo, d_hi) for lab in module.labels)


def verma_matrix(module, gen, a, d_lo, d_hi, target=None):
    """Matrix of the Verma action on the module window [d_lo, d_hi]."""
    src = module_basis(module, d_lo, d_hi)
    if target is None:
        target = module_basis(module, max(0, d_lo - 1), d_hi + 1)
    tset = set(target)
    return OperatorMatrix.from_function(
        src, target, lambda v: {k: c for k, c in verma_action(module, gen, a, {v: ONE}).items() if k in tset})


# -- pairing identities ------------------------------------------------------------------

def _a_part(d):
    return {m: c for (m, f), c in d.items() if not f}


def _left_by_letter(n, a, exps):
    """E_a * Z^exps (plus side), A-component only."""
    if a == letter_beta(n):
        return dict(gen_times_monomial(n, pos(n, 1, 1), exps))
    return _a_part(dict(push_letter(n, PLUS, a, exps)))


def _right_by_beta(n, exps):
    unit = [0] * (n * n)
    unit[pos(n, 1, 1)] = 1
    return dict(monomial_times_monomial(n, exps, tuple(unit)))


def _pair_dicts(minus, plus, gram_fn):
    return sum((c * plus[m] * gram_fn(m) for m, c in minus.items() if m in plus), ZERO)


def adjunction_check(n, a, d, gram_fn):
    """(y, E_a y+) = (F_a, E_a) (r_a(y), y+) over PBW monomials of degree <= d.

    gram_fn is the raw J Gram function on exponent tuples; (F_a, E_a) is its
    degree-one value.  Returns the list of failing (y, y+) pairs.
    """
    fe = gram_fn(tuple(1 if p == 0 else 0 for p in range(n * n)))
    bad = []
    basis = window_basis(n, 0, d)
    for y in basis:
        r = _a_part(dict(r_monomial(n, MINUS, a, False, y)))
        for yp in basis:
            if sum(yp) + (1 if a == letter_beta(n) else 0) != sum(y):
                continue
            lhs = _pair_dicts({y: ONE}, _left_by_letter(n, a, yp), gram_fn)
            rhs = fe * _pair_dicts(r, {yp: ONE}, gram_fn)
            if lhs != rhs:
                bad.append((y, yp))
    return bad


def commutator_pairing_check(n, a, d, gram_fn):
    """(E_a u- - u- E_a, u+) = -(u-, E_a K_a^-1 u+ - u+ K_a E_a) over degree <= d.

    Both sides are reduced to the A-components: tails ending in compact
    letters pair to zero with A^-, and K factors pair trivially where they
    stand (u+ K_a E_a pairs like u+ E_a).
    """
    beta = letter_beta(n)
    bad = []
    basis = window_basis(n, 0, d)
    for u in basis:
        r = _a_part(dict(r_monomial(n, MINUS, a, False, u)))
        rp = _a_part(dict(r_monomial(n, MINUS, a, True, u)))
        for up in basis:
            if sum(up) + (1 if a == beta else 0) != sum(u):
                continue
            lhs = ZERO
            for m, c in r.items():
                lhs = lhs + qpow(weight_pairing(n, a, m, MINUS)) * c * _pair_dicts({m: ONE}, {up: ONE}, gram_fn)
            lhs = lhs - _pair_dicts(rp, {up: ONE}, gram_fn)
            lhs = lhs * GINV
            right = {m: qpow(-weight_pairing(n, a, up, PLUS)) * c for m, c in _left_by_letter(n, a, up).items()}
            if a == beta:
                for m, c in _right_by_beta(n, up).items():
                    right[m] = right.get(m, ZERO) - c
            rhs = -_pair_dicts({u: ONE}, right, gram_fn)
            if lhs != rhs:
                bad.append((u, up))
    return bad


def tail_scan(n, d):
    """Tails of E_beta acting on W^a, degree <= d.

    Returns the set of (compact word content, K_beta power) pairs that occur;
    only K_beta^{+-1} and words of content 0, X_i, Y_j or X_i Y_j are expected.
    """
    beta = letter_beta(n)
    seen = set()
    for e in window_basis(n, 0, d):
        for (_, tail), _c in k_generator_action(n, "E", beta, e, MINUS).items():
            if tail == (("E", beta, 1),):
                continue
            word = tuple(sorted(x[1] for x in tail if x[0] == "F"))
            kpow = sum(x[2] for x in tail if x[0] == "K")
            seen.add((word, kpow))
    return seen


def tail_structure_violations(n, d):
    """Tails of E_beta on W^a that fall outside K_beta^{+-1} times X_i, Y_j, X_i Y_j.

    X_i has letter content mu_1..mu_i, Y_j has nu_1..nu_j; a nonempty
    compact word must come with K_beta^-1.
    """
    allowed = set()
    for i in range(n):
        for j in range(n):
            word = tuple(sorted([letter_mu(n, k) for k in range(1, i + 1)]
                                + [letter_nu(n, k) for k in range(1, j + 1)]))
            allowed.add((word, -1))
    allowed.add(((), 1))
    return sorted(tail_scan(n, d) - allowed)
