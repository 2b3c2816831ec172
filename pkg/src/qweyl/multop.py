"""Left and right multiplication by a generator, and their Weyl-algebra forms.

The rewrite engine is ground truth.  A fitted form expresses the operator as
one Weyl monomial per exponent-shift pattern: a pattern shifting the
exponent vector by delta acts as C q^(h.a) prod_{delta_p<0} [a_p], so C and
the integer vector h are read off from a few probe monomials and then checked
against every basis monomial of the window.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .qcoeff import ONE, gamma, qint, qpow
from .qmatrixalg import (PLUS, AlgElement, check_side,
                         gen_times_monomial, monomial_times_monomial, node, pos)
from .opmatrix import OperatorMatrix
from .weylq import WeylElement, northwest, operator_matrix, southeast, window_basis


class FitError(ValueError):
    """No Weyl element of the claimed shape reproduces the operator."""


class Chirality(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class MultOperator:
    i: int
    j: int
    chirality: Chirality = Chirality.LEFT
    side: str = PLUS

    def __post_init__(self):
        check_side(self.side)
        object.__setattr__(self, "chirality", Chirality(self.chirality))


def _image(op, n, e):
    """Sparse image of the basis monomial e under op."""
    p = pos(n, op.i, op.j)
    if op.chirality is Chirality.LEFT:
        pairs = gen_times_monomial(n, p, e)
    else:
        g = [0] * (n * n)
        g[p] = 1
        pairs = monomial_times_monomial(n, e, tuple(g))
    return dict(pairs)


def mult_matrix(op, n, d, d_hi=None):
    """Matrix of op from degrees [d, d_hi] (default just d) to one degree higher."""
    d_hi = d if d_hi is None else d_hi
    return OperatorMatrix.from_function(window_basis(n, d, d_hi), window_basis(n, d + 1, d_hi + 1),
                                        lambda e: _image(op, n, e))


def apply(op, v):
    """op applied to an AlgElement, via the rewrite engine."""
    acc = {}
    for e, c in v.terms.items():
        for m, cc in _image(op, v.n, e).items():
            s = acc.get(m)
            acc[m] = c * cc if s is None else s + c * cc
    return AlgElement(v.n, v.side, acc)


def _monomial_key(n, delta, h):
    """Weyl key for a shift pattern delta with H exponents h (all entries in {-1,0,1})."""
    return tuple((max(x, 0), max(-x, 0), hh) for x, hh in zip(delta, h))


def leading_term(op, n):
    """The shape-preserving summand: M_ij dressed by northwest (left) or southeast (right)."""
    dress = northwest(n, op.i, op.j) if op.chirality is Chirality.LEFT else southeast(n, op.i, op.j)
    delta = [0] * (n * n)
    delta[pos(n, op.i, op.j)] = 1
    return WeylElement(n, {_monomial_key(n, delta, dress): ONE})


# -- partitions --------------------------------------------------------------

def nw_partitions(i, j):
    """All (a, b) with 1 <= a_1 < ... < a_r < i and 1 <= b_1 < ... < b_r < j, r >= 1."""
    out = []
    for r in range(1, min(i, j)):
        for a in combinations(range(1, i), r):
            for b in combinations(range(1, j), r):
                out.append((a, b))
    return out


def se_partitions(n, i, j):
    """All (a, b) with i < a_1 < ... < a_r <= n and j < b_1 < ... < b_r <= n, r >= 1."""
    out = []
    for r in range(1, n + 1):
        for a in combinations(range(i + 1, n + 1), r):
            for b in combinations(range(j + 1, n + 1), r):
                out.append((a, b))
    return out


def nw_skeleton(n, i, j, a, b):
    """Shift pattern of M_{i,b_1} prod_k D_{a_k,b_{r-k+1}} M_{a_k,b_{r-k+2}} (b_{r+1} = j)."""
    r = len(a)
    bb = (None,) + tuple(b) + (j,)
    delta = [0] * (n * n)
    delta[pos(n, i, bb[1])] += 1
    for k in range(1, r + 1):
        delta[pos(n, a[k - 1], bb[r - k + 1])] -= 1
        delta[pos(n, a[k - 1], bb[r - k + 2])] += 1
    return tuple(delta)


def se_skeleton(n, i, j, a, b):
    """Shift pattern of M_{a_r,j} prod_x D_{a_{r-x},b_{x+1}} M_{a_{r-x-1},b_{x+1}} (a_0 = i)."""
    r = len(a)
    aa = (i,) + tuple(a)
    bb = (j,) + tuple(b)
    delta = [0] * (n * n)
    delta[pos(n, aa[r], bb[0])] += 1
    for x in range(r):
        delta[pos(n, aa[r - x], bb[x + 1])] -= 1
        delta[pos(n, aa[r - x - 1], bb[x + 1])] += 1
    return tuple(delta)


def skeletons(op, n):
    """{shift pattern: partition} for every partition the expansion may use."""
    if op.chirality is Chirality.LEFT:
        return {nw_skeleton(n, op.i, op.j, a, b): (a, b) for a, b in nw_partitions(op.i, op.j)}
    return {se_skeleton(n, op.i, op.j, a, b): (a, b) for a, b in se_partitions(n, op.i, op.j)}


# -- fitting -----------------------------------------------------------------

def _q_exponent(x):
    """k with x == q^k, or None."""
    if not (x.is_laurent_monomial() and x.t_free()):
        return None
    k = x.num.degrees()[0] - x.den.degrees()[0]
    return k if x == qpow(k) else None


def _lowering_factor(delta, e):
    c = ONE
    for x, a in zip(delta, e):
        if x < 0:
            for s in range(a + x + 1, a + 1):
                c = c * qint(s)
    return c


def _observed_patterns(op, n, d_max):
    """{delta: {exps: coefficient}} over all basis monomials of degree <= d_max."""
    obs = {}
    for e in window_basis(n, 0, d_max):
        for m, c in _image(op, n, e).items():
            delta = tuple(x - y for x, y in zip(m, e))
            obs.setdefault(delta, {})[e] = c
    return obs


def _fit_pattern(n, delta, values, d_max):
    base = tuple(max(0, -x) for x in delta)
    if sum(base) > d_max or base not in values:
        raise FitError("pattern %r not observed at its minimal monomial" % (delta,))
    b0 = values[base] / _lowering_factor(delta, base)
    h = []
    for p in range(n * n):
        e = list(base)
        e[p] += 1
        e = tuple(e)
        if sum(e) > d_max:
            raise FitError("window too small to probe node %d" % p)
        ratio = values.get(e)
        if ratio is None:
            raise FitError("pattern %r vanishes at a probe monomial" % (delta,))
        k = _q_exponent(ratio / _lowering_factor(delta, e) / b0)
        if k is None:
            raise FitError("non-monomial dependence on node %d in pattern %r" % (p, delta))
        h.append(k)
    coeff = b0 / qpow(sum(x * y for x, y in zip(h, base)))
    return tuple(h), coeff


def fit_weyl_skeleton(op, n, d_max=None, check_extra=2):
    """The Weyl element reproducing op, one monomial per observed shift pattern.

    Raises FitError if a pattern is neither the leading one nor a partition
    skeleton, if a pattern's coefficient is not of the form C q^(h.a)
    times brackets, or if the fitted element disagrees with the rewrite
    engine on degrees up to d_max + check_extra.
    """
    d_max = n + 1 if d_max is None else d_max
    allowed = skeletons(op, n)
    lead = leading_term(op, n)
    (lead_key,) = lead.terms
    lead_delta = tuple(m - d for (m, d, _) in lead_key)
    terms = {}
    for delta, values in sorted(_observed_patterns(op, n, d_max).items()):
        if delta != lead_delta and delta not in allowed:
            raise FitError("shift pattern %r is not a partition skeleton" % (delta,))
        h, coeff = _fit_pattern(n, delta, values, d_max)
        terms[_monomial_key(n, delta, h)] = coeff
    fitted = WeylElement(n, terms)
    target = mult_matrix(op, n, 0, d_max + check_extra)
    got = operator_matrix(fitted, n, 0, d_max + check_extra, target=target.target)
    if got != target:
        raise FitError("fitted element disagrees with the rewrite engine")
    return fitted


def fit_report(op, n, fitted):
    """Per-term summary: partition, H exponents and coefficient / gamma^r."""
    allowed = skeletons(op, n)
    rows = []
    for k, c in sorted(fitted.terms.items()):
        delta = tuple(m - d for (m, d, _) in k)
        part = allowed.get(delta)
        r = len(part[0]) if part else 0
        rows.append({"partition": part, "r": r, "grading": tuple(h for (_, _, h) in k),
                     "coefficient": c, "over_gamma_r": c / gamma ** r})
    return rows


def check_observations(fitted, op, n):
    """Row/column D-M pairing of every non-leading monomial.

    Returns a list of violation strings (empty on success).  For left
    multiplication each row other than i carrying factors has one D and one
    M with the D further left, and each column other than j has one D and
    one M with the D higher up; for right multiplication the orientations
    are mirrored.  Row i and column j carry a single M and no D.
    """
    (lead_key,) = leading_term(op, n).terms
    lead_delta = tuple(m - d for (m, d, _) in lead_key)
    left = op.chirality is Chirality.LEFT
    bad = []
    for k in fitted.terms:
        delta = tuple(m - d for (m, d, _) in k)
        if delta == lead_delta:
            continue
        ms = [node(n, p) for p, x in enumerate(delta) if x == 1]
        ds = [node(n, p) for p, x in enumerate(delta) if x == -1]
        if any(abs(x) > 1 for x in delta):
            bad.append("%r: exponent shift beyond one" % (delta,))
            continue
        for axis, special in ((0, op.i), (1, op.j)):
            lines = {c[axis] for c in ms + ds}
            for line in sorted(lines):
                m_here = [c for c in ms if c[axis] == line]
                d_here = [c for c in ds if c[axis] == line]
                if line == special:
                    if len(m_here) != 1 or d_here:
                        bad.append("%r: line %d of axis %d must carry one M only" % (delta, line, axis))
                    continue
                if len(m_here) != 1 or len(d_here) != 1:
                    bad.append("%r: line %d of axis %d lacks a D-M pair" % (delta, line, axis))
                    continue
                other = 1 - axis
                d_before = d_here[0][other] < m_here[0][other]
                if d_before != left:
                    bad.append("%r: D-M orientation on line %d of axis %d" % (delta, line, axis))
    return bad


# -- symmetries ---------------------------------------------------------------

def flip_element(x):
    """Apply the index flip (a, b) -> (n+1-a, n+1-b) to every node of x."""
    return WeylElement(x.n, {tuple(reversed(k)): c for k, c in x.terms.items()})


def flip_monomial(e):
    """The anti-automorphism Z_ab -> Z_{n+1-a,n+1-b} on PBW exponent tuples."""
    return tuple(reversed(e))
