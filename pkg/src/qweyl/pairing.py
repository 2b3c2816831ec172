"""Diagonal bilinear forms between the plus and minus quadratic algebras.

(Z^a, W^b)_X = delta_{ab} c^|a| prod_p [a_p]_X!, where the bracket flavor is
[[.]] for J, [.] for L and {{.}} for K, and c = -1/(q - q^-1) for the raw
forms or 1 for the normalized ones.
"""

from dataclasses import dataclass
from functools import lru_cache

from .qcoeff import ONE, ZERO, QIntFlavor, gamma, qfactorial, qpow
from .qmatrixalg import MINUS, PLUS
from .opmatrix import OperatorMatrix
from .weylq import FLAVOR_H, WeylElement, grade_op, lower_op, raise_op, weyl_multiply

FORMS = ("J", "K", "L")
_FLAVOR = {"J": QIntFlavor.BRACKET_J, "K": QIntFlavor.BRACKET_K, "L": QIntFlavor.BRACKET_L}

# H-exponent of the transpose of raising: M^T = H^g D under the normalized form
TRANSPOSE_GRADING = {"J": FLAVOR_H[QIntFlavor.BRACKET_J], "K": FLAVOR_H[QIntFlavor.BRACKET_K],
                     "L": FLAVOR_H[QIntFlavor.BRACKET_L]}

RAW_PREFACTOR = -gamma.inverse()


@dataclass(frozen=True)
class PairingForm:
    kind: str = "J"
    normalized: bool = True

    def __post_init__(self):
        if self.kind not in FORMS:
            raise ValueError("form must be one of J, K, L; got %r" % (self.kind,))

    @property
    def flavor(self):
        return _FLAVOR[self.kind]

    @property
    def prefactor(self):
        return ONE if self.normalized else RAW_PREFACTOR


def as_form(form):
    if isinstance(form, PairingForm):
        return form
    return PairingForm(str(form).upper())


@lru_cache(maxsize=None)
def gram(exps, form):
    """(Z^exps, W^exps) under the given form."""
    form = as_form(form)
    c = form.prefactor ** sum(exps)
    for a in exps:
        if a > 1:
            c = c * qfactorial(a, form.flavor)
    return c


def pair(z, w, form):
    """Bilinear pairing of a plus-side and a minus-side AlgElement."""
    form = as_form(form)
    if z.side != PLUS or w.side != MINUS:
        raise ValueError("pair expects (plus element, minus element)")
    if z.n != w.n:
        raise ValueError("rank mismatch")
    small, big = (z.terms, w.terms) if len(z.terms) <= len(w.terms) else (w.terms, z.terms)
    out = ZERO
    for e, c in small.items():
        c2 = big.get(e)
        if c2 is not None:
            out = out + c * c2 * gram(e, form)
    return out


def transpose(T, form, gram_fn=None):
    """The adjoint of T w.r.t. a diagonal pairing: (T^ v, u) = (v, T u).

    T maps source labels to target labels on one side; the result maps the
    target labels to the source labels on the other side.  gram_fn(label)
    gives the diagonal Gram value; it defaults to the algebra form.
    """
    form = as_form(form)
    g = gram_fn or (lambda e: gram(e, form))
    cols = {}
    for a, col in T.cols.items():
        ga = g(a)
        for c, v in col.items():
            cols.setdefault(c, {})[a] = v * g(c) / ga
    return OperatorMatrix(T.target, T.source, cols)


def transpose_of_raising(n, i, j, form):
    """H_ij^g D_ij, the adjoint of bare raising at (i, j) under the normalized form."""
    form = as_form(form)
    return grade_op(n, i, j, TRANSPOSE_GRADING[form.kind]) * lower_op(n, i, j)


def weyl_transpose(x, form):
    """The adjoint of a Weyl element as a Weyl element (normalized form).

    Transposition reverses products, fixes H, sends M to H^g D and D to M H^-g.
    """
    form = as_form(form)
    g = TRANSPOSE_GRADING[form.kind]
    n = x.n
    out = WeylElement.zero(n)
    for k, c in x.terms.items():
        term = WeylElement.one(n).scale(c)
        for p, (m, d, h) in enumerate(k):
            i, j = p % n + 1, p // n + 1
            # (M^m D^d H^h)^T = H^h (D^T)^d (M^T)^m
            factor = grade_op(n, i, j, h) if h else WeylElement.one(n)
            dt = raise_op(n, i, j) * grade_op(n, i, j, -g)
            mt = grade_op(n, i, j, g) * lower_op(n, i, j)
            for _ in range(d):
                factor = factor * dt
            for _ in range(m):
                factor = factor * mt
            term = weyl_multiply(term, factor)
        out = out + term
    return out


def fit_kappa(raw, normalized):
    """The single scalar k with raw == k * normalized, or None."""
    k = None
    for s, col in normalized.cols.items():
        for r, v in col.items():
            k = raw.entry(r, s) / v
            break
        if k is not None:
            break
    if k is None or raw != normalized.scale(k):
        return None
    return k


# -- change of basis -----------------------------------------------------------

def rescale_a(exps, power=1):
    """Eigenvalue of A^power on W^exps: prod_p q^(-power a_p (a_p - 1) / 2)."""
    return qpow(-power * sum(a * (a - 1) // 2 for a in exps))


def rescale_b(exps, power=1):
    """Eigenvalue of B^power on W^exps: (-(q - q^-1))^(power |exps|)."""
    return (-gamma) ** (power * sum(exps))


def change_of_basis(which, basis, power=1):
    """Diagonal matrix of A^power or B^power on a list of exponent labels.

    Labels may also be (exps, extra) pairs; only the exponent part is read.
    """
    fn = {"A": rescale_a, "B": rescale_b}[which]
    return OperatorMatrix.diagonal(basis, lambda e: fn(_exps(e), power))


def _exps(label):
    return label[0] if isinstance(label[0], tuple) else label


# -- module level ----------------------------------------------------------------

def module_pair(x, y, form, dual_pairing=None):
    """(u- v, u+ v')_X = (u-, u+)_X (v', v) on sparse {(exps, index): QRat} vectors.

    x lives on the minus side, y on the plus side; dual_pairing(k, l) gives
    (v'_l, v_k) and defaults to the dual-basis delta.
    """
    form = as_form(form)
    dual = dual_pairing or (lambda k, l: ONE if k == l else ZERO)
    out = ZERO
    for (e, k), c in x.items():
        for (f, l), c2 in y.items():
            if e != f:
                continue
            d = dual(k, l)
            if not d.is_zero():
                out = out + c * c2 * gram(e, form) * d
    return out


def module_gram(form):
    """Gram function on (exps, index) labels for the dual-basis module pairing."""
    form = as_form(form)
    return lambda label: gram(label[0], form)
