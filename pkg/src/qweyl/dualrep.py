"""The dual (holomorphically induced) representation and its explicit operator form.

O_X(u) is the transpose of the Verma action of S(u) under the module pairing
(u- v, u+ v')_X = (u-, u+)_X (v', v), realized on A^+ (x) V'.  The raw forms
are used throughout; K_beta^2 and the X^T, Y^T endomorphisms act on V' as
transposes of the antipode-twisted actions on V.
"""

from dataclasses import dataclass

from .kaction import build_VLambda, content_pairing, module_basis, r_monomial, verma_action
from .opmatrix import OperatorMatrix
from .pairing import PairingForm, change_of_basis, module_gram, transpose
from .qcoeff import ONE, ZERO, PoleError, as_qrat, eval_at, gamma, qpow
from .qmatrixalg import PLUS, gen_times_monomial, monomial_times_monomial, pos
from .uqserre import letter_beta, letter_mu, letter_nu
from .weylq import WeylElement, operator_matrix, window_basis


@dataclass(frozen=True)
class DualRepSpec:
    n: int
    form: str = "J"
    lam_mu: int = 0
    lam_nu: int = 0
    lam: int = None
    d: int = 4
    rescaled: bool = False

    def __post_init__(self):
        PairingForm(self.form)
        if self.d < 0:
            raise ValueError("truncation degree must be >= 0")

    def module(self):
        return build_VLambda(self.n, self.lam_mu, self.lam_nu, self.lam)

    def with_form(self, form):
        return DualRepSpec(self.n, form, self.lam_mu, self.lam_nu, self.lam, self.d, self.rescaled)


GENERATORS = ("E", "F", "K", "Kinv")


def antipode_action(module, gen, a, vec):
    """Verma action of S(u): S(E) = -K^-1 E, S(F) = -F K, S(K^{+-1}) = K^{-+1}."""
    if gen == "E":
        steps = (("E", ONE), ("Kinv", -ONE))
    elif gen == "F":
        steps = (("K", ONE), ("F", -ONE))
    elif gen in ("K", "Kinv"):
        steps = (("Kinv" if gen == "K" else "K", ONE),)
    else:
        raise ValueError("generator must be one of %r" % (GENERATORS,))
    for g, c in steps:
        vec = {k: c * v for k, v in verma_action(module, g, a, vec).items()}
    return vec


def antipode_matrix(module, gen, a, d_lo, d_hi, target=None):
    """Matrix of antipode_action on the module window [d_lo, d_hi]."""
    src = module_basis(module, d_lo, d_hi)
    if target is None:
        target = module_basis(module, max(0, d_lo - 1), d_hi + 1)
    tset = set(target)
    return OperatorMatrix.from_function(
        src, target, lambda v: {k: c for k, c in antipode_action(module, gen, a, {v: ONE}).items() if k in tset})


def dual_rep_matrix(spec, gen, a=None):
    """O_X(u) on the plus-side window of degrees <= spec.d (target up to d + 1).

    a is the letter of the generator; it defaults to beta.
    """
    module = spec.module()
    a = letter_beta(spec.n) if a is None else a
    d = spec.d
    plus_window = module_basis(module, 0, d)
    plus_target = module_basis(module, 0, d + 1)
    # rows of L(S(u)) on the plus window need every minus source reaching it
    T = antipode_matrix(module, gen, a, 0, d + 1, target=plus_window)
    form = PairingForm(spec.form, normalized=False)
    O = transpose(T, form, module_gram(form)).restrict(target=plus_target)
    if spec.rescaled:
        O = rescale(O, "B")
    return O


def rescale(O, which, power=1):
    """which^-power O which^power for a diagonal change of basis ("A" or "B")."""
    return (change_of_basis(which, O.target, -power) @ O @ change_of_basis(which, O.source, power))


# -- the explicit formula ----------------------------------------------------------

def dual_endomorphism(module, kind, a, twisted=True):
    """A V' endomorphism as {label: {label: QRat}}.

    twisted: the dual action u^T with (u^T v', v) = (v', S(u) v); otherwise
    the plain dual (u^T v', v) = (v', u v).
    """
    labels = module.labels

    def action(lab):
        vec = {lab: ONE}
        if not twisted:
            return module.apply(kind, a, 1, lab)
        if kind == "E":
            vec = module.apply_tail((("K", a, -1), ("E", a, 1)), vec)
            return {k: -c for k, c in vec.items()}
        if kind == "F":
            vec = module.apply_tail((("F", a, 1), ("K", a, 1)), vec)
            return {k: -c for k, c in vec.items()}
        if kind == "K":
            return module.apply_tail((("K", a, -1),), vec)
        raise ValueError(kind)

    out = {lab: {} for lab in labels}
    for v in labels:
        for vp, c in action(v).items():
            out[vp][v] = c
    return out


def _compose(*maps):
    """Compose V' endomorphisms given as {src: {tgt: c}}; the last acts first."""
    def apply(lab):
        vec = {lab: ONE}
        for m in reversed(maps):
            nxt = {}
            for k, c in vec.items():
                for k2, c2 in m.get(k, {}).items():
                    s = nxt.get(k2, ZERO) + c * c2
                    if s.is_zero():
                        nxt.pop(k2, None)
                    else:
                        nxt[k2] = s
            vec = nxt
        return vec
    return apply


def _beta_ad(n, exps):
    """Ad(K_beta) on Z^exps: q^{(beta, wt)}, wt Z_ij = e_{n+1-i} - e_{n+j}."""
    e = 0
    for p, k in enumerate(exps):
        if k:
            i, j = p % n + 1, p // n + 1
            e += k * ((1 if n + 1 - i == n else 0) + (1 if n + j == n + 1 else 0))
    return qpow(e)


def operator_form_coefficients(sign=1):
    """Coefficients of the five parts of the operator form of O_J(E_beta)."""
    g = gamma * qpow(-1) * sign
    return {"left": ONE, "right": -ONE, "x": g, "y": g, "xy": -gamma * gamma * qpow(-2) * sign}


def rescaled_coefficients(sign=1):
    """The same parts after conjugation by B (each raising operator gains -1/gamma)."""
    c = -gamma.inverse()
    return {k: c * v for k, v in operator_form_coefficients(sign).items()}


def operator_form_matrix(spec, sign=1, coefficients=None):
    """The explicit operator form of O_J(E_beta) on the plus-side window.

    Z_11-left-multiplication (x) 1 minus Z_11-right-multiplication Ad(K_beta)
    (x) K_beta^2, plus the compact corrections (n = 2 matrix weights):
    gamma q^-1 (right mult by Z_21, resp. Z_12) Ad(K_beta) (x) K_beta^2 X^T
    (resp. K_beta^2 Y^T) and -gamma^2 q^-2 (right mult by Z_22) Ad(K_beta)
    (x) K_beta^2 X^T Y^T.  X^T, Y^T are plain duals of F_mu, F_nu on V, and
    K_beta^2 is the dual K_beta action squared.  sign multiplies the
    compact corrections; coefficients overrides all five part coefficients.
    """
    co = coefficients or operator_form_coefficients(sign)
    n = spec.n
    module = spec.module()
    source = module_basis(module, 0, spec.d)
    target = module_basis(module, 0, spec.d + 1)
    kb = dual_endomorphism(module, "K", letter_beta(n))
    kb2 = _compose(kb, kb)
    terms = [((1, 1), co["right"], kb2)]
    if not module.scalar:
        xt = dual_endomorphism(module, "F", letter_mu(2, 1), twisted=False)
        yt = dual_endomorphism(module, "F", letter_nu(2, 1), twisted=False)
        terms += [((2, 1), co["x"], _compose(kb, kb, xt)),
                  ((1, 2), co["y"], _compose(kb, kb, yt)),
                  ((2, 2), co["xy"], _compose(kb, kb, xt, yt))]

    def column(label):
        exps, lab = label
        out = {}

        def add(key, c):
            s = out.get(key, ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        for m, c in gen_times_monomial(n, pos(n, 1, 1), exps):
            add((m, lab), co["left"] * c)
        ad = _beta_ad(n, exps)
        for node_ij, c0, endo in terms:
            gen = [0] * (n * n)
            gen[pos(n, *node_ij)] = 1
            vprime = endo(lab)
            if not vprime:
                continue
            for m, c in monomial_times_monomial(n, exps, tuple(gen)):
                for lab2, c2 in vprime.items():
                    add((m, lab2), c0 * ad * c * c2)
        return out

    return OperatorMatrix.from_function(source, target, column)


def verify_operator_form(spec):
    """Compare the explicit formula with the transpose pipeline.

    Returns a check dict; the sign of the compact corrections is chosen as
    the one (if any) for which the two agree, and reported.
    """
    pipeline = dual_rep_matrix(spec.with_form("J"), "E")
    signs = (1,) if spec.module().scalar else (1, -1)
    for s in signs:
        formula = operator_form_matrix(spec, sign=s)
        diff = pipeline.differences(formula)
        if not diff:
            return {"name": "J operator form n=%d d=%d weights=(%d,%d)" % (spec.n, spec.d, spec.lam_mu, spec.lam_nu),
                    "status": "pass", "detail": "compact-correction sign %+d" % s}
    r, c, mine, theirs = diff[0]
    return {"name": "J operator form n=%d d=%d weights=(%d,%d)" % (spec.n, spec.d, spec.lam_mu, spec.lam_nu),
            "status": "fail",
            "detail": "entry %r <- %r: pipeline %s, formula %s" % (r, c, mine.to_string(), theirs.to_string())}


def verify_form_conjugates(spec):
    """O_L = A^-1 O_J A and O_K = A^-2 O_J A^2 as matrices."""
    j = dual_rep_matrix(spec.with_form("J"), "E")
    out = []
    for form, power in (("L", 1), ("K", 2)):
        m = dual_rep_matrix(spec.with_form(form), "E")
        ok = m == rescale(j, "A", power)
        out.append({"name": "O_%s = A^-%d O_J A^%d" % (form, power, power),
                    "status": "pass" if ok else "fail", "detail": ""})
    return out


# -- classical limit -------------------------------------------------------------------

def classical_operator(n, lam, d, mixed=False):
    """Matrix of sum_{ij} Z_i1 Z_ij d/dZ_ij - lam Z_11 on commutative monomials of degree <= d.

    With mixed=True the quadratic factor is Z_i1 Z_1j instead.
    """
    src = window_basis(n, 0, d)
    tgt = window_basis(n, 0, d + 1)

    def column(e):
        out = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                a = e[pos(n, i, j)]
                if not a:
                    continue
                m = list(e)
                m[pos(n, i, j)] -= 1
                m[pos(n, i, 1)] += 1
                m[pos(n, 1, j) if mixed else pos(n, i, j)] += 1
                m = tuple(m)
                out[m] = out.get(m, ZERO) + as_qrat(a)
        m = list(e)
        m[pos(n, 1, 1)] += 1
        m = tuple(m)
        out[m] = out.get(m, ZERO) - as_qrat(lam)
        return {k: v for k, v in out.items() if not v.is_zero()}

    return OperatorMatrix.from_function(src, tgt, column)


def q1_limit(spec):
    """Entrywise q = 1 values of the B-rescaled J-representation of E_beta (scalar weight)."""
    s = DualRepSpec(spec.n, "J", 0, 0, None, spec.d, True)
    O = dual_rep_matrix(s, "E")
    src = tuple(e for e, _ in O.source)
    tgt = tuple(e for e, _ in O.target)
    cols = {}
    for (e, _), col in O.cols.items():
        cols[e] = {r: as_qrat(eval_at(c, 1, spec.lam)) for (r, _), c in col.items()}
        cols[e] = {r: c for r, c in cols[e].items() if not c.is_zero()}
    return OperatorMatrix(src, tgt, cols)


def classical_limit_check(n, lam, d):
    """Compare the q = 1 limit with the classical first-order operator."""
    spec = DualRepSpec(n, "J", lam=lam, d=d)
    limit = q1_limit(spec)
    classical = classical_operator(n, lam, d).restrict(target=limit.target)
    diff = limit.differences(classical)
    check = {"name": "classical limit n=%d lambda=%d d=%d" % (n, lam, d),
             "status": "pass" if not diff else "fail", "detail": ""}
    if diff:
        r, c, mine, theirs = diff[0]
        mixed = classical_operator(n, lam, d, mixed=True).restrict(target=limit.target)
        check["detail"] = "%d entries differ, first %r <- %r: limit %s, operator %s%s" % (
            len(diff), r, c, mine.to_string(), theirs.to_string(),
            "; limit equals the Z_i1 Z_1j variant" if limit == mixed else "")
        grid = lambda e: [[e[pos(n, i, j)] for j in range(1, n + 1)] for i in range(1, n + 1)]
        check["counterexample"] = {"source": grid(c), "target": grid(r),
                                   "got": mine.to_string(), "expected": theirs.to_string()}
    return check


# -- further checks ------------------------------------------------------------------

def _check(name, ok, detail=""):
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _first_difference(a, b):
    diff = a.differences(b)
    if not diff:
        return ""
    r, c, x, y = diff[0]
    return "%d entries differ, first %r <- %r: %s vs %s" % (len(diff), r, c, x.to_string(), y.to_string())


def verify_rescaled_operator_form(spec, sign=1):
    """The B-rescaled pipeline for E_beta equals the rescaled operator form."""
    pipeline = dual_rep_matrix(DualRepSpec(spec.n, "J", spec.lam_mu, spec.lam_nu, spec.lam, spec.d, True), "E")
    formula = operator_form_matrix(spec, coefficients=rescaled_coefficients(sign))
    return _check("rescaled operator form n=%d d=%d weights=(%d,%d)" % (spec.n, spec.d, spec.lam_mu, spec.lam_nu),
                  pipeline == formula, _first_difference(pipeline, formula))


def rescaled_F_formula(spec):
    """-Ad(K_beta^-1) r'_beta on the plus side, times the dual K_beta on V' (scalar weight)."""
    n = spec.n
    module = spec.module()
    if not module.scalar:
        raise ValueError("the F_beta operator form is for scalar weights")
    b = letter_beta(n)
    v = module.labels[0]
    kb = dual_endomorphism(module, "K", b, twisted=False)[v][v]
    source = module_basis(module, 0, spec.d)
    target = module_basis(module, 0, spec.d + 1)

    def column(label):
        exps, lab = label
        out = {}
        for (m, f), c in r_monomial(n, PLUS, b, True, exps):
            if f:
                raise ValueError("compact letters survive in r'_beta")
            out[(m, lab)] = out.get((m, lab), ZERO) - kb * c * qpow(-content_pairing(n, b, m))
        return {k: v for k, v in out.items() if not v.is_zero()}

    return OperatorMatrix.from_function(source, target, column)


def verify_rescaled_F(spec):
    """B^-1 O_J(F_beta) B against rescaled_F_formula."""
    pipeline = dual_rep_matrix(DualRepSpec(spec.n, "J", lam=spec.lam, d=spec.d, rescaled=True), "F")
    formula = rescaled_F_formula(spec)
    return _check("rescaled F_beta n=%d d=%d" % (spec.n, spec.d), pipeline == formula,
                  _first_difference(pipeline, formula))


def verify_weight_covariance(spec):
    """O(K_beta) O(E_beta) O(K_beta^-1) = q^2 O(E_beta) on the window."""
    e = dual_rep_matrix(spec, "E")
    k_big = dual_rep_matrix(DualRepSpec(spec.n, spec.form, spec.lam_mu, spec.lam_nu, spec.lam,
                                        spec.d + 1, spec.rescaled), "K").restrict(source=e.target, target=e.target)
    kinv = dual_rep_matrix(spec, "Kinv").restrict(target=e.source)
    lhs = k_big @ e @ kinv
    rhs = e.scale(qpow(2))
    return _check("weight covariance %s n=%d d=%d" % (spec.form, spec.n, spec.d), lhs == rhs,
                  _first_difference(lhs, rhs))


def pole_free_check(n, lam, d):
    """Every entry of the B-rescaled J-matrix of E_beta evaluates at q = 1."""
    s = DualRepSpec(n, "J", lam=lam, d=d, rescaled=True)
    O = dual_rep_matrix(s, "E")
    bad = []
    for src, col in O.cols.items():
        for r, c in col.items():
            try:
                eval_at(c, 1, lam)
            except PoleError:
                bad.append((r, src))
    return _check("pole-free at q=1 n=%d lambda=%d d=%d" % (n, lam, d), not bad,
                  "%d singular entries" % len(bad) if bad else "")


# -- Weyl-element realization and membership -------------------------------------------

def conjugate_by_A(x, power):
    """A^-power x A^power as a Weyl element.

    On a node with degree shift delta this multiplies by q^{power delta(delta-1)/2}
    and by H^{power delta} on the right.
    """
    n = x.n
    out = WeylElement.zero(n)
    for k, c in x.terms.items():
        shift = [power * (m - d) for (m, d, _) in k]
        scalar = sum(power * (m - d) * (m - d - 1) // 2 for (m, d, _) in k)
        out = out + WeylElement(n, {k: c * qpow(scalar)}) * WeylElement.from_grading(n, tuple(shift))
    return out


def beta_adjoint(n):
    """Ad(K_beta) on plus monomials as an H-monomial: H_11^2 and H over the rest of row and column 1."""
    e = [0] * (n * n)
    for i in range(1, n + 1):
        e[pos(n, i, 1)] += 1
    for j in range(1, n + 1):
        e[pos(n, 1, j)] += 1
    return tuple(e)


def operator_form_weyl_element(spec):
    """O_J(E_beta) for scalar weight as a Weyl element: left mult Z_11 - c (right mult Z_11) Ad(K_beta)."""
    from .membership import left_mult, right_mult
    n = spec.n
    module = spec.module()
    if not module.scalar:
        raise ValueError("the Weyl realization is for scalar weights")
    v = module.labels[0]
    kb = dual_endomorphism(module, "K", letter_beta(n))[v][v]
    ad = WeylElement.from_grading(n, beta_adjoint(n))
    return left_mult(n, 1, 1) - (right_mult(n, 1, 1) * ad).scale(kb * kb)


def _strip_labels(O):
    return OperatorMatrix(tuple(e for e, _ in O.source), tuple(e for e, _ in O.target),
                          {e: {r: c for (r, _), c in col.items()} for (e, _), col in O.cols.items()})


def form_weyl_element(spec):
    """The Weyl element of O_X(E_beta): A-conjugates of the J element (power 1 for L, 2 for K)."""
    power = {"J": 0, "L": 1, "K": 2}[spec.form]
    x = operator_form_weyl_element(spec)
    return conjugate_by_A(x, power) if power else x


def verify_case_KL_membership_of_rep(spec, cap=3):
    """Forms K and L are A-conjugates of J, their Weyl elements reproduce the matrices,
    and the K element lies in the K-form generator algebra (L: in the full Weyl algebra)."""
    from .membership import (grading_obstruction, h_closure, kweyl_generators, summand_membership,
                             u_degree_bound)
    n = spec.n
    checks = verify_form_conjugates(spec)
    for form in ("J", "L", "K"):
        s = spec.with_form(form)
        x = form_weyl_element(s)
        mat = _strip_labels(dual_rep_matrix(s, "E"))
        got = operator_matrix(x, n, 0, spec.d, target=mat.target)
        checks.append(_check("Weyl element reproduces O_%s(E_beta) n=%d d=%d" % (form, n, spec.d),
                             got == mat, _first_difference(got, mat)))
    kw = kweyl_generators(n)
    xk = form_weyl_element(spec.with_form("K"))
    found, missing = summand_membership(xk, kw, h_closure(kw), cap)
    detail = "%d summands placed" % len(found)
    if missing:
        detail = "%d summands not placed with words of length <= %d" % (len(missing), cap)
        # every generator has u-degree <= bound at (1,1); a larger degree proves non-membership
        ok, bounds = grading_obstruction(kw, 1, 1)
        top = max(bounds.values())
        deg = u_degree_bound(xk, pos(n, 1, 1))
        if deg > top and all(u_degree_bound(x, pos(n, 1, 1)) <= top for _, x in kw):
            detail += "; not a member: u-degree %d at (1,1) exceeds the generator bound %d" % (deg, top)
    checks.append(_check("O_K(E_beta) in the K-form generator algebra n=%d" % n, not missing, detail))
    return checks
