"""Verification suites shared by the command line and the acceptance tests.

Every suite is a list of tasks; a task is a module-level function plus its
arguments returning a list of check dicts {name, status, detail,
counterexample?}.  Tasks are independent, so they can run in worker
processes and be merged back in their listed order.
"""

from math import comb

from .dualrep import (DualRepSpec, classical_limit_check, pole_free_check, verify_operator_form,
                      verify_case_KL_membership_of_rep, verify_rescaled_operator_form, verify_form_conjugates,
                      verify_rescaled_F, verify_weight_covariance)
from .kaction import (adjunction_check, build_VLambda, commutator_pairing_check,
                      k_generator_action, tail_structure_violations, verify_levi_formulas,
                      verma_action, weight_pairing)
from .linalg import SparseEchelon
from .membership import (derive_case, j_asymmetry_witness, k_theorem_check, l_theorem_check,
                         rr_k_h11_check)
from .opmatrix import OperatorMatrix
from .pairing import PairingForm, fit_kappa, gram, transpose
from .qcoeff import ONE, ZERO, PoleError, eval_at, as_qrat, gamma, lambda_bracket, qint, qpow
from .qmatrixalg import (MINUS, PLUS, basis_of_degree, node, normal_order, pos, swap_rule,
                         word_element)
from .uqserre import alphabet, certify_quadratic_relations, letter_beta
from .weylq import (WeylElement, act_on_vector, derivative_flavor, grade_op, lower_op, raise_op,
                    window_basis)


def check(name, ok, detail="", counterexample=None):
    out = {"name": name, "status": "pass" if ok else "fail", "detail": detail}
    if counterexample is not None:
        out["counterexample"] = counterexample
    return out


def exponent_matrix(n, exps):
    """Column-major exponents as an n x n list of rows."""
    return [[exps[pos(n, i, j)] for j in range(1, n + 1)] for i in range(1, n + 1)]


def _label_exps(label):
    return label[0] if label and isinstance(label[0], tuple) else label


def matrix_check(name, n, got, want):
    """Entrywise comparison, with the first differing entry as a counterexample."""
    diff = got.differences(want)
    if not diff:
        return check(name, True)
    r, s, a, b = diff[0]
    ce = {"source": exponent_matrix(n, _label_exps(s)), "target": exponent_matrix(n, _label_exps(r)),
          "got": a.to_string(), "expected": b.to_string()}
    return check(name, False, "%d entries differ" % len(diff), ce)


# -- Serre ---------------------------------------------------------------------------

def serre_task(n, depth, side):
    out = []
    rep = certify_quadratic_relations(n, D=depth, side=side)
    for r in rep:
        c = check("serre %s %s (%s)" % ("plus" if side == PLUS else "minus", r["instance"], r["kind"]),
                  r["status"] != "fail", "degree %d" % r["degree"])
        c["status"] = r["status"]
        out.append(c)
    return out


def serre_suite(n, depth):
    return [(serre_task, (n, depth, PLUS)), (serre_task, (n, depth, MINUS))]


# -- PBW -------------------------------------------------------------------------------

def _words(n, d):
    gens = [node(n, p) for p in range(n * n)]
    out = [()]
    for _ in range(d):
        out = [w + (g,) for w in out for g in gens]
    return out


def _row_col_weight(n, word):
    rows, cols = [0] * n, [0] * n
    for i, j in word:
        rows[i - 1] += 1
        cols[j - 1] += 1
    return tuple(rows), tuple(cols)


def quotient_dimension(n, d):
    """dim of the degree-d part of the free algebra modulo the quadratic relations.

    Exact rank of the degree-d ideal over Q(q, t), blocked by row and column
    content (which every relation preserves).
    """
    if d < 2:
        return (n * n) ** d
    gens = [node(n, p) for p in range(n * n)]
    rels = {}
    for g in gens:
        for h in gens:
            pg, ph = pos(n, *g), pos(n, *h)
            if pg <= ph:
                continue
            c, extra = swap_rule(n, pg, ph)
            rel = {(g, h): ONE, (h, g): -c}
            if extra is not None:
                ce, p1, p2 = extra
                key = (node(n, p1), node(n, p2))
                rel[key] = rel.get(key, ZERO) - ce
            rels[(g, h)] = rel
    blocks = {}
    for w in _words(n, d):
        blocks.setdefault(_row_col_weight(n, w), []).append(w)
    total = 0
    for wt, words in blocks.items():
        ech = SparseEchelon()
        rank = 0
        for w in words:
            for k in range(d - 1):
                pre, post = w[:k], w[k + 2:]
                rel_here = rels.get((w[k], w[k + 1]))
                if rel_here is None:
                    continue
                row = {}
                for (a, b), c in rel_here.items():
                    key = pre + (a, b) + post
                    row[key] = row.get(key, ZERO) + c
                row = {k2: v for k2, v in row.items() if not v.is_zero()}
                if ech.insert(row):
                    rank += 1
        total += len(words) - rank
    return total


def pbw_dimension_task(n, d):
    out = []
    for k in range(0, d + 1):
        normal = len(basis_of_degree(n, k))
        want = comb(n * n + k - 1, k)
        out.append(check("pbw normal monomials n=%d degree %d" % (n, k), normal == want,
                         "%d vs C(%d,%d) = %d" % (normal, n * n + k - 1, k, want)))
    return out


def quotient_dimension_task(n, k):
    got = quotient_dimension(n, k)
    want = comb(n * n + k - 1, k)
    return [check("quadratic algebra dimension n=%d degree %d" % (n, k), got == want,
                  "%d vs %d" % (got, want))]


def confluence_task(n, length, side):
    bad = []
    for w in _words(n, length):
        a = normal_order(w, n, side, "leftmost")
        b = normal_order(w, n, side, "rightmost")
        c = word_element(w, n, side)
        if a != b or a != c:
            bad.append(w)
    tag = "plus" if side == PLUS else "minus"
    return [check("confluence %s n=%d words of length %d" % (tag, n, length), not bad,
                  "%d words disagree" % len(bad) if bad else "%d words" % (n * n) ** length)]


def pbw_suite(n, d, word_length=4, exact_degree=None):
    """Normal-monomial counts, exact quotient dimensions and strategy confluence.

    exact_degree bounds the degrees where the quotient dimension is computed
    by linear algebra (default: d).
    """
    if exact_degree is None:
        exact_degree = d
    tasks = [(pbw_dimension_task, (n, d))]
    tasks += [(quotient_dimension_task, (n, k)) for k in range(2, exact_degree + 1)]
    tasks += [(confluence_task, (n, k, side)) for side in (PLUS, MINUS) for k in range(2, word_length + 1)]
    return tasks


# -- Weyl relations -----------------------------------------------------------------------

def weyl_relations(n, i, j):
    """(name, lhs factor list with scalars, rhs element) for the node relations.

    A lhs is a list of (scalar, [factors]) summands; factors act right to left.
    """
    M, D, H = raise_op(n, i, j), lower_op(n, i, j), grade_op(n, i, j)
    Hinv = grade_op(n, i, j, -1)
    DJ, DK = derivative_flavor(n, i, j, "J"), derivative_flavor(n, i, j, "K")
    return [
        ("DM - qMD = H^-1", [(ONE, [D, M]), (-qpow(1), [M, D])], Hinv),
        ("DM - q^-1 MD = H", [(ONE, [D, M]), (-qpow(-1), [M, D])], H),
        ("HD = q^-1 DH", [(ONE, [H, D]), (-qpow(-1), [D, H])], WeylElement.zero(n)),
        ("HM = qMH", [(ONE, [H, M]), (-qpow(1), [M, H])], WeylElement.zero(n)),
        ("J-flavor DM - q^2 MD = 1", [(ONE, [DJ, M]), (-qpow(2), [M, DJ])], WeylElement.one(n)),
        ("J-flavor DM - MD = H^2", [(ONE, [DJ, M]), (-ONE, [M, DJ])], grade_op(n, i, j, 2)),
        ("J-flavor HD = q^-1 DH", [(ONE, [H, DJ]), (-qpow(-1), [DJ, H])], WeylElement.zero(n)),
        ("HM = qMH (J)", [(ONE, [H, M]), (-qpow(1), [M, H])], WeylElement.zero(n)),
        ("K-flavor DM - q^-2 MD = 1", [(ONE, [DK, M]), (-qpow(-2), [M, DK])], WeylElement.one(n)),
        ("K-flavor DM - MD = H^-2", [(ONE, [DK, M]), (-ONE, [M, DK])], grade_op(n, i, j, -2)),
        ("K-flavor HD = q^-1 DH", [(ONE, [H, DK]), (-qpow(-1), [DK, H])], WeylElement.zero(n)),
        ("HM = qMH (K)", [(ONE, [H, M]), (-qpow(1), [M, H])], WeylElement.zero(n)),
    ]


def _compose_action(factors, vec):
    for x in reversed(factors):
        vec = act_on_vector(x, vec)
    return vec


def weyl_node_task(n, d, i, j):
    out = []
    basis = window_basis(n, 0, d)
    for name, lhs, rhs in weyl_relations(n, i, j):
        elem = WeylElement.zero(n)
        for c, factors in lhs:
            prod = WeylElement.one(n)
            for x in factors:
                prod = prod * x
            elem = elem + prod.scale(c)
        out.append(check("weyl (%d,%d) %s normal form" % (i, j, name), elem == rhs))
        bad = None
        for e in basis:
            got = {}
            for c, factors in lhs:
                for k, v in _compose_action(factors, {e: ONE}).items():
                    got[k] = got.get(k, ZERO) + c * v
            got = {k: v for k, v in got.items() if not v.is_zero()}
            want = act_on_vector(rhs, {e: ONE})
            if got != want:
                bad = e
                break
        out.append(check("weyl (%d,%d) %s operator d<=%d" % (i, j, name, d), bad is None,
                         "" if bad is None else "fails on the monomial",
                         None if bad is None else {"source": exponent_matrix(n, bad)}))
    return out


def weyl_commute_task(n, d):
    """Operators at different nodes commute, as normal forms and on the window."""
    bad_nf, bad_op = [], []
    basis = window_basis(n, 0, d)
    ops = lambda i, j: [raise_op(n, i, j), lower_op(n, i, j), grade_op(n, i, j)]
    for p in range(n * n):
        for r in range(p + 1, n * n):
            for x in ops(*node(n, p)):
                for y in ops(*node(n, r)):
                    if x * y != y * x:
                        bad_nf.append((node(n, p), node(n, r)))
                    for e in basis:
                        if _compose_action([x, y], {e: ONE}) != _compose_action([y, x], {e: ONE}):
                            bad_op.append((node(n, p), node(n, r)))
                            break
    return [check("weyl distinct nodes commute (normal form)", not bad_nf, "%r" % bad_nf[:2] if bad_nf else ""),
            check("weyl distinct nodes commute (operators d<=%d)" % d, not bad_op,
                  "%r" % bad_op[:2] if bad_op else "")]


def weyl_suite(n, d):
    tasks = [(weyl_node_task, (n, d) + node(n, p)) for p in range(n * n)]
    tasks.append((weyl_commute_task, (n, min(d, 3))))
    return tasks


# -- pairing ---------------------------------------------------------------------------------

def raising_matrix(n, i, j, d):
    """M^o at (i,j) on the minus-side window of degrees < d, into degrees <= d."""
    x = raise_op(n, i, j)
    src = window_basis(n, 0, d - 1)
    tgt = window_basis(n, 1, d)
    return OperatorMatrix.from_function(src, tgt, lambda e: act_on_vector(x, {e: ONE}))


def pairing_task(n, d, form):
    out = []
    kappas = set()
    for p in range(n * n):
        i, j = node(n, p)
        T = raising_matrix(n, i, j, d)
        g = {"J": 1, "L": 0, "K": -1}[form]
        expected = grade_op(n, i, j, g) * lower_op(n, i, j)
        want = OperatorMatrix.from_function(T.target, T.source, lambda e: act_on_vector(expected, {e: ONE}))
        norm = transpose(T, PairingForm(form, True))
        out.append(matrix_check("transpose of M(%d,%d) under normalized %s = H^%d D" % (i, j, form, g),
                                n, norm, want))
        raw = transpose(T, PairingForm(form, False))
        k = fit_kappa(raw, norm)
        kappas.add(k.to_string() if k is not None else None)
    ok = len(kappas) == 1 and None not in kappas
    k0 = next(iter(kappas)) if ok else None
    out.append(check("raw %s transposes: single global kappa" % form, ok, "kappa = %s" % k0 if ok else "%r" % kappas))
    out.append(check("raw %s kappa = -1/(q - q^-1)" % form,
                     ok and k0 == (-gamma.inverse()).to_string(), "kappa = %s" % k0))
    return out


def pairing_a_task(n, d):
    """(Z^a, W^a)_L = (Z^a, A W^a)_J and (.,.)_K = (., A^2 .)_J on the window."""
    from .pairing import rescale_a
    bad = []
    for e in window_basis(n, 0, d):
        for form, power in (("L", 1), ("K", 2)):
            for norm in (True, False):
                if gram(e, PairingForm(form, norm)) != rescale_a(e, power) * gram(e, PairingForm("J", norm)):
                    bad.append((form, e))
    return [check("forms L, K are A-rescalings of J (d<=%d)" % d, not bad, "%r" % bad[:2] if bad else "")]


def pairing_suite(n, d):
    return [(pairing_task, (n, d, f)) for f in ("J", "L", "K")] + [(pairing_a_task, (n, min(d, 4)))]


# -- k-action -----------------------------------------------------------------------------------

def levi_formulas_task(n, d):
    return verify_levi_formulas(n, d)


def k_diagonal_task(n, d):
    """K_a^{+-1} y = q^{+-(alpha_a, wt y)} y K_a^{+-1} on monomials of either side."""
    out = []
    for a in alphabet(n):
        bad = []
        for side in (MINUS, PLUS):
            for e in window_basis(n, 0, d):
                for gen, s in (("K", 1), ("Kinv", -1)):
                    got = k_generator_action(n, gen, a, e, side)
                    want = {(e, (("K", a, s),)): qpow(s * weight_pairing(n, a, e, side))}
                    if got != want:
                        bad.append((side, gen, e))
        out.append(check("K diagonal on both sides, letter %d (d<=%d)" % (a, d), not bad,
                         "%d monomials" % len(bad) if bad else ""))
    return out


def pairing_identities_task(n, d):
    from .pairing import gram as g
    gram_fn = lambda e: g(e, PairingForm("J", False))
    out = []
    for a in alphabet(n):
        bad = adjunction_check(n, a, d, gram_fn)
        out.append(check("adjunction of E_%d and r_%d (d<=%d)" % (a, a, d), not bad, "%d pairs" % len(bad)))
        bad = commutator_pairing_check(n, a, d, gram_fn)
        out.append(check("commutator pairing identity for letter %d (d<=%d)" % (a, d), not bad,
                         "%d pairs" % len(bad)))
    return out


def tail_structure_task(n, d):
    bad = tail_structure_violations(n, d)
    return [check("E_beta tails are K_beta^{+-1} times X_i Y_j words (d<=%d)" % d, not bad, "%r" % bad[:3])]


def verma_sl2_task(kmax=6, lambdas=range(0, 8)):
    """n = 1 scalar Verma action: E W^k v = [k][lambda - k + 1] W^(k-1) v; q = 1 limit k(lambda - k + 1)."""
    module = build_VLambda(1, 0, 0, None)
    b = letter_beta(1)
    label = module.labels[0]
    out = []
    for k in range(0, kmax + 1):
        got = verma_action(module, "E", b, {((k,), label): ONE})
        want = {} if k == 0 else {((k - 1,), label): qint(k) * lambda_bracket(1 - k)}
        out.append(check("Verma E_beta on W^%d v" % k, got == want))
        if k:
            c = got.get(((k - 1,), label), ZERO)
            vals = []
            for lam in lambdas:
                try:
                    vals.append(eval_at(c, 1, lam) == as_qrat(k * (lam - k + 1)))
                except PoleError:
                    vals.append(False)
            out.append(check("Verma E_beta on W^%d v at q=1 is k(lambda-k+1)" % k, all(vals)))
    return out


def kaction_suite(n, d):
    tasks = [(levi_formulas_task, (n, d)), (k_diagonal_task, (n, min(d, 4))),
             (pairing_identities_task, (n, min(d, 4))), (tail_structure_task, (n, min(d, 4)))]
    if n == 1:
        tasks = [(k_diagonal_task, (n, d)), (pairing_identities_task, (n, min(d, 4))),
                 (tail_structure_task, (n, min(d, 4)))]
    tasks.append((verma_sl2_task, ()))
    return tasks


# -- dual representation -------------------------------------------------------------------------

def _spec(n, form, weights, lam, d):
    return DualRepSpec(n, form, weights[0], weights[1], lam, d)


def operator_form_task(n, weights, lam, d):
    return [verify_operator_form(_spec(n, "J", weights, lam, d))]


def conjugates_task(n, weights, lam, d):
    return verify_form_conjugates(_spec(n, "J", weights, lam, d))


def rescaled_form_task(n, weights, lam, d):
    return [verify_rescaled_operator_form(_spec(n, "J", weights, lam, d))]


def rescaled_F_task(n, lam, d):
    return [verify_rescaled_F(DualRepSpec(n, "J", lam=lam, d=d))]


def covariance_task(n, form, weights, lam, d):
    return [verify_weight_covariance(_spec(n, form, weights, lam, d))]


def kl_membership_task(n, lam, d):
    return verify_case_KL_membership_of_rep(DualRepSpec(n, "J", lam=lam, d=d))


def dualrep_suite(n, d, form="J", weights=(0, 0), lam=None):
    weight_list = [weights]
    if n == 2 and weights == (0, 0):
        weight_list = [(0, 0), (1, 0), (0, 1), (1, 1)]
    tasks = []
    for w in weight_list:
        tasks += [(operator_form_task, (n, w, lam, d)), (conjugates_task, (n, w, lam, d)), (rescaled_form_task, (n, w, lam, d))]
    tasks.append((rescaled_F_task, (n, lam, d)))
    for f in ("J", "K", "L"):
        tasks.append((covariance_task, (n, f, weights, lam, d)))
    if weights == (0, 0):
        tasks.append((kl_membership_task, (n, lam, d)))
    return tasks


def classical_task(n, lam, d):
    return [pole_free_check(n, lam, d), classical_limit_check(n, lam, d)]


def classical_suite(n, d, lambdas=(0, 2, 3)):
    return [(classical_task, (n, lam, d)) for lam in lambdas]


# -- membership ------------------------------------------------------------------------------------

def derive_task(case, form, n):
    rep = derive_case(case, form, n)
    return rep["checks"]


def theorem_task(kind, n):
    if kind == "L":
        return l_theorem_check(n)
    if kind == "K":
        return k_theorem_check(n)
    if kind == "H11":
        return rr_k_h11_check(n)
    if kind == "J":
        return [j_asymmetry_witness(n)]
    raise ValueError(kind)


def membership_suite(n, form=None):
    forms = ("J", "K", "L") if form is None else (form,)
    tasks = [(derive_task, (case, f, n)) for f in forms for case in ("RL", "RR")]
    if "L" in forms:
        tasks.append((theorem_task, ("L", n)))
    if "K" in forms:
        tasks.append((theorem_task, ("H11", n)))
        if n == 2:
            tasks.append((theorem_task, ("K", n)))
    if "J" in forms:
        tasks.append((theorem_task, ("J", n)))
    return tasks


def run_tasks(tasks, jobs=1):
    """Run tasks, in worker processes when jobs > 1; results keep the task order."""
    if jobs <= 1 or len(tasks) <= 1:
        results = [fn(*args) for fn, args in tasks]
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(fn, *args) for fn, args in tasks]
            results = [f.result() for f in futures]
    return [c for r in results for c in r]
