"""One test per acceptance criterion; each prints a single pass/fail line."""

import time
from math import comb

from conftest import failures, run_suite

from qweyl import suites


def test_criterion_1_serre_certification(record_criterion):
    start = time.perf_counter()
    checks = run_suite(suites.serre_suite(2, 6))
    elapsed = time.perf_counter() - start
    plus = [c for c in checks if c["name"].startswith("serre plus")]
    checks.append(suites.check("16 instances per side", len(plus) == 16, "%d" % len(plus)))
    checks.append(suites.check("runtime under 2 minutes", elapsed < 120, "%.1fs" % elapsed))
    bad = record_criterion(1, "Serre certification n=2 depth 6", checks)
    assert not bad, [c["name"] for c in bad]


def test_criterion_2_pbw_flatness(record_criterion):
    tasks = []
    for n in (2, 3):
        tasks += suites.pbw_suite(n, 5, word_length=4)
    checks = run_suite(tasks)
    for n in (2, 3):
        for d in range(6):
            name = "pbw normal monomials n=%d degree %d" % (n, d)
            assert any(c["name"] == name for c in checks)
            assert comb(n * n + d - 1, d) == int(next(c for c in checks if c["name"] == name)["detail"].split()[0])
    bad = record_criterion(2, "PBW flatness n=2,3 d<=5, confluence length<=4", checks)
    assert not bad, [c["name"] for c in bad]


def test_criterion_3_weyl_relations(record_criterion):
    checks = run_suite(suites.weyl_suite(2, 5) + suites.weyl_suite(3, 5))
    bad = record_criterion(3, "Weyl relations n=2,3 d<=5", checks)
    assert not bad, [c["name"] for c in bad]


def test_criterion_4_pairing_duality(record_criterion):
    checks = run_suite(suites.pairing_suite(2, 5))
    kappas = sorted({c["detail"] for c in checks if "single global kappa" in c["name"]})
    bad = record_criterion(4, "transposes of raising operators n=2 d<=5", checks, "; ".join(kappas))
    assert not bad, [c["name"] for c in bad]


def test_criterion_5_kaction(record_criterion):
    checks = run_suite(suites.kaction_suite(2, 6) + suites.kaction_suite(3, 4))
    bad = record_criterion(5, "k-action operator formulas n=2 d<=6, n=3 d<=4", checks)
    assert not bad, [c["name"] for c in bad]


def _scalar_tasks(n, d):
    return [(suites.operator_form_task, (n, (0, 0), None, d)), (suites.conjugates_task, (n, (0, 0), None, d))]


def test_criterion_6_central_theorem(record_criterion):
    start = time.perf_counter()
    checks = run_suite(_scalar_tasks(1, 4) + suites.dualrep_suite(2, 4))
    elapsed = time.perf_counter() - start
    checks.append(suites.check("runtime under 5 minutes", elapsed < 300, "%.1fs" % elapsed))
    bad = record_criterion(6, "dual representation formula n=1,2 d<=4", checks, "%.1fs" % elapsed)
    assert not bad, [c["name"] for c in bad]


def test_criterion_7_classical_limit(record_criterion):
    checks = run_suite(suites.classical_suite(1, 3) + suites.classical_suite(2, 3))
    bad = record_criterion(7, "classical limit n=1,2 lambda in {0,2,3} d<=3", checks,
                           bad_detail(checks))
    assert not bad, [c["name"] for c in bad]


def bad_detail(checks):
    bad = failures(checks)
    return bad[0]["detail"] if bad else ""


def test_criterion_8_membership(record_criterion):
    checks = run_suite(suites.membership_suite(2) + suites.membership_suite(3))
    names = [c["name"] for c in checks]
    for required in ("L: bare M(3,3) derived", "RR K: (H11)^2 not derived",
                     "RR K: u-degree at (1,1) <= 0 for every generator", "RR J traces replay",
                     "J: no bare or southeast-dressed M11 among derived elements"):
        assert required in names, required
    spans = [n for n in names if n.startswith("K span")]
    assert any("first in second" in n for n in spans) and any("second in first" in n for n in spans)
    bad = record_criterion(8, "membership derivations n=2,3", checks)
    assert not bad, [c["name"] for c in bad]


def test_criterion_9_verma_sanity(record_criterion):
    checks = suites.verma_sl2_task(kmax=6, lambdas=range(0, 10))
    bad = record_criterion(9, "n=1 Verma action k<=6 and its q=1 limit", checks)
    assert not bad, [c["name"] for c in bad]
