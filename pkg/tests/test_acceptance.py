"""Acceptance gate.  Every check is exact integer equality.

Run under pytest (one PASS/FAIL line per criterion is printed in the summary)
or directly with ``python tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

import pytest

from qtelescope.certificates import verify_sylvester_certificate, verify_watson_certificate
from qtelescope.cli import DEFAULT_A_ORDER, DEFAULT_Q_ORDER
from qtelescope.gauss import GAUSS
from qtelescope.series import (
    AQSeries,
    QSeries,
    gauss_lhs,
    qs_invert,
    qs_poch_inf,
    rr_product,
    rr_sum,
    schur_bilateral,
    sylvester_lhs,
    watson_lhs,
    watson_rhs,
)
from qtelescope.sylvester import SYLVESTER
from qtelescope.telescoping import brute_force_F, build_involution, check_bijections, global_bijection_check
from qtelescope.watson import WATSON, closed_form


def _record(log, number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    log.append(line)
    assert ok, line


def test_criterion_01_watson_identity(acceptance_log):
    N, M = 25, 10
    lhs, rhs = watson_lhs(M, N), watson_rhs(M, N)
    brute = AQSeries.zero(M, N)
    for n in range(M + 1):
        brute = brute + brute_force_F(WATSON, n, N, M)
    ok = lhs == rhs == brute
    _record(acceptance_log, 1, "Watson identity, three-way with enumeration", ok, f"N={N}, M={M}")


def test_criterion_02_closed_form(acceptance_log):
    N, M = 25, 10
    bad = [n for n in range(7) if brute_force_F(WATSON, n, N, M) != closed_form(n, N, M)]
    _record(acceptance_log, 2, "F_n = a^n q^(n^2)/(q;q)_n for n=0..6", not bad, f"mismatch at {bad}" if bad else "")


def test_criterion_03_recurrence(acceptance_log):
    N, M = 25, 10
    bad = []
    for n in range(1, 9):
        fn, prev = brute_force_F(WATSON, n, N, M), brute_force_F(WATSON, n - 1, N, M)
        if fn != fn.shift(0, n) + prev.shift(1, 2 * n - 1):
            bad.append(n)
    _record(acceptance_log, 3, "F_n = q^n F_n + a q^(2n-1) F_(n-1) for n=1..8", not bad, f"mismatch at {bad}" if bad else "")


def test_criterion_04_bijection_suite(acceptance_log):
    start = time.perf_counter()
    runs = [
        check_bijections(WATSON, range(1, 9), 3, 16),
        check_bijections(GAUSS, range(1, 9), None, 16),
        check_bijections(SYLVESTER, range(1, 9), 3, 18),
    ]
    failures = sum(len(c.failures) + c.suppressed for r in runs for c in r.cells)
    elements = sum(c.domain_size for r in runs for c in r.cells)
    took = time.perf_counter() - start
    _record(
        acceptance_log, 4, "bijection suite, zero failures", failures == 0,
        f"{elements} elements, {failures} failures, {took:.1f}s",
    )


def test_criterion_05_involution(acceptance_log):
    problems = []
    for inst in (GAUSS, WATSON, SYLVESTER):
        for n in range(1, 7):
            try:
                _, rec = build_involution(inst, n, 14)
            except LookupError as exc:
                problems.append(f"{inst.name} n={n}: {exc}")
                continue
            if not rec.ok:
                problems.append(f"{inst.name} n={n}: {rec.failures[0]['check']}")
            if not global_bijection_check(inst, n, 14).ok:
                problems.append(f"{inst.name} n={n}: global bijection")
    _record(acceptance_log, 5, "psi is a sign-reversing involution; phi bijective on complement", not problems,
            "; ".join(problems[:3]))


def test_criterion_06_gauss(acceptance_log):
    N = 30
    bad = []
    for n in range(0, 13):
        lhs = gauss_lhs(n, N)
        if n % 2:
            want = QSeries.zero(N)
        else:
            denom = QSeries.one(N)
            for j in range(2, n + 1, 2):
                denom = denom * (QSeries.one(N) - QSeries.monomial(j, N))
            want = qs_invert(denom)
        if lhs != want:
            bad.append(f"identity n={n}")
    for n in range(2, 11):
        fn, prev = brute_force_F(GAUSS, n, N, 0), brute_force_F(GAUSS, n - 2, N, 0)
        if fn - fn.shift(0, n) != prev:
            bad.append(f"recurrence n={n}")
    _record(acceptance_log, 6, "Gauss identity n<=12 and recurrence n=2..10", not bad, ", ".join(bad))


def test_criterion_07_sylvester(acceptance_log):
    N, X = 30, 8
    ok = sylvester_lhs(X, N) == AQSeries.one(X, N)
    bad = [n for n in range(1, 9) if not brute_force_F(SYLVESTER, n, N, X).is_zero()]
    ok = ok and not bad and brute_force_F(SYLVESTER, 0, N, X) == AQSeries.one(X, N)
    _record(acceptance_log, 7, "Sylvester left side = 1; I_n = 0 for n=1..8", ok, f"nonzero I_n at {bad}" if bad else "")


def test_criterion_08_schur(acceptance_log):
    N = 30
    # a-order 6 covers every a^(2k) term with k(5k-1)/2 <= 30
    ok = watson_lhs(6, N).at_a_equals_one() * qs_poch_inf(N) == schur_bilateral(N)
    _record(acceptance_log, 8, "a=1 specialisation times (q;q)_inf = Schur bilateral sum", ok, f"N={N}")


def test_criterion_09_rogers_ramanujan(acceptance_log):
    N = 50
    ok1 = rr_sum(1, N) == rr_product(1, N)
    ok2 = rr_sum(2, N) == rr_product(2, N)
    _record(acceptance_log, 9, "Rogers-Ramanujan sums equal the standard products", ok1 and ok2,
            f"N={N}, products are literature-standard")


def test_criterion_10_certificates(acceptance_log):
    N, M = DEFAULT_Q_ORDER, DEFAULT_A_ORDER
    w = verify_watson_certificate(6, M, N)
    s = verify_sylvester_certificate(6, M, N)
    bad = [f"watson k={k}" for k, r in w.results.items() if not r.ok]
    bad += [f"sylvester k={k}" for k, r in s.results.items() if not r.ok]
    bad += [f"{rec.failures[0]['check']}" for rec in w.extra + s.extra if not rec.ok]
    # a^n extraction of the functional equation against criterion 3
    f = watson_lhs(M, N)
    for n in range(1, 9):
        if f.row(n) - f.row(n).shift(n) != f.row(n - 1).shift(2 * n - 1):
            bad.append(f"a^{n} extraction")
    _record(acceptance_log, 10, "certificates k=0..6, functional equations, a^n extraction", not bad,
            f"N={N}, M={M}" + (": " + ", ".join(bad) if bad else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([str(Path(__file__)), "-q", "-p", "no:cacheprovider"]))
