"""Acceptance criteria 1-13, one PASS/FAIL line each.

Run with pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""
import json
import os
import sys
import time
from fractions import Fraction
from itertools import combinations

import pytest

sys.path.insert(0, os.path.dirname(__file__))
from conftest import ACCEPTANCE  # noqa: E402

from periodkit import affq, eulerian, frobcount, hodge, semilinear  # noqa: E402
from periodkit.core.fields import GF, QQ, is_prime  # noqa: E402
from periodkit.core.rng import stream  # noqa: E402
from periodkit.flatseries import (TruncatedSeries, flat_residual, padic_valuation_profile,  # noqa: E402
                                  random_connection, solve_flat_sections, truncated_relations)
from periodkit.rootfilt import (ParabolicPair, RootDatum, double_coset_representatives,  # noqa: E402
                                lw2_harness, root_lemma_check, wpq_enumerate)
from periodkit.symplectic import (SymplecticSpace, bad_lagrangian_bruteforce,  # noqa: E402
                                  bad_lagrangian_search_report, explicit_tuple, random_tuples,
                                  _pairwise_transverse, _structured)


def report(k, ok, detail):
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_n0_scan():
    t0 = time.time()
    rows, n0 = hodge.scan_n0(range(30, 81), 3000)
    elapsed = time.time() - t0
    ok = n0 is not None and 45 <= n0 <= 75 and elapsed < 15 * 60
    report(1, ok, f"minimal n in [30,80] with d <= 3000: {n0} (target [45,75]); {elapsed:.0f}s")


def test_criterion_02_small_n_never_strong():
    t0 = time.time()
    hits = [(n, d) for n in range(2, 11) for d in range(2, 2001) if hodge.check_conditions(n, d).strong]
    elapsed = time.time() - t0
    report(2, not hits and elapsed < 120, f"strong hits for n<=10, d<=2000: {len(hits)}; {elapsed:.0f}s")


def test_criterion_03_commutator_fibers():
    t0 = time.time()
    bad = []
    for q, s in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]:
        c = affq.com_fiber_census(q, s)
        if not (c["uniform"] and c["image_matches"] and c["expected_fiber"] == q ** (2 * s - 1) * (q - 1)):
            bad.append((q, s))
    elapsed = time.time() - t0
    report(3, not bad and elapsed < 60, f"failing (q,s): {bad}; {elapsed:.1f}s")


def test_criterion_04_centralizer_lemma():
    t0 = time.time()
    out = semilinear.run_trials(500, 42)
    elapsed = time.time() - t0
    report(4, not out["failures"] and elapsed < 60, f"500 trials, failures: {len(out['failures'])}; {elapsed:.1f}s")


def test_criterion_05_variances():
    desc = all(eulerian.descent_variance_bruteforce(n) == Fraction(n + 1, 12) for n in range(2, 9))
    beta = all(eulerian.eulerian(n).beta_variance() == Fraction(n + 1, 6) for n in range(2, 13))
    report(5, desc and beta, f"descent variance n<=8: {desc}; beta variance n<=12: {beta}")


def test_criterion_06_beta0_and_log_concavity():
    viol = eulerian.beta0_bound_check(40, 400)
    lc = all(eulerian.is_log_concave(n) for n in range(1, 31))
    report(6, not viol and lc, f"beta0 violations in [40,400]: {viol}; log-concave n<=30: {lc}")


def test_criterion_07_wpq_and_root_lemma():
    t0 = time.time()
    failures = 0
    checked = 0
    for label in ("A2", "A3", "C2", "C3"):
        D = RootDatum.parse(label)
        subs = [frozenset(c) for k in range(D.rank + 1) for c in combinations(range(D.rank), k)]
        for dp in subs:
            for dq in subs:
                pair = ParabolicPair.from_subsets(D, dp, dq)
                ws = wpq_enumerate(pair, verify=False)
                if set(ws) != set(double_coset_representatives(D, dp, dq)):
                    failures += 1
                for w in ws:
                    checked += 1
                    rep = root_lemma_check(w, pair)
                    if not (rep["ok"] and rep["source_size"] == D.length(w)):
                        failures += 1
    elapsed = time.time() - t0
    report(7, failures == 0 and elapsed < 120, f"{checked} elements checked, failures: {failures}; {elapsed:.1f}s")


def test_criterion_08_lw2_sweep():
    total = 0
    details = []
    for label in ("A3", "C2"):
        v, stats = lw2_harness(RootDatum.parse(label), bound=3)
        total += len(v)
        details.append(f"{label}: {stats['checked']} checked, {stats['skipped']} skipped")
    report(8, total == 0, f"counterexamples: {total} ({'; '.join(details)})")


def test_criterion_09_bad_lagrangians():
    explicit_ok = True
    for d in (2, 3):
        rep = bad_lagrangian_search_report(SymplecticSpace(d), explicit_tuple(d))
        explicit_ok &= rep["W"] is None and rep["method"] == "structured"
    F = GF(5)
    V = SymplecticSpace(2, F)
    disagree = 0
    structured_compared = 0
    for tup in random_tuples(V, 200, seed=0):
        brute = bad_lagrangian_bruteforce(V, tup)
        if _pairwise_transverse(F, tup):
            W, _ = _structured(F, tup, 2)
            structured_compared += 1
            disagree += (W is None) != (brute is None)
        rep = bad_lagrangian_search_report(V, tup)
        disagree += (rep["W"] is None) != (brute is None)
    report(9, explicit_ok and disagree == 0,
           f"explicit tuple has no W for d=2,3: {explicit_ok}; disagreements over 200 tuples: {disagree} "
           f"({structured_compared} on the structured path)")


def test_criterion_10_end_lemma():
    f1 = frobcount.fejer_norm(1) == 19
    cb = frobcount.centralizer_bound(frobcount.CountBoundInput(2, 2, 1000))
    ex = cb.N == 4 and cb.bound == 750000
    ineq = all(frobcount.factor_inequality(N) for N in range(1, 10 ** 4 + 1))
    report(10, f1 and ex and ineq, f"fejer_norm(1)=19: {f1}; (2,2,1000)->(4,750000): {ex}; factor inequality N<=1e4: {ineq}")


def test_criterion_11_flat_sections():
    k = 200
    rng = stream(0, "acceptance-flat")
    residual_ok = 0
    for _ in range(50):
        r = rng.randint(1, 3)
        c = random_connection(r, k, rng)
        init = [rng.randint(-3, 3) or 1 for _ in range(r)]
        f = solve_flat_sections(c, init)
        residual_ok += all(x.is_zero() for x in flat_residual(c, f))
    mins = {}
    for p in (2, 3, 5):
        prng = stream(p, "acceptance-padic")
        worst = None
        for _ in range(50):
            r = prng.randint(1, 3)
            c = random_connection(r, k, prng, p=p)
            f = solve_flat_sections(c, [prng.randint(1, 3) for _ in range(r)])
            for x in f:
                _, mn = padic_valuation_profile(x, p)
                if mn is not None:
                    worst = mn if worst is None else min(worst, mn)
        mins[p] = worst
    B = [TruncatedSeries.make(c, 12) for c in ([1], [0, 1], [0, 0, 1])]
    rels = truncated_relations(B, 2)
    target = {(1, 0, 1): Fraction(1), (0, 2, 0): Fraction(-1)}
    has_rel = target in rels
    ok = residual_ok == 50 and all(m is not None and m >= -1 for m in mins.values()) and has_rel
    report(11, ok, f"residual vanishes {residual_ok}/50; valuation minima {mins}; x0*x2 - x1^2 found: {has_rel}")


def test_criterion_12_kp_parameters():
    params = affq.find_kp_prime(2, 1, 5, ())
    q = params.q
    # independent re-validation of every predicate
    facs = [r for r in range(3, q, 2) if (q - 1) % r == 0 and is_prime(r)]
    valid = (q == 71 and is_prime(q) and (q - 1) % 4 != 0 and all(r >= 5 for r in facs)
             and Fraction(5 * 2 ** 3, (q - 1) ** 2) < 1 / (Fraction(3, 2) * (q - 1) + 1))
    a, _ = affq.find_place_residue(71, 5, 1)
    orders = {}
    for r in facs:
        x, k = a % r, 1
        while x != 1:
            x = x * a % r
            k += 1
        orders[r] = k
    ok = valid and all(orders[r] == r - 1 for r in facs)
    report(12, ok, f"q = {q}, independent checks: {valid}; residue {a} orders {orders}")


def test_criterion_13_replay(tmp_path, monkeypatch, capsys):
    from periodkit.cli import main
    monkeypatch.chdir(tmp_path)
    (tmp_path / "s.json").write_text(json.dumps({"series": [["1"], ["0", "1"], ["0", "0", "1"]]}))
    runs = [
        ["frob-bound", "--q", "2", "--n", "2", "--b", "1000"],
        ["com-fibers", "--q", "3", "--s", "1"],
        ["centralizer", "--p", "3", "--e", "2", "--dim", "3", "--trials", "30", "--seed", "42"],
        ["hodge-scan", "--n-min", "20", "--n-max", "25", "--d-max", "120", "--jobs", "2"],
        ["lw2-sweep", "--type", "A2", "--jobs", "2"],
        ["relations", "--series", "s.json", "--degree", "2"],
        ["bad-lagrangian", "--explicit", "2"],
    ]
    mismatches = []
    for i, argv in enumerate(runs):
        assert main(argv + ["--out", f"run{i}.json"]) == 0
        capsys.readouterr()
        for jobs in ("1", "3"):
            code = main(["replay", f"run{i}.manifest.json", "--jobs", jobs])
            rep = json.loads(capsys.readouterr().out)
            if code != 0 or not (rep["rerun_matches"] and rep["file_matches"]):
                mismatches.append((argv[0], jobs))
    report(13, not mismatches, f"{len(runs)} manifests replayed with --jobs 1 and 3; mismatches: {mismatches}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
