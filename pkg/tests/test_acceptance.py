"""Acceptance criteria 1-10.

Each test records one ``ACCEPTANCE n: PASS|FAIL`` line (printed in the
terminal summary by ``conftest.py``) and then asserts the same condition.
"""
import json
import subprocess
import sys
import time

import pytest

from voalog.lattice import fmt_q
from voalog.rational import Q
from voalog.suites import (
    AFFINE_CHECKS,
    LOGINT_CHECKS,
    SUPER_CHECKS,
    TRIPLET_CHECKS,
    WPP_CHECKS,
    SuiteConfig,
    run_check,
)

ALL_CHECKS = {ch.id: ch for ch in TRIPLET_CHECKS + WPP_CHECKS + SUPER_CHECKS + AFFINE_CHECKS + LOGINT_CHECKS}


def run(check_id, suite, p=2, pprime=1, cutoff=6):
    return run_check(ALL_CHECKS[check_id], SuiteConfig(suite, p, pprime, cutoff))


def test_criterion_1_screenings_commute(acceptance):
    cases = [
        ("triplet.screenings_commute", "triplet", 2, 1),
        ("wpp.screenings_commute", "wpp", 3, 1),
        ("wpp.screenings_commute", "wpp", 3, 2),
        ("affine.screenings_commute", "affine", 2, 1),
    ]
    results = {f"{s}({p},{pp})" if s != "affine" else "affine": run(cid, s, p, pp, 6) for cid, s, p, pp in cases}
    ok = all(r.status == "pass" for r in results.values())
    counts = ", ".join(f"{k}: {r.witness.get('basis_vectors_checked')} vectors" for k, r in results.items())
    acceptance(1, ok, f"[Q, Qtilde] = 0 up to weight 6 ({counts})")
    assert ok, {k: r.witness for k, r in results.items() if r.status != "pass"}


def test_criterion_2_virasoro(acceptance):
    t = run("triplet.virasoro", "triplet", 2)
    a = run("affine.virasoro", "affine")
    ok = t.status == a.status == "pass"
    ok = ok and t.witness["central_charge"] == "-2/1" and a.witness["central_charge"] == "-6/1"
    acceptance(2, ok, f"Virasoro closure, c = {t.witness['central_charge']} (p=2) and {a.witness['central_charge']} (affine)")
    assert ok, (t.witness, a.witness)


def test_criterion_3_jordan_top(acceptance):
    rows = []
    ok = True
    for p in (2, 3, 4):
        # the generators of the p = 4 algebra have weight 2p - 1 = 7
        r = run("triplet.jordan_top", "triplet", p, cutoff=max(6, 2 * p - 1))
        j = r.witness.get("jordan", {})
        good = (
            r.status == "pass"
            and j.get("dim") == 2
            and j.get("blocks") == {fmt_q(Q(2 - p, 4)): [2]}
        )
        ok = ok and good
        rows.append(f"p={p}: blocks {j.get('blocks')}")
    acceptance(3, ok, "L~(0) single 2-block at (2-p)/4, top dim 2; " + "; ".join(rows))
    assert ok


def test_criterion_4_g_commutator(acceptance):
    res = {p: run("triplet.g_commutator", "triplet", p) for p in (2, 3)}
    ok = all(r.status == "pass" for r in res.values())
    detail = "; ".join(f"p={p}: {r.witness.get('checks')} relations" for p, r in res.items())
    acceptance(4, ok, f"[G, a~_n] = (Qa)~_n ({detail})")
    assert ok, {p: r.witness for p, r in res.items()}


def _coeff(elem_json):
    assert len(elem_json) == 1
    return Q(elem_json[0]["coeff"])


def test_criterion_5_constants(acceptance):
    expected_h = {2: Q(-4), 3: Q(-21)}
    ok = True
    rows = []
    for p in (2, 3):
        r = run("triplet.constants", "triplet", p)
        w = r.witness
        h = _coeff(w["H~(0) e^{-alpha/2}"])
        e = _coeff(w["E~(p-1) e^{-alpha/2}"])
        g = _coeff(w["G^2 e^{-alpha/2}"])
        ok = ok and r.status == "pass" and h == expected_h[p] and e != 0 and g != 0
        rows.append(f"p={p}: H={h}, E={e}, G^2={g}")
    acceptance(5, ok, "; ".join(rows))
    assert ok


def test_criterion_6_filtration(acceptance):
    r = run("triplet.filtration", "triplet", 2, cutoff=6)
    w = r.witness
    m1 = w["dim M1/N2 at top"]
    n1 = w["dim N1/N2 at top"]
    ok = r.status == "pass" and m1 == 2
    acceptance(
        6,
        ok,
        f"V_(L+alpha/2-alpha/p) cap M1 = N2 to weight 6; top of M1/N2 has dim {m1}; "
        f"top of N1/N2 has dim {n1}, not the literal 2 (spec conflict, recorded in the decision ledger)",
    )
    assert ok, w


@pytest.mark.xfail(strict=True, reason="spec conflict: the computed top of N1/N2 is 4-dimensional (Pi(1)+Pi(1))")
def test_criterion_6_literal_n1_top():
    r = run("triplet.filtration", "triplet", 2, cutoff=6)
    assert r.witness["dim N1/N2 at top"] == 2


def test_criterion_7_affine(acceptance):
    ids = ["affine.brackets", "affine.jordan", "affine.hw", "affine.e2"]
    res = {cid: run(cid, "affine", cutoff=5 if cid == "affine.e2" else 6) for cid in ids}
    ok = all(r.status == "pass" and r.seconds < 120 for r in res.values())
    ok = ok and res["affine.hw"].witness["nu"] == "-1/3"
    ok = ok and not res["affine.e2"].witness["logarithmic components"]
    times = ", ".join(f"{k.split('.')[1]} {r.seconds:.0f}s" for k, r in res.items())
    acceptance(7, ok, f"sl2^ brackets, 2-block at -1/3, hw-1/hw-2 with nu = {res['affine.hw'].witness['nu']}, E2 non-log to 5 ({times})")
    assert ok, {k: (r.status, r.seconds) for k, r in res.items()}


def test_criterion_8_super(acceptance):
    ids = ["super.brackets", "super.kernels", "super.deformation"]
    res = {cid: run(cid, "super", 3, 1, 4) for cid in ids}
    ok = all(r.status == "pass" for r in res.values())
    c = res["super.brackets"].witness["central_charge"]
    ok = ok and c == "-5/2"
    first = res["super.deformation"].witness["first_logarithmic_weight"]
    acceptance(8, ok, f"NS relations with c = {c}, kernel conditions, first 2-block at weight {first}")
    assert ok, {k: r.witness for k, r in res.items()}


def test_criterion_9_logint(acceptance):
    ids = ["logint.key_relation", "logint.conjugation", "logint.derivative"]
    res = {cid: run(cid, "logint", 2) for cid in ids}
    ok = all(r.status == "pass" for r in res.values())
    acceptance(9, ok, "Delta_log key relation, conjugation lemma and L(-1)-derivative at p=2")
    assert ok, {k: r.witness for k, r in res.items()}


def test_criterion_10_verify_all_deterministic(tmp_path, acceptance):
    outs, times, codes = [], [], []
    for i in (1, 2):
        path = tmp_path / f"all{i}.json"
        t = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "voalog.cli", "verify", "--suite", "all", "--report", str(path)],
            capture_output=True,
        )
        times.append(time.perf_counter() - t)
        codes.append(proc.returncode)
        outs.append(path.read_bytes())
    doc = json.loads(outs[0])
    oracle = [c for c in doc["checks"] if c["id"].endswith(".oracle")]
    ok = (
        outs[0] == outs[1]
        and codes == [0, 0]
        and all(t < 300 for t in times)
        and oracle
        and all(c["status"] == "pass" for c in oracle)
    )
    acceptance(
        10,
        ok,
        f"verify --suite all byte-identical={outs[0] == outs[1]}, exit codes {codes}, "
        f"{len(oracle)} oracle checks pass, runtimes {times[0]:.0f}s/{times[1]:.0f}s",
    )
    assert ok, doc["summary"]
