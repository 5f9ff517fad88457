"""Numbered acceptance criteria.

Each test prints exactly one ``C<k> PASS|FAIL ...`` line, also collected in
the terminal summary.  Arithmetic is exact, so the only pinned tolerances are
the wall-clock limits below and the window sizes inside the suites.
"""
import time

import pytest

from conftest import ACCEPTANCE_LINES
from wshuffle.suites import QUOTIENT_CASES, RELATION_CASES, Config, run
from wshuffle.wrels import all_jwords, residues_crosscheck

pytestmark = pytest.mark.acceptance

LIMITS = {1: 10, 2: 5, 3: 120, 4: 120, 5: 60, 6: 1800, 7: 300, 8: 10, 9: 60, 10: 300, 11: 300}


def _record(num, title, reports, elapsed, extra=""):
    bad = [r for r in reports if r.status == "fail"]
    ok = bool(reports) and not bad and elapsed < LIMITS[num]
    line = (f"C{num} {'PASS' if ok else 'FAIL'} {title}: {len(reports) - len(bad)}/{len(reports)} reports pass, "
            f"{elapsed:.1f}s (limit {LIMITS[num]}s){extra}")
    print(line)
    ACCEPTANCE_LINES.append(line)
    first = bad[0].witnesses[0] if bad else None
    detail = f"{bad[0].name} {bad[0].params}: at {first.location}, expected {first.expected}, got {first.actual}" if bad else ""
    assert not bad, detail
    assert elapsed < LIMITS[num], f"took {elapsed:.1f}s"
    assert reports


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_c01_rmatrix():
    reps, dt = _timed(lambda: list(run("rmatrix", Config(n=(1, 2, 3)))))
    names = {r.name for r in reps}
    assert {"ybe", "unitarity", "R_residue", "property", "elem2", "elem3"} <= names, names
    _record(1, "R-matrix identities n=1..3", reps, dt)


def test_c02_braid_lift():
    reps, dt = _timed(lambda: [r for r in run("shuffle", Config(n=(2,))) if r.name == "braid_lift"])
    assert len(reps) == 6
    assert any(len(r.params["words"]) >= 2 for r in reps)
    _record(2, "braid lifts over S(3), n=2", reps, dt)


def test_c03_pairing_routes():
    def go():
        return [r for r in run("pairing", Config()) if r.name in ("degree_one", "P1_vs_P2")]

    reps, dt = _timed(go)
    routes = [r for r in reps if r.name == "P1_vs_P2"]
    assert len(routes) >= 50
    assert all(len(r.params["plus"]) <= 3 and r.params["n"] <= 2 for r in routes)
    nonzero = sum(r.note == "nonzero" for r in routes)
    _record(3, "P1 = P2 and degree-one pairing", reps, dt, f", {nonzero} nonzero random pairs")


def test_c04_pair_f():
    from wshuffle.suites import _pair_f

    reps, dt = _timed(lambda: list(_pair_f(Config())))
    assert {r.name for r in reps} == {"pair_f_t1", "pair_f_t2"}
    _record(4, "stringing-arc pairing t<=2, n=2", reps, dt)


def test_c05_pair_w():
    from wshuffle.suites import _pair_w

    reps, dt = _timed(lambda: list(_pair_w(Config(n=(1, 2), k=(1, 2)))))
    _record(5, "W-truncation pairing k,n in {1,2}", reps, dt)


def test_c06_wrels_main():
    def go():
        out = []
        for n, k, kp in RELATION_CASES:
            out += list(run("wrels", Config(n=(n,), k=(k,), kprime=(kp,), N=3)))
        return out

    reps, dt = _timed(go)
    expected = sum(len(all_jwords(n, k + kp)) for n, k, kp in RELATION_CASES)
    assert len(reps) == expected
    assert all(r.name == "relation" and r.params["N"] == 3 for r in reps)
    _record(6, "w-relations (1,1,1),(2,1,1),(1,1,2) with window stability", reps, dt)


def test_c07_quotient():
    def go():
        out = []
        for n, k, kp, r in QUOTIENT_CASES:
            out += list(run("wrels", Config(n=(n,), k=(k,), kprime=(kp,), extras={"r": r})))
        return out

    reps, dt = _timed(go)
    assert all(r.params.get("r") == 1 and r.params["kprime"] == 2 for r in reps)
    _record(7, "quotient r=1, k'=2 both sides vanish", reps, dt)


def test_c08_miura():
    reps, dt = _timed(lambda: list(run("miura", Config())))
    assert {r.params["r"] for r in reps if r.name == "miura_vs_bar_w"} == {1, 2, 3, 4}
    assert any(r.name == "r2_display" for r in reps)
    _record(8, "Miura expansion r=1..4 and r=2 display", reps, dt)


def test_c09_classical_limit():
    reps, dt = _timed(lambda: list(run("limit", Config(n=(1, 2, 3)))))
    _record(9, "classical-limit identities n=1..3", reps, dt)


def test_c10_toroidal():
    reps, dt = _timed(lambda: list(run("toroidal", Config())))
    names = {r.name for r in reps}
    assert {"kernel_identity", "floor_identity", "arc_exponent"} <= names, names
    _record(10, "toroidal of/floor/arc identities", reps, dt)


def test_c11_residues():
    def go():
        return [residues_crosscheck(1, 1, 1, J) for J in all_jwords(1, 2)]

    reps, dt = _timed(go)
    for r in reps:
        if r.status == "inconclusive":
            assert "overflow" in r.note, r.note
    seen = set().union(*(r.params["poles_seen"] for r in reps if r.status == "pass"))
    assert seen == {"p^-2", "p^2"}, seen
    _record(11, "residue reconstruction (1,1,1)", reps, dt, f", poles {sorted(seen)}")
