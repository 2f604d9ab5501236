"""Acceptance suite: one test per criterion, each at full scale.

The conftest hook prints a ``CRITERION n: PASS/FAIL`` line per test.  Grids
shared between criteria are run once and cached together with their
wall-clock time.  BETHE_WORKERS parallelizes the grids; the runtime bounds
are meant to hold serially as well.
"""

import json
import random
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from bethe_weights import verify
from bethe_weights.cli import main
from bethe_weights.expansions import REFERENCE_CELLS, reference_expansion
from bethe_weights.field import format_scalar

TRIG_QS = (Fraction(2), Fraction(2, 3))


@lru_cache(maxsize=None)
def run_grid(name):
    """(tasks, entries, seconds) for a named acceptance grid."""
    if name == "r-matrix":
        tasks = verify.grid_r_matrix("full")
    elif name == "rtt":
        tasks = [t for t in verify.grid_rtt("full")
                 if t[1]["case"] == "rational" and t[0] in ("rtt", "gl-invariance")]
    elif name == "routes-rational":
        tasks = [t for t in verify.grid_routes("full", TRIG_QS) if t[1]["case"] == "rational"]
    elif name == "routes-trig":
        tasks = [t for t in verify.grid_routes("full", TRIG_QS) if t[1]["case"] != "rational"]
    elif name == "split":
        tasks = verify.grid_splits("full", TRIG_QS)
    elif name == "identities":
        tasks = verify.grid_identities("full") + verify.grid_section5("full")
    elif name == "coset":
        tasks = verify.grid_cosets("full")
    else:
        raise KeyError(name)
    start = time.perf_counter()
    entries = verify.run_tasks(tasks, seed=0, workers=verify.workers_from_env())
    return tasks, entries, time.perf_counter() - start


def assert_clean(entries, minimum=1):
    bad = [e.to_json() for e in entries if e.verdict != "pass"]
    assert not bad, json.dumps(bad[:3], ensure_ascii=False)[:2000]
    assert len(entries) >= minimum


def checks(entries, name):
    return [e for e in entries if e.check == name]


def test_criterion_1_r_matrix():
    tasks, entries, seconds = run_grid("r-matrix")
    assert_clean(entries)
    for check in ("yang-baxter", "inversion"):
        cells = {(e.point["cell"]["case"], e.point["cell"]["n"], e.point["cell"]["q"])
                 for e in checks(entries, check)}
        assert len(cells) == 3 * (1 + 3)
        assert len(checks(entries, check)) == 20 * len(cells)
    assert seconds < 10


def test_criterion_2_rtt_and_invariance():
    tasks, entries, seconds = run_grid("rtt")
    assert_clean(entries)
    sizes = {len(t[1]["modules"]) for t in tasks}
    assert sizes == {1, 2}
    assert {t[1]["n"] for t in tasks} == {2, 3}
    assert all(t[2] == 10 for t in tasks)
    assert seconds < 30


def _job(case, n, xi, t, q):
    doc = {"case": case, "n": n, "modules": [{"n": n, "x": "0"}], "xi": list(xi),
           "t": [[format_scalar(s) for s in row] for row in t], "method": "trace"}
    if q is not None:
        doc["q"] = format_scalar(q)
    return doc


def test_criterion_3_reference_expansions(tmp_path):
    start = time.perf_counter()
    rng = random.Random("reference-expansions")
    checked = 0
    for case, n, xi in REFERENCE_CELLS:
        for point in range(5):
            smp = verify.Sampler(rng.random())
            q = None if case == "rational" else TRIG_QS[point % 2]
            vals = smp.generic(sum(xi), q)
            t, pos = [], 0
            for k in xi:
                t.append(vals[pos:pos + k])
                pos += k
            job = tmp_path / "job.json"
            out = tmp_path / "expansion.json"
            job.write_text(json.dumps(_job(case, n, xi, t, q)))
            assert main(["explain", str(job), "-o", str(out)]) == 0
            got = {m["monomial"]: m["coefficient"] for m in json.loads(out.read_text())["monomials"]}
            expected = {k: format_scalar(v) for k, v in reference_expansion(case, n, xi, t, q).items()
                        if v != 0}
            assert got == expected, (case, n, xi, t)
            checked += 1
    assert checked == 5 * len(REFERENCE_CELLS)
    assert time.perf_counter() - start < 60


def _route_coverage(tasks, case):
    cells = {(t[1]["n"], tuple(t[1]["modules"][0]), tuple(t[1]["xi"]), t[1]["q"])
             for t in tasks if t[0] == "route"}
    ns = {c[0] for c in cells}
    kinds = {c[1][0] for c in cells}
    assert ns == {2, 3, 4}
    assert kinds == {"vector", "wedge_power", "symmetric_power"}
    assert all(sum(c[2]) <= 3 for c in cells)
    routes = {t[1]["route"] for t in tasks if t[0] == "route"}
    assert routes == set(verify.ROUTES)
    assert all(t[2] >= 20 for t in tasks if t[0] == "route")
    return cells


def test_criterion_4_rational_routes():
    tasks, entries, seconds = run_grid("routes-rational")
    assert_clean(entries)
    cells = _route_coverage(tasks, "rational")
    assert {c[3] for c in cells} == {None}
    assert seconds < 600


def test_criterion_5_trigonometric_routes():
    tasks, entries, seconds = run_grid("routes-trig")
    assert_clean(entries)
    cells = _route_coverage(tasks, "trigonometric")
    assert {c[3] for c in cells} == {format_scalar(q) for q in TRIG_QS}
    assert seconds < 900


def test_criterion_6_tensor_split():
    tasks, entries, seconds = run_grid("split")
    assert_clean(entries)
    forms = {(t[1]["factors"], t[1]["form"]) for t in tasks if t[0] == "split"}
    assert forms == {(2, "n-ary"), (3, "n-ary"), (3, "iterated")}
    assert {t[1]["n"] for t in tasks} == {2, 3}
    assert seconds < 300


def test_criterion_7_identities():
    tasks, entries, seconds = run_grid("identities")
    assert_clean(entries)
    names = {t[1].get("identity") or t[1].get("relation") for t in tasks}
    assert {"factorial-sum", "shifted-sum", "shifted-sum-mirror", "q-shifted-sum", "q-shifted-sum-mirror", "level-sum"} <= names
    assert {"AA", "BBR", "AB", "DB", "DD", "ABB", "DBB", "B-coproduct"} <= names
    ks = {t[1]["k"] for t in tasks if t[1].get("identity") == "factorial-sum"}
    assert ks == set(range(7))
    assert max(t[1].get("k", 0) for t in tasks if t[1].get("relation") in ("ABB", "DBB")) == 3
    assert seconds < 300


def test_criterion_8_invariances():
    seen = 0
    for name in ("routes-rational", "routes-trig", "split"):
        tasks, entries, _ = run_grid(name)
        assert_clean(entries)
        # every cell with a same-level pair has a symmetry check and a weight check
        for check, cell, _ in tasks:
            if check not in ("route", "split"):
                continue
            base = {k: v for k, v in cell.items() if k not in ("route", "form")}
            if any(k > 1 for k in cell["xi"]):
                assert ("symmetry", base) in [(t[0], t[1]) for t in tasks]
            assert ("weight", base) in [(t[0], t[1]) for t in tasks]
            seen += 1
    assert seen
    tasks, entries, _ = run_grid("coset")
    assert_clean(entries)
    families = {(c["case"], c["n"], tuple(c["xi"]), tuple(c["eta"]), c["q"]) for _, c, _ in tasks}
    assert len(families) == 10
    assert {c["system"] for _, c, _ in tasks} == {"shuffle", "reversed"}


def test_criterion_9_determinism(tmp_path, monkeypatch):
    job = {"case": "trigonometric", "n": 3, "q": "2/3",
           "modules": [{"n": 3, "realization": {"kind": "symmetric_power", "k": 2}, "x": "1/5"}],
           "xi": [2, 1], "t": [["1/3", "-2/7"], ["5/4"]], "method": "closed-last"}
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job))
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        assert main(["compute", str(path), "-o", str(out)]) == 0
        outs.append(out.read_bytes())
        out = tmp_path / f"e{i}.json"
        job_trace = dict(job, method="trace")
        (tmp_path / "jt.json").write_text(json.dumps(job_trace))
        assert main(["explain", str(tmp_path / "jt.json"), "-o", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[2] and outs[1] == outs[3]

    reports = []
    for workers in ("1", "1", "2"):
        monkeypatch.setenv("BETHE_WORKERS", workers)
        out = tmp_path / f"v{len(reports)}.json"
        assert main(["verify", "--suite", "identities", "--seed", "11", "--scale", "small",
                     "-o", str(out)]) == 0
        reports.append(out.read_bytes())
    assert reports[0] == reports[1] == reports[2]


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
