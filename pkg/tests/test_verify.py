from fractions import Fraction

import pytest

from bethe_weights import verify
from bethe_weights.errors import PoleError, ValidationError

F = Fraction


def test_sampler_is_reproducible_and_generic():
    a = verify.Sampler("0|x|cell|1").generic(5, F(2))
    b = verify.Sampler("0|x|cell|1").generic(5, F(2))
    assert a == b
    assert verify.Sampler._generic(a, F(2))
    assert all(abs(v.numerator) <= 13 and v.denominator <= 13 for v in a)
    assert not verify.Sampler._generic([F(1), F(2)], None)
    assert not verify.Sampler._generic([F(1), F(4)], F(2))


def test_failures_are_reported_with_values():
    entries = verify.run_points("demo", {"k": 1}, 0, 2, lambda smp: ({"u": F(1)}, F(1), F(2)))
    assert [e.verdict for e in entries] == ["fail", "fail"]
    assert entries[0].detail == {"left": "1/1", "right": "2/1", "difference": "-1/1"}


def test_poles_are_resampled_then_skipped():
    calls = []

    def body(smp):
        calls.append(1)
        raise PoleError("t - t")

    entries = verify.run_points("demo", {}, 0, 1, body)
    assert entries[0].verdict == "skipped"
    assert len(calls) == verify.MAX_TRIES

    state = {"n": 0}

    def flaky(smp):
        state["n"] += 1
        if state["n"] < 3:
            raise PoleError("t - t")
        return {}, 1, 1

    entries = verify.run_points("demo", {}, 0, 1, flaky)
    assert entries[0].verdict == "pass" and entries[0].point["attempt"] == 2


def test_single_entry_is_reproducible():
    tasks = verify.suite_tasks("identities", "small")
    full = verify.run_tasks(tasks[:5], seed=4)
    again = verify.run_task(tasks[3], seed=4)
    index = sum(t[2] for t in tasks[:3])
    assert full[index].to_json() == again[0].to_json()


def test_parallel_equals_serial():
    tasks = verify.suite_tasks("r-matrix", "small")[:8]
    serial = [e.to_json() for e in verify.run_tasks(tasks, 1, workers=1)]
    parallel = [e.to_json() for e in verify.run_tasks(tasks, 1, workers=2)]
    assert serial == parallel


def test_unknown_suite_and_scale():
    with pytest.raises(ValidationError):
        verify.suite_tasks("everything")
    with pytest.raises(ValidationError):
        verify.suite_tasks("rtt", "huge")


def test_workers_from_env(monkeypatch):
    monkeypatch.delenv("BETHE_WORKERS", raising=False)
    assert verify.workers_from_env() == 1
    monkeypatch.setenv("BETHE_WORKERS", "0")
    assert verify.workers_from_env() == 1
    monkeypatch.setenv("BETHE_WORKERS", "4")
    assert verify.workers_from_env() == 4


def test_a_broken_r_matrix_is_caught(monkeypatch):
    # negative control: the Yang-Baxter check must notice a wrong spectral shift
    real = verify.r_matrix
    monkeypatch.setattr(verify, "r_matrix", lambda case, n, u, q=None: real(case, n, u + 1, q))
    entries = verify.run_task(("yang-baxter", {"case": "rational", "n": 2, "q": None}, 2), 0)
    assert any(e.verdict == "fail" for e in entries)


def test_compositions():
    assert verify.compositions(2, 2) == [[0, 1], [0, 2], [1, 0], [1, 1], [2, 0]]
