import json

from bethe_weights.cli import main

JOB = {
    "case": "rational", "n": 3,
    "modules": [{"n": 3, "realization": {"kind": "wedge_power", "k": 2}, "x": "1/3"}],
    "xi": [1, 1], "t": [["2/5"], ["-1/7"]], "method": "trace",
}


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(p)


def test_compute_writes_canonical_result(tmp_path):
    out = tmp_path / "out.json"
    assert main(["compute", write(tmp_path, "job.json", JOB), "-o", str(out)]) == 0
    data = out.read_bytes()
    doc = json.loads(data)
    assert set(doc) == {"basis", "coordinates", "weight", "method", "manifest"}
    assert data == (json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
                    + "\n").encode()


def test_compute_is_deterministic(tmp_path):
    job = write(tmp_path, "job.json", JOB)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["compute", job, "-o", str(a)])
    main(["compute", job, "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_exit_codes(tmp_path, capsys):
    bad = dict(JOB, t=[["1/0"], ["1"]])
    assert main(["compute", write(tmp_path, "bad.json", bad), "-o", str(tmp_path / "x")]) == 2
    assert "/t/0/0" in capsys.readouterr().err
    assert main(["compute", write(tmp_path, "junk.json", "{"), "-o", str(tmp_path / "x")]) == 2
    assert main(["compute", str(tmp_path / "missing.json")]) == 2
    pole = dict(JOB, t=[["1/3"], ["2"]])
    assert main(["compute", write(tmp_path, "pole.json", pole), "-o", str(tmp_path / "x")]) == 3
    assert main(["verify", "--suite", "nonsense"]) == 2


def test_explain_command(tmp_path):
    out = tmp_path / "exp.json"
    assert main(["explain", write(tmp_path, "job.json", JOB), "-o", str(out)]) == 0
    labels = [m["monomial"] for m in json.loads(out.read_text())["monomials"]]
    assert labels == ["T_{12}(t^1_1)T_{23}(t^2_1)", "T_{13}(t^1_1)T_{22}(t^2_1)"]


def test_verify_command(tmp_path, monkeypatch):
    monkeypatch.setenv("BETHE_WORKERS", "1")
    out = tmp_path / "rep.json"
    assert main(["verify", "--suite", "r-matrix", "--seed", "3", "--scale", "small", "-o", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["summary"]["fail"] == 0 and rep["manifest"]["seed"] == 3


def test_bad_worker_setting(tmp_path, monkeypatch):
    monkeypatch.setenv("BETHE_WORKERS", "many")
    assert main(["verify", "--suite", "r-matrix", "-o", str(tmp_path / "r.json")]) == 2
