from fractions import Fraction

import pytest

from bethe_weights.errors import InvariantError, PoleError, ValidationError
from bethe_weights.jobs import (apply_to_singular, canonical_bytes, compute, explain, fingerprint,
                                parse_job, parse_result, serialize_result)
from bethe_weights.modules import ModuleSpec, build_module
from bethe_weights.series import EvalModule

F = Fraction


def job(**over):
    doc = {
        "case": "rational", "n": 3,
        "modules": [{"n": 3, "realization": {"kind": "vector"}, "x": "1/3"}],
        "xi": [1, 1], "t": [["2/5"], ["-1/7"]], "method": "trace",
    }
    doc.update(over)
    return doc


@pytest.mark.parametrize("over,path", [
    ({"t": [["1/0"], ["1"]]}, "/t/0/0"),
    ({"t": [["1"], ["1", "2"]]}, "/t/1"),
    ({"xi": [1]}, "/xi"),
    ({"xi": [1, -1]}, "/xi/1"),
    ({"case": "elliptic"}, "/case"),
    ({"case": "trigonometric"}, "/q"),
    ({"case": "trigonometric", "q": "1"}, "/q"),
    ({"q": "2"}, "/q"),
    ({"method": "guess"}, "/method"),
    ({"modules": []}, "/modules"),
    ({"modules": [{"n": 2, "x": "0"}]}, "/modules/0/n"),
    ({"bogus": 1}, "/bogus"),
])
def test_validation_paths(over, path):
    with pytest.raises(ValidationError) as exc:
        parse_job(job(**over))
    assert exc.value.path == path


def test_route_methods_need_one_module():
    mods = [{"n": 3, "x": "0"}, {"n": 3, "x": "1/2"}]
    with pytest.raises(ValidationError) as exc:
        parse_job(job(modules=mods, method="closed-first"))
    assert exc.value.path == "/modules"


def test_job_round_trip():
    spec = parse_job(job(case="trigonometric", q="2/3"))
    assert parse_job(spec.to_json()) == spec
    assert spec.to_json()["q"] == "2/3"


def test_fingerprint_ignores_method_only():
    a = parse_job(job())
    assert fingerprint(a) == fingerprint(parse_job(job(method="closed-last")))
    assert fingerprint(a) != fingerprint(parse_job(job(t=[["2/5"], ["-1/6"]])))


def test_empty_composition_returns_singular_vector():
    res = compute(parse_job(job(xi=[0, 0], t=[[], []])))
    assert res["coordinates"] == ["1/1", "0/1", "0/1"]
    assert res["weight"] == [1, 0, 0]


def test_rank_two_vector_coordinates():
    doc = job(n=2, modules=[{"n": 2, "x": "1/3"}], xi=[1], t=[["-3/7"]])
    res = compute(parse_job(doc))
    t, x = F(-3, 7), F(1, 3)
    assert res["coordinates"] == ["0/1", f"{(1 / (t - x)).numerator}/{(1 / (t - x)).denominator}"]
    assert res["weight"] == [0, 1]


def test_methods_give_identical_bytes_modulo_method():
    out = {}
    for method in ("trace", "recursion-first", "recursion-last", "closed-first", "closed-last",
                   "tensor-split"):
        res = compute(parse_job(job(method=method)))
        res.pop("method")
        out[method] = canonical_bytes(res)
    assert len(set(out.values())) == 1


def test_two_factor_split_matches_trace():
    mods = [{"n": 2, "x": "1/3"}, {"n": 2, "x": "-1/2"}]
    doc = job(n=2, modules=mods, xi=[2], t=[["3/5", "-7/4"]])
    a = compute(parse_job(doc))
    b = compute(parse_job(dict(doc, method="tensor-split")))
    assert a["coordinates"] == b["coordinates"]
    assert a["basis"] == ["1⊗1", "1⊗2", "2⊗1", "2⊗2"]


def test_pole_is_reported():
    with pytest.raises(PoleError):
        compute(parse_job(job(t=[["1/3"], ["5"]])))


def test_result_round_trip():
    res = compute(parse_job(job()))
    assert serialize_result(parse_result(res)) == res


def test_canonical_bytes_are_compact_and_sorted():
    assert canonical_bytes({"b": 1, "a": [1, 2]}) == b'{"a":[1,2],"b":1}\n'


def test_explain_reference_expansions():
    out = explain(parse_job(job()))
    terms = {m["monomial"]: m["coefficient"] for m in out["monomials"]}
    assert terms == {"T_{12}(t^1_1)T_{23}(t^2_1)": "1/1", "T_{13}(t^1_1)T_{22}(t^2_1)": "-35/19"}
    n2 = explain(parse_job(job(n=2, modules=[{"n": 2, "x": "0"}], xi=[2], t=[["1", "3"]])))
    assert n2["monomials"] == [{"monomial": "T_{12}(t^1_1)T_{12}(t^1_2)", "coefficient": "1/1"}]


def test_explain_preconditions():
    with pytest.raises(ValidationError):
        explain(parse_job(job(method="closed-first")))
    big = job(xi=[2, 2], t=[["1", "3"], ["5", "7"]])
    with pytest.raises(ValidationError):
        explain(parse_job(big))


def test_apply_to_singular_checks_the_weight():
    m = build_module(ModuleSpec(2, "vector", F(0)))
    s = EvalModule(m, F(1, 3))
    assert apply_to_singular(s.identity(), s, m.vector, m.lam, [0]) == m.vector
    assert apply_to_singular(s.T(1, 2, F(2)), s, m.vector, m.lam, [1]) == [0, F(3, 5)]
    with pytest.raises(InvariantError):
        apply_to_singular(s.T(1, 1, F(2)) + s.T(1, 2, F(2)), s, m.vector, m.lam, [1])
