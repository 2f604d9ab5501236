from fractions import Fraction

import pytest

from bethe_weights.components import LAST_READINGS, component_recursion
from bethe_weights.errors import BetheError, ValidationError
from bethe_weights.modules import ModuleSpec, build_module
from bethe_weights.series import EvalModule
from bethe_weights.trace import weight_trace

F = Fraction


def series(n, kind="vector", k=1, x=F(2, 7)):
    return EvalModule(build_module(ModuleSpec(n, kind, F(0), k)), x)


def test_rank_two_collapses_to_product():
    s = series(2, "symmetric_power", 2)
    t = [[F(1, 3), F(-1, 2)]]
    for d in ("first", "last"):
        assert component_recursion(s, [2], t, d) == s.T(1, 2, t[0][0]) @ s.T(1, 2, t[0][1])


@pytest.mark.parametrize("direction", ["first", "last"])
@pytest.mark.parametrize("kind,k", [("vector", 1), ("wedge_power", 2), ("symmetric_power", 2)])
def test_matches_trace_rank_three(direction, kind, k):
    s = series(3, kind, k)
    t = [[F(1, 3), F(-2, 5)], [F(5, 4)]]
    assert component_recursion(s, [2, 1], t, direction) == weight_trace(s, [2, 1], t)


@pytest.mark.parametrize("direction", ["first", "last"])
def test_matches_trace_rank_four(direction):
    s = series(4)
    t = [[F(1, 3)], [F(-2, 5)], [F(5, 4)]]
    assert component_recursion(s, [1, 1, 1], t, direction) == weight_trace(s, [1, 1, 1], t)


def test_last_level_readings():
    # the T_{a,N} pattern at last-level points agrees in either factor order;
    # the T_{a+1,1} pattern and first-level points do not
    s = series(3, "symmetric_power", 2)
    t = [[F(1, 3), F(-2, 5)], [F(5, 4), F(-7, 3)]]
    ref = weight_trace(s, [2, 2], t)
    for reading in LAST_READINGS:
        try:
            same = component_recursion(s, [2, 2], t, "last", reading) == ref
        except (BetheError, ValueError):
            same = False
        assert same == (reading[:2] == ("a,N", "last-level")), reading


def test_trigonometric_case_is_rejected():
    m = build_module(ModuleSpec(3, "vector", F(0)), "trigonometric", F(2))
    with pytest.raises(ValidationError):
        component_recursion(EvalModule(m, 0), [1, 1], [[F(1)], [F(3)]])
