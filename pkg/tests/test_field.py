from fractions import Fraction

import pytest

from bethe_weights.errors import PoleError, ValidationError
from bethe_weights.field import (check_q, div, factorial, format_scalar, parse_scalar,
                                 q_factorial, q_number)


def test_parse_and_format_round_trip():
    for text in ["3/7", "-3/7", "0/1", "12/1"]:
        assert format_scalar(parse_scalar(text)) == text
    assert parse_scalar("6/-4") == Fraction(-3, 2)
    assert format_scalar(Fraction(6, -4)) == "-3/2"
    assert parse_scalar("5") == 5
    assert parse_scalar(4) == 4


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", "", "1//2"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValidationError) as exc:
        parse_scalar(bad, "/t/0/0")
    assert exc.value.path == "/t/0/0"


def test_parse_rejects_floats_and_bools():
    with pytest.raises(ValidationError):
        parse_scalar(0.5)
    with pytest.raises(ValidationError):
        parse_scalar(True)


def test_div_names_vanishing_factor():
    assert div(1, 4) == Fraction(1, 4)
    with pytest.raises(PoleError) as exc:
        div(1, 0, "t^2_1 - t^1_1")
    assert "t^2_1 - t^1_1" in str(exc.value)


def test_q_numbers():
    assert q_number(2, 2) == Fraction(5, 2)
    q = Fraction(2, 3)
    assert q_number(2, q) == q + 1 / q
    assert q_number(1, q) == 1
    assert q_factorial(0, q) == 1
    assert q_factorial(3, q) == q_number(2, q) * q_number(3, q)
    assert factorial(0) == 1 and factorial(5) == 120


@pytest.mark.parametrize("q", [0, 1, -1, None])
def test_check_q_rejects_degenerate(q):
    with pytest.raises(ValidationError):
        check_q(q)
