"""Exact rational scalars.

Scalars are plain :class:`fractions.Fraction` values.  Fraction already keeps
the canonical form (positive denominator, reduced), so this module only adds
parsing, formatting, pole-aware division and the q-numbers.
"""

from fractions import Fraction
import re

from .errors import PoleError, ValidationError

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def make_scalar(numerator, denominator=1):
    """Return numerator/denominator in canonical form."""
    if denominator == 0:
        raise PoleError("denominator of make_scalar", (numerator, denominator))
    return Fraction(int(numerator), int(denominator))


def parse_scalar(text, path=""):
    """Parse ``"p/q"`` or ``"p"``; integers are accepted as well."""
    if isinstance(text, bool):
        raise ValidationError("expected a scalar string, got a boolean", path)
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValidationError(f"expected a scalar string like \"-3/7\", got {text!r}", path)
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValidationError(f"malformed scalar {text!r}", path)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValidationError(f"zero denominator in scalar {text!r}", path)
    return Fraction(num, den)


def format_scalar(value):
    """Canonical text form ``"p/q"`` with the sign on the numerator."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def arithmetic(op, a, b):
    """Apply ``op`` in {add, sub, mul, div, pow} to exact operands."""
    a = Fraction(a)
    if op == "add":
        return a + Fraction(b)
    if op == "sub":
        return a - Fraction(b)
    if op == "mul":
        return a * Fraction(b)
    if op == "div":
        b = Fraction(b)
        if b == 0:
            raise PoleError("division by zero", (format_scalar(a), format_scalar(b)))
        return a / b
    if op == "pow":
        if isinstance(b, Fraction):
            if b.denominator != 1:
                raise ValueError("pow needs an integer exponent")
            b = b.numerator
        if b < 0 and a == 0:
            raise PoleError("negative power of zero", (format_scalar(a), b))
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def div(num, den, what="denominator"):
    """num/den, raising :class:`PoleError` naming ``what`` if den vanishes."""
    if den == 0:
        raise PoleError(what)
    return Fraction(num) / den


def inv(den, what="denominator"):
    return div(ONE, den, what)


def check_q(q, path="/q"):
    """Reject q values the trigonometric case cannot use."""
    if q is None:
        raise ValidationError("the trigonometric case needs q", path)
    q = Fraction(q)
    if q in (0, 1, -1):
        raise ValidationError(f"q must not be 0 or +-1, got {format_scalar(q)}", path)
    return q


def q_number(n, q):
    """[n]_q = (q^n - q^-n)/(q - q^-1)."""
    q = Fraction(q)
    return (q ** n - q ** (-n)) / (q - 1 / q)


def q_factorial(n, q):
    """[n]_q! = [1]_q ... [n]_q; raises PoleError if some factor is zero."""
    out = ONE
    for r in range(1, n + 1):
        f = q_number(r, q)
        if f == 0:
            raise PoleError(f"[{r}]_q = 0 in [{n}]_q!")
        out *= f
    return out


def factorial(n):
    out = 1
    for r in range(2, n + 1):
        out *= r
    return out
