"""Reference monomial expansions of B_ξ(t) for small ranks.

These are the known closed expansions for N = 2 (any ξ), N = 3 with
ξ = (1, 1) and N = 4 with ξ = (1, 1, 1), rational and trigonometric, written
as label → coefficient in the labelling used by ``trace.monomials``.
"""

from .errors import ValidationError
from .field import ONE, div


def _label(name, pairs):
    return "".join(f"{name}_{{{a}{b}}}(t^{lvl}_{i})" for a, b, lvl, i in pairs)


def reference_expansion(case, n, xi, t, q=None):
    name = "T" if case == "rational" else "L^-"
    xi = list(xi)
    if n == 2:
        pairs = [(1, 2, 1, i + 1) for i in range(xi[0])]
        return {_label(name, pairs): ONE}
    if n == 3 and xi == [1, 1]:
        t1, t2 = t[0][0], t[1][0]
        d = div(1, t2 - t1, "t^2_1 - t^1_1")
        c = d if case == "rational" else (q - 1 / q) * t2 * d
        return {
            _label(name, [(1, 2, 1, 1), (2, 3, 2, 1)]): ONE,
            _label(name, [(1, 3, 1, 1), (2, 2, 2, 1)]): c,
        }
    if n == 4 and xi == [1, 1, 1]:
        t1, t2, t3 = t[0][0], t[1][0], t[2][0]
        d21 = div(1, t2 - t1, "t^2_1 - t^1_1")
        d32 = div(1, t3 - t2, "t^3_1 - t^2_1")
        d31 = div(1, t3 - t1, "t^3_1 - t^1_1")
        if case == "rational":
            c13, c24, c_pair = d21, d32, d21 * d32
            c_last = ((t2 - t1) * (t3 - t2) + 1) * d21 * d31 * d32
        else:
            h = q - 1 / q
            c13, c24 = h * t2 * d21, h * t3 * d32
            c_pair = h ** 2 * t2 * t3 * d21 * d32
            c_last = h * t3 * ((t2 - t1) * (t3 - t2) + h ** 2 * t2 * t3) * d21 * d31 * d32
        return {
            _label(name, [(1, 2, 1, 1), (2, 3, 2, 1), (3, 4, 3, 1)]): ONE,
            _label(name, [(1, 3, 1, 1), (2, 2, 2, 1), (3, 4, 3, 1)]): c13,
            _label(name, [(1, 2, 1, 1), (2, 4, 2, 1), (3, 3, 3, 1)]): c24,
            _label(name, [(1, 4, 1, 1), (2, 2, 2, 1), (3, 3, 3, 1)]): c_pair,
            _label(name, [(1, 3, 1, 1), (2, 4, 2, 1), (3, 2, 3, 1)]): c_pair,
            _label(name, [(1, 4, 1, 1), (2, 3, 2, 1), (3, 2, 3, 1)]): c_last,
        }
    raise ValidationError(f"no reference expansion for N={n}, ξ={xi}")


REFERENCE_CELLS = (
    ("rational", 2, (1,)), ("rational", 2, (2,)), ("rational", 2, (3,)),
    ("rational", 3, (1, 1)), ("rational", 4, (1, 1, 1)),
    ("trigonometric", 2, (1,)), ("trigonometric", 2, (2,)), ("trigonometric", 2, (3,)),
    ("trigonometric", 3, (1, 1)), ("trigonometric", 4, (1, 1, 1)),
)
