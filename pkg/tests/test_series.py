from fractions import Fraction

from bethe_weights.modules import ModuleSpec, build_module
from bethe_weights.series import EvalModule, TensorSeries, Window
from bethe_weights.tensor import kron

F = Fraction


def vec(n, case="rational", q=None):
    return build_module(ModuleSpec(n, "vector", F(0)), case, q)


def test_rational_series_on_vector_rep():
    m = vec(2)
    x, u = F(1, 3), F(5, 7)
    s = EvalModule(m, x)
    # T_12(u) = e_21/(u - x)
    assert s.T(1, 2, u) == m.e[(2, 1)].scale(1 / (u - x))
    assert s.T(1, 1, u).apply(m.vector) == [1 + 1 / (u - x), 0]


def test_trig_diagonal_eigenvalues():
    q, x, u = F(2, 3), F(1, 3), F(5, 7)
    m = vec(3, "trigonometric", q)
    s = EvalModule(m, x)
    assert s.diag_eigenvalue(1, u, m.vector) == q - x / (q * u)
    assert s.diag_eigenvalue(2, u, m.vector) == 1 - x / u


def test_coproduct_matches_hand_expansion():
    m = vec(2)
    x1, x2, u = F(1, 3), F(-2, 5), F(7, 4)
    s1, s2 = EvalModule(m, x1), EvalModule(m, x2)
    t = TensorSeries([s1, s2])
    for a in (1, 2):
        for b in (1, 2):
            expected = None
            for c in (1, 2):
                term = kron([s1.T(c, b, u), s2.T(a, c, u)])
                expected = term if expected is None else expected + term
            assert t.T(a, b, u).rows == expected.rows


def test_window_views():
    m = vec(3)
    s = EvalModule(m, F(1, 2))
    u = F(3, 7)
    assert Window(s, 1, 2).T(1, 2, u) == s.T(2, 3, u)
    assert Window(s, 0, 2).T(2, 1, u) == s.T(2, 1, u)


def test_tensor_cartan_is_sum_of_factor_actions():
    m = vec(2)
    t = TensorSeries([EvalModule(m, 0), EvalModule(m, 1)])
    v = [1, 0, 0, 0]
    assert t.cartan(1).apply(v) == [2, 0, 0, 0]
