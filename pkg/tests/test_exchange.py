from fractions import Fraction

import pytest

from bethe_weights import exchange
from bethe_weights.modules import ModuleSpec, build_module
from bethe_weights.series import EvalModule, TensorSeries

F = Fraction


def assembly(n, xs):
    m = build_module(ModuleSpec(n, "vector", F(0)))
    evs = [EvalModule(m, x) for x in xs]
    return evs[0] if len(evs) == 1 else TensorSeries(evs)


XS = [F(1, 3), F(-2, 5), F(7, 4)]
U, V = F(5, 6), F(-3, 11)
US = [F(2, 9), F(-7, 5), F(11, 3)]


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("name", ["rel_aa", "rel_bbr", "rel_ab", "rel_db", "rel_dd"])
def test_two_point_relations(n, name):
    lhs, rhs = getattr(exchange, name)(assembly(n, XS[:2]), U, V)
    assert lhs == rhs


def test_scaled_db_variant_fails():
    lhs, rhs = exchange.rel_db(assembly(3, XS[:2]), U, V, variant="scaled")
    assert lhs != rhs


@pytest.mark.parametrize("k", [1, 2, 3])
def test_a_and_d_on_b_products(k):
    s = assembly(3, XS[:k])
    lhs, rhs = exchange.rel_abb(s, U, US[:k])
    assert lhs == rhs
    lhs, rhs = exchange.rel_dbb(s, U, US[:k])
    assert lhs == rhs


def test_b_products_do_not_vanish_on_three_factors():
    lhs, _ = exchange.rel_abb(assembly(3, XS), U, US)
    assert any(op for op in lhs.values())


@pytest.mark.parametrize("k", [1, 2])
def test_coproduct_of_lowered_products(k):
    lhs, rhs = exchange.rel_coproduct(assembly(3, XS[:1]), assembly(3, XS[1:2]), US[:k])
    assert lhs == rhs


def test_braid_and_invariance():
    s = assembly(2, XS[:1])
    lhs, rhs = exchange.rel_braid(s, US)
    assert lhs == rhs
    s = assembly(3, XS[:2])
    lhs, rhs = exchange.rel_b_invariance(s, US[:2], 0)
    assert lhs == rhs


def test_reduced_word_sorts_the_permutation():
    from itertools import permutations
    for perm in permutations(range(4)):
        word = exchange.reduced_word(perm)
        seq = list(perm)
        for i in word:
            seq[i], seq[i + 1] = seq[i + 1], seq[i]
        assert seq == sorted(seq)
        inversions = sum(perm[i] > perm[j] for i in range(4) for j in range(i + 1, 4))
        assert len(word) == inversions
