from fractions import Fraction
import random

import pytest

from bethe_weights import identities as idt
from bethe_weights.field import factorial, q_factorial

F = Fraction
Q = F(2, 3)


def points(k, seed):
    rng = random.Random(seed)
    while True:
        vals = [F(rng.randint(-13, 13), rng.randint(1, 13)) for _ in range(k)]
        if len(set(vals)) == k and all(a - b not in (0, 1, -1) for a in vals for b in vals if a is not b):
            if all(a / b not in (Q * Q, 1 / (Q * Q)) for a in vals for b in vals if b and a is not b):
                if 0 not in vals:
                    return vals


@pytest.mark.parametrize("k", range(7))
def test_permutation_sums(k):
    vals = points(k, k)
    assert idt.perm_sum_w("rational", k, vals) == factorial(k)
    assert idt.perm_sum_w("trigonometric", k, vals, Q) == q_factorial(k, Q)


def test_g_one_two_by_hand():
    y, z1, z2 = F(1, 3), F(-2, 5), F(7, 4)
    # d = 1: z_2 sits after z_1, d = 2: nothing after
    hand = (y - z2 + 1) / ((y - z1) * (y - z2)) + 1 / (y - z2)
    assert idt.g_function([y], [z1, z2]) == hand
    assert idt.g_function_dsum([y], [z1, z2]) == hand


def test_g_equal_lengths():
    y, z = points(2, 1), points(2, 2)
    assert idt.g_function(y, z) == idt.g_function_dsum(y, z)


@pytest.mark.parametrize("p,r", [(1, 2), (2, 3), (2, 4), (3, 4)])
def test_g_identities(p, r):
    vals = points(p + r, 10 * p + r)
    y, z = vals[:p], vals[p:]
    assert idt.g_function(y, z) == idt.g_function_dsum(y, z)
    assert idt.g_mirror_lhs(y, z) == idt.g_mirror_rhs(y, z)
    assert idt.gq_lhs(y, z, Q) == idt.gq_rhs(y, z, Q)
    assert idt.gq_mirror_lhs(y, z, Q) == idt.gq_mirror_rhs(y, z, Q)


@pytest.mark.parametrize("p,r", [(1, 2), (2, 3)])
def test_mirror_identity_needs_the_negative_shift(p, r):
    vals = points(p + r, p * r)
    y, z = vals[:p], vals[p:]
    assert idt.g_mirror_lhs(y, z, shift=1) != idt.g_mirror_rhs(y, z, shift=1)


@pytest.mark.parametrize("p,r", [(1, 2), (2, 3)])
def test_trig_mirror_excludes_the_diagonal(p, r):
    vals = points(p + r, p + r)
    y, z = vals[:p], vals[p:]
    assert idt.gq_mirror_lhs(y, z, Q, inclusive=True) != idt.gq_mirror_rhs(y, z, Q)


@pytest.mark.parametrize("eta", [[1], [2, 1], [3, 2], [2, 2, 1], [3, 1, 1]])
def test_f_y_identity(eta):
    vals = points(sum(eta), sum(eta) * 7)
    s, pos = [], 0
    for k in eta:
        s.append(vals[pos:pos + k])
        pos += k
    assert idt.level_sum_lhs(eta, s) == idt.level_sum_rhs(eta, s)


def test_l_collections_count():
    assert len(idt.l_collections([3, 2])) == 3
    assert idt.l_collections([2, 0]) == [[()]]
