from fractions import Fraction

import pytest

from bethe_weights.errors import ShapeError
from bethe_weights.tensor import (LinearOperator, Space, embed_leg, flip, identity, kron,
                                  matrix_unit, partial_trace, r_check, r_matrix, transposed_r)

F = Fraction


def test_matrix_unit_products():
    assert matrix_unit(3, 1, 2) @ matrix_unit(3, 2, 3) == matrix_unit(3, 1, 3)
    assert (matrix_unit(3, 1, 2) @ matrix_unit(3, 1, 2)).is_zero()


def test_kron_and_partial_trace():
    a = LinearOperator.from_rows([[1, 2], [3, 4]])
    b = LinearOperator.from_rows([[0, 1, 0], [0, 0, 5], [7, 0, 1]])
    ab = kron([a, b])
    assert ab.nrows == 6
    assert partial_trace(ab, [1]).rows == b.scale(5).rows
    assert partial_trace(ab, [2]).rows == a.scale(1).rows
    assert partial_trace(ab, [1, 2]).rows == [[F(5)]]


def test_embed_leg_matches_kron():
    sp = (Space(2, "aux"),) * 3
    op = kron([matrix_unit(2, 1, 2, "aux"), matrix_unit(2, 2, 1, "aux")])
    placed = embed_leg(op, [1, 3], sp)
    expected = kron([matrix_unit(2, 1, 2, "aux"), identity(2, "aux"), matrix_unit(2, 2, 1, "aux")])
    assert placed.rows == expected.rows


def test_embed_leg_reversed_positions_flip_the_factor():
    sp = (Space(2, "aux"),) * 2
    op = kron([matrix_unit(2, 1, 2, "aux"), identity(2, "aux")])
    assert embed_leg(op, [2, 1], sp).rows == kron([identity(2, "aux"), matrix_unit(2, 1, 2, "aux")]).rows


def test_flip_is_an_involution():
    P = flip(3)
    assert P @ P == LinearOperator.identity(P.domain)


def test_rational_r_matrix_is_u_plus_p():
    u = F(3, 5)
    R = r_matrix("rational", 3, u)
    assert R == LinearOperator.identity(R.domain).scale(u) + flip(3)


def test_trig_r_matrix_at_one_is_scaled_flip():
    q = F(2, 3)
    assert r_matrix("trigonometric", 3, 1, q) == flip(3).scale(q - 1 / q)


def test_trig_r_matrix_entries_n2():
    q, u = F(2), F(5, 7)
    R = r_matrix("trigonometric", 2, u, q)
    h = q - 1 / q
    assert R.rows[0][0] == u * q - 1 / q
    assert R.rows[1][1] == u - 1
    # v_2 ⊗ v_1 ↦ … + u(q - q^-1) v_1 ⊗ v_2, v_1 ⊗ v_2 ↦ … + (q - q^-1) v_2 ⊗ v_1
    assert R.rows[1][2] == u * h
    assert R.rows[2][1] == h


def test_transposed_r_and_r_check():
    u = F(-2, 9)
    R = r_matrix("rational", 2, u)
    assert transposed_r(R) == R  # u + P is flip-symmetric
    Rc = r_check("rational", 2, u, normalized=True)
    assert Rc == (flip(2) @ R).scale(1 / (u + 1))


def test_shape_mismatch_raises():
    with pytest.raises(ShapeError):
        identity(2) @ identity(3)
    with pytest.raises(ShapeError):
        identity(2) + identity(3)
