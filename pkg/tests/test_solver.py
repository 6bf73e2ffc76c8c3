import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybec.gates import r_matrix
from ybec.solver import (
    NoSolution,
    a_shape_unitary,
    condition_residual,
    lhs_vectors,
    rank1_decompose,
    rhs_vectors,
    solve_a2v,
    solve_v2a,
    v_shape_unitary,
    verify_ybe,
)

angle = st.floats(-math.pi, math.pi, allow_nan=False)
triples = st.tuples(*(st.tuples(angle, angle) for _ in range(3)))
ZERO = ((0.0, 0.0), (0.0, 0.0), (0.0, 0.0))


def random_triple(rng):
    return tuple(tuple(p) for p in rng.uniform(-math.pi, math.pi, (3, 2)))


def test_vectors_at_zero():
    for vec in (lhs_vectors(ZERO), rhs_vectors(ZERO)):
        assert np.array_equal(vec.left, [0, 1, 0, 0])
        assert np.array_equal(vec.right, [0, 1, 0, 0])


def test_vectors_with_identity_middle_gate():
    g1, d1, g3, d3 = 0.4, -1.1, 0.9, 0.3
    v = lhs_vectors(((g1, d1), (0.0, 0.0), (g3, d3)))
    assert np.allclose(v.left, [0, math.cos(g1 + g3), 0, math.sin(g1 + g3)], atol=1e-15)
    assert np.allclose(v.right, [0, math.cos(d1 + d3), 0, math.sin(d1 + d3)], atol=1e-15)
    g5, d5 = 1.2, -0.5
    w = rhs_vectors(((0.0, 0.0), (g5, d5), (0.0, 0.0)))
    assert np.allclose(w.left, [0, math.cos(g5), 0, math.sin(g5)], atol=1e-15)
    assert np.allclose(w.right, [0, math.cos(d5), 0, math.sin(d5)], atol=1e-15)


@given(triples)
def test_vectors_are_unit(t):
    for vec in (lhs_vectors(t), rhs_vectors(t)):
        assert abs(np.linalg.norm(vec.left) - 1) < 1e-12
        assert abs(np.linalg.norm(vec.right) - 1) < 1e-12
        assert abs(np.linalg.norm(vec.outer()) - 1) < 1e-12


def test_rank1_decompose_basis():
    e2 = np.array([0.0, 1.0, 0.0, 0.0])
    a, b, res = rank1_decompose(np.outer(e2, e2))
    assert np.array_equal(a, e2) and np.array_equal(b, e2) and res == 0


def test_rank1_decompose_recovers_factors(rng):
    for _ in range(20):
        u, v = rng.normal(size=4), rng.normal(size=4)
        u, v = u / np.linalg.norm(u), v / np.linalg.norm(v)
        a, b, res = rank1_decompose(np.outer(u, v))
        assert res < 1e-12
        s = 1 if np.dot(a, u) > 0 else -1
        assert np.abs(a - s * u).max() < 1e-12 and np.abs(b - s * v).max() < 1e-12
        assert a[np.argmax(np.abs(a))] > 0


def test_rank1_decompose_rank2_and_zero():
    m = np.diag([1.0, 1.0, 0, 0])
    _, _, res = rank1_decompose(m)
    assert res > 0.5
    with pytest.raises(ValueError):
        rank1_decompose(np.zeros((4, 4)))


def test_a2v_identity_and_merge_structure():
    assert all(abs(x) < 1e-15 for p in solve_a2v(ZERO) for x in p)
    t = ((0.4, -1.1), (0.0, 0.0), (0.9, 0.3))
    v = solve_a2v(t)
    assert verify_ybe(t, v) < 1e-9
    assert v_shape_unitary(((0, 0), (0.4 + 0.9, -1.1 + 0.3), (0, 0))) == pytest.approx(a_shape_unitary(t), abs=1e-12)
    # outer gates cancel up to phase; the middle gate carries the merged angles up to sign
    outer = r_matrix(*v[0]) @ r_matrix(*v[2])
    assert np.abs(outer - outer[0, 0] * np.eye(4)).max() < 1e-12
    assert abs(abs(v[1][0]) - 1.3) < 1e-12 and abs(abs(v[1][1]) - 0.8) < 1e-12


def test_v2a_identity_and_merge_structure():
    assert all(abs(x) < 1e-15 for p in solve_v2a(ZERO) for x in p)
    t = ((0.2, 0.7), (0.0, 0.0), (-1.3, 0.4))
    u = solve_v2a(t)
    assert verify_ybe(u, t) < 1e-9


def test_a2v_specific_triple():
    t = ((0.7, 0.3), (0.5, -0.2), (0.4, 0.1))
    v = solve_a2v(t)
    assert verify_ybe(t, v) < 1e-9
    assert condition_residual(t, v) < 1e-9


@settings(max_examples=200, deadline=None)
@given(triples)
def test_a2v_v2a_round_trip(t):
    v = solve_a2v(t)
    assert verify_ybe(t, v) < 1e-9
    back = solve_v2a(v)
    assert np.linalg.norm(a_shape_unitary(back) - a_shape_unitary(t)) < 1e-9


@settings(max_examples=100, deadline=None)
@given(triples, st.integers(0, 5))
def test_two_pi_shift_invariance(t, which):
    shifted = [list(p) for p in t]
    shifted[which // 2][which % 2] += 2 * math.pi
    u1 = v_shape_unitary(solve_a2v(t))
    u2 = v_shape_unitary(solve_a2v(shifted))
    assert np.linalg.norm(u1 - u2) < 1e-9


def test_verify_ybe_negative_control(rng):
    for _ in range(200):
        t = random_triple(rng)
        assert verify_ybe(t, ZERO) > 1e-6
    assert verify_ybe(ZERO, ZERO) == 0


def test_condition_iff_equality(rng):
    for _ in range(100):
        t = random_triple(rng)
        v = solve_a2v(t)
        assert condition_residual(t, v) < 1e-12 and verify_ybe(t, v) < 1e-9
        bumped = [list(p) for p in v]
        bumped[rng.integers(3)][rng.integers(2)] += rng.uniform(1e-3, 1.0)
        assert condition_residual(t, bumped) > 1e-9 and verify_ybe(t, bumped) > 1e-9


def test_no_solution_is_an_exception():
    err = NoSolution("x", triple=ZERO, residual=1.0)
    assert isinstance(err, ArithmeticError) and err.residual == 1.0
