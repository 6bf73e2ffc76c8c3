"""Three-qubit Yang-Baxter rewrites between A-shape and V-shape R-gate triples.

An A-shape is the product ``(R1 x 1)(1 x R2)(R3 x 1)`` (upper, lower, upper
pair; R3 acts first) and a V-shape is ``(1 x R4)(R5 x 1)(1 x R6)``. Both sides
factor through a pair of unit 4-vectors, and the two products coincide exactly
when the outer products of those vectors coincide. The vector components are
products of cosines and sines of the gate angles and of their sums and
differences, so the rewrite reduces to a rank-one factorization followed by
``atan2`` angle extraction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gates import canonical_angle, r_matrix

VERIFY_TOL = 1e-9
_DEGENERATE = 1e-14

GateTriple = tuple[tuple[float, float], tuple[float, float], tuple[float, float]]

_I2 = np.eye(2, dtype=complex)


class NoSolution(ArithmeticError):
    """No verified rewrite exists for the given triple."""

    def __init__(self, message: str, triple=None, residual: float | None = None):
        super().__init__(message)
        self.triple = triple
        self.residual = residual


@dataclass(frozen=True)
class YbeVectors:
    left: np.ndarray
    right: np.ndarray

    def outer(self) -> np.ndarray:
        return np.outer(self.left, self.right)


def _triple(t: Sequence[Sequence[float]]) -> GateTriple:
    if len(t) != 3:
        raise ValueError(f"expected three (gamma, delta) pairs, got {len(t)}")
    return tuple((float(g), float(d)) for g, d in t)  # type: ignore[return-value]


def _canonical(t) -> GateTriple:
    return tuple((canonical_angle(g), canonical_angle(d)) for g, d in t)  # type: ignore[return-value]


def lhs_vectors(t) -> YbeVectors:
    """Factor vectors of an A-shape triple (positions 1, 2, 3)."""
    (g1, d1), (g2, d2), (g3, d3) = _triple(t)
    cos, sin = math.cos, math.sin
    left = np.array(
        [
            cos(g1 - g3) * sin(d2),
            cos(g1 + g3) * cos(d2),
            -sin(g1 - g3) * sin(d2),
            sin(g1 + g3) * cos(d2),
        ]
    )
    right = np.array(
        [
            cos(d1 - d3) * sin(g2),
            cos(d1 + d3) * cos(g2),
            -sin(d1 - d3) * sin(g2),
            sin(d1 + d3) * cos(g2),
        ]
    )
    return YbeVectors(left, right)


def rhs_vectors(t) -> YbeVectors:
    """Factor vectors of a V-shape triple (positions 4, 5, 6)."""
    (g4, d4), (g5, d5), (g6, d6) = _triple(t)
    cos, sin = math.cos, math.sin
    left = np.array(
        [
            cos(g5) * sin(d4 + d6),
            cos(g5) * cos(d4 + d6),
            sin(g5) * sin(d4 - d6),
            sin(g5) * cos(d4 - d6),
        ]
    )
    right = np.array(
        [
            sin(g4 + g6) * cos(d5),
            cos(g4 + g6) * cos(d5),
            sin(g4 - g6) * sin(d5),
            cos(g4 - g6) * sin(d5),
        ]
    )
    return YbeVectors(left, right)


def rank1_decompose(m) -> tuple[np.ndarray, np.ndarray, float]:
    """Split ``m`` into unit vectors ``a``, ``b`` with ``m ~ ||m||_F a b^T``.

    ``a`` is the direction of the largest-norm column with its largest-magnitude
    component made positive; ``residual`` measures the departure from rank one.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {m.shape}")
    norm = float(np.linalg.norm(m))
    if norm <= 1e-12:
        raise ValueError("cannot factor a zero matrix")
    col = m[:, int(np.argmax(np.linalg.norm(m, axis=0)))]
    a = col / np.linalg.norm(col)
    if a[int(np.argmax(np.abs(a)))] < 0:
        a = -a
    b = m.T @ a
    b = b / np.linalg.norm(b)
    residual = float(np.linalg.norm(m - norm * np.outer(a, b)))
    return a, b, residual


def _angle(y: float, x: float) -> float:
    if math.hypot(x, y) < _DEGENERATE:
        return 0.0
    return math.atan2(y, x)


def a_shape_unitary(t) -> np.ndarray:
    (g1, d1), (g2, d2), (g3, d3) = _triple(t)
    return (
        np.kron(r_matrix(g1, d1), _I2)
        @ np.kron(_I2, r_matrix(g2, d2))
        @ np.kron(r_matrix(g3, d3), _I2)
    )


def v_shape_unitary(t) -> np.ndarray:
    (g4, d4), (g5, d5), (g6, d6) = _triple(t)
    return (
        np.kron(_I2, r_matrix(g4, d4))
        @ np.kron(r_matrix(g5, d5), _I2)
        @ np.kron(_I2, r_matrix(g6, d6))
    )


def verify_ybe(a_side, v_side) -> float:
    """Frobenius distance between the A-shape and V-shape 8x8 products."""
    return float(np.linalg.norm(a_shape_unitary(a_side) - v_shape_unitary(v_side)))


def condition_residual(a_side, v_side) -> float:
    """Largest entrywise gap between the two factor outer products."""
    return float(np.max(np.abs(lhs_vectors(a_side).outer() - rhs_vectors(v_side).outer())))


def _split(total: float, diff: float) -> tuple[float, float]:
    return (total + diff) / 2, (total - diff) / 2


def _v_from_factors(a: np.ndarray, b: np.ndarray) -> GateTriple:
    g5 = _angle(math.hypot(a[2], a[3]), math.hypot(a[0], a[1]))
    d4, d6 = _split(_angle(a[0], a[1]), _angle(a[2], a[3]))
    d5 = _angle(math.hypot(b[2], b[3]), math.hypot(b[0], b[1]))
    g4, g6 = _split(_angle(b[0], b[1]), _angle(b[2], b[3]))
    return _canonical(((g4, d4), (g5, d5), (g6, d6)))


def _a_from_factors(a: np.ndarray, b: np.ndarray) -> GateTriple:
    d2 = _angle(math.hypot(a[0], a[2]), math.hypot(a[1], a[3]))
    g1, g3 = _split(_angle(a[3], a[1]), _angle(-a[2], a[0]))
    g2 = _angle(math.hypot(b[0], b[2]), math.hypot(b[1], b[3]))
    d1, d3 = _split(_angle(b[3], b[1]), _angle(-b[2], b[0]))
    return _canonical(((g1, d1), (g2, d2), (g3, d3)))


def solve_a2v(t) -> GateTriple:
    """Rewrite an A-shape triple as an equal V-shape triple."""
    t = _triple(t)
    a, b, _ = rank1_decompose(lhs_vectors(t).outer())
    best = math.inf
    for sign in (1.0, -1.0):
        v = _v_from_factors(sign * a, sign * b)
        residual = verify_ybe(t, v)
        if residual < VERIFY_TOL:
            return v
        best = min(best, residual)
    raise NoSolution(f"A2V failed for {t} (best residual {best:.3g})", triple=t, residual=best)


def solve_v2a(t) -> GateTriple:
    """Rewrite a V-shape triple as an equal A-shape triple."""
    t = _triple(t)
    a, b, _ = rank1_decompose(rhs_vectors(t).outer())
    best = math.inf
    for sign in (1.0, -1.0):
        u = _a_from_factors(sign * a, sign * b)
        residual = verify_ybe(u, t)
        if residual < VERIFY_TOL:
            return u
        best = min(best, residual)
    raise NoSolution(f"V2A failed for {t} (best residual {best:.3g})", triple=t, residual=best)
