"""The two-parameter R gate ``exp(i (gamma XX + delta ZZ))`` and its algebra."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

IDENTITY_TOL = 1e-12

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# Rx(pi/2) = exp(-i pi/4 X): maps Y -> Z under conjugation, so G YY G^H = ZZ and XX is fixed.
BASIS_CHANGE = np.array([[1, -1j], [-1j, 1]], dtype=complex) / math.sqrt(2)


def canonical_angle(theta: float) -> float:
    """Map ``theta`` into ``(-pi, pi]``."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta}")
    if -math.pi < theta <= math.pi:
        return theta
    r = math.remainder(theta, 2 * math.pi)
    return math.pi if r <= -math.pi else r


def r_matrix(gamma: float, delta: float) -> np.ndarray:
    c, s = math.cos(gamma), math.sin(gamma)
    p, m = np.exp(1j * delta), np.exp(-1j * delta)
    return np.array(
        [
            [p * c, 0, 0, 1j * p * s],
            [0, m * c, 1j * m * s, 0],
            [0, 1j * m * s, m * c, 0],
            [1j * p * s, 0, 0, p * c],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class RGate:
    """R(gamma, delta) acting on the adjacent qubit pair ``(q, q + 1)``.

    Angles are canonicalized into ``(-pi, pi]`` on construction.
    """

    q: int
    gamma: float
    delta: float

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 0:
            raise ValueError(f"qubit index must be a nonnegative integer, got {self.q}")
        object.__setattr__(self, "q", int(self.q))
        object.__setattr__(self, "gamma", canonical_angle(self.gamma))
        object.__setattr__(self, "delta", canonical_angle(self.delta))

    @property
    def matrix(self) -> np.ndarray:
        return r_matrix(self.gamma, self.delta)

    @property
    def params(self) -> tuple[float, float]:
        return self.gamma, self.delta

    def is_identity(self, tol: float = IDENTITY_TOL) -> bool:
        return abs(self.gamma) < tol and abs(self.delta) < tol

    @classmethod
    def identity(cls, q: int) -> "RGate":
        return cls(q, 0.0, 0.0)


def merge(a: RGate, b: RGate) -> RGate:
    """Fuse two gates on the same pair; the XX and ZZ generators commute, so angles add."""
    if a.q != b.q:
        raise ValueError(f"cannot merge gates on pairs {a.q} and {b.q}")
    return RGate(a.q, a.gamma + b.gamma, a.delta + b.delta)


@dataclass(frozen=True)
class XYCouplings:
    jx: float
    jy: float
    dt: float

    def __post_init__(self):
        for name in ("jx", "jy", "dt"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")


def xy_trotter_params(c: XYCouplings) -> tuple[float, float]:
    """Gate angles for one bond of the XY model over one Trotter step.

    ``r_matrix(*xy_trotter_params(c))`` equals
    ``(G x G) exp(i dt (jx XX + jy YY)) (G x G)^H`` with ``G = BASIS_CHANGE``.
    The Hamiltonian carries an overall minus sign, so ``exp(-i H dt)`` has ``+i``.
    """
    return c.jx * c.dt, c.jy * c.dt


def cnot_cost(circuit) -> int:
    """Two CNOTs per non-identity R gate (the CX, Rx x Rz, CX decomposition)."""
    return 2 * sum(1 for layer in circuit.layers for g in layer.gates if not g.is_identity())
