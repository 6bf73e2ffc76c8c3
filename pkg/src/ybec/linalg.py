"""Dense complex linear algebra for gate matrices and small statevectors.

Matrices and statevectors are plain ``numpy`` arrays. Qubit 0 is the most
significant bit of a basis-state index throughout the package.
"""
from __future__ import annotations

import numpy as np

UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def matmul(a, b) -> np.ndarray:
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    return np.kron(_as_matrix(a), _as_matrix(b))


def is_unitary(a, tol: float = UNITARY_TOL) -> bool:
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return np.linalg.norm(a.conj().T @ a - np.eye(a.shape[0])) < tol


def frobenius_distance(a, b) -> float:
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def phase_aligned_distance(a, b) -> float:
    """Frobenius distance between ``a`` and ``b`` after removing the best global phase."""
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    overlap = np.trace(b.conj().T @ a)
    phase = np.exp(1j * np.angle(overlap)) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(a - phase * b))


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(h, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(w, v)`` with ``h = v @ diag(w) @ v^H``.
    """
    a = _as_matrix(h).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        if _off_diagonal_norm(a) < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                # phase makes the (p, q) entry real, then a real Jacobi rotation zeroes it
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0.0
    else:
        if _off_diagonal_norm(a) >= tol * scale:
            raise RuntimeError("Jacobi iteration did not converge")
    return np.real(np.diag(a)), v


def hermitian_exp(h, scale: float) -> np.ndarray:
    """Return ``exp(i * scale * h)`` for Hermitian ``h`` (dimension at most 16)."""
    h = _as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got {h.shape}")
    if h.shape[0] > 16:
        raise ValueError(f"dimension {h.shape[0]} exceeds 16")
    if np.linalg.norm(h - h.conj().T) >= HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian")
    w, v = jacobi_eigh(h)
    return (v * np.exp(1j * scale * w)) @ v.conj().T


def basis_state(n_qubits: int, index: int) -> np.ndarray:
    psi = np.zeros(2**n_qubits, dtype=complex)
    psi[index] = 1.0
    return psi


def _check_state(state, n_qubits: int | None = None) -> tuple[np.ndarray, int]:
    state = np.asarray(state, dtype=complex)
    n = int(np.log2(state.size)) if state.size else 0
    if state.ndim != 1 or 2**n != state.size:
        raise ValueError(f"statevector length {state.size} is not a power of two")
    if n_qubits is not None and n != n_qubits:
        raise ValueError(f"expected {n_qubits} qubits, got {n}")
    return state, n


def apply_single_qubit(state, gate, q: int) -> np.ndarray:
    state, n = _check_state(state)
    if not 0 <= q < n:
        raise IndexError(f"qubit {q} out of range for {n} qubits")
    gate = _as_matrix(gate)
    if gate.shape != (2, 2) or not is_unitary(gate):
        raise ValueError("gate must be a 2x2 unitary")
    psi = state.reshape(2**q, 2, 2 ** (n - q - 1))
    return np.einsum("ab,ibj->iaj", gate, psi).reshape(-1)


def apply_two_qubit(state, gate, q: int) -> np.ndarray:
    """Apply a 4x4 unitary to the adjacent qubit pair ``(q, q + 1)``."""
    state, n = _check_state(state)
    if not 0 <= q or q + 1 >= n:
        raise IndexError(f"qubit pair ({q}, {q + 1}) out of range for {n} qubits")
    gate = _as_matrix(gate)
    if gate.shape != (4, 4) or not is_unitary(gate):
        raise ValueError("gate must be a 4x4 unitary")
    psi = state.reshape(2**q, 4, 2 ** (n - q - 2))
    return np.einsum("ab,ibj->iaj", gate, psi).reshape(-1)


def embed_two_qubit(gate, q: int, n_qubits: int) -> np.ndarray:
    """Full ``2^n`` matrix of a two-qubit gate on ``(q, q + 1)``."""
    return kron(kron(np.eye(2**q), gate), np.eye(2 ** (n_qubits - q - 2)))
