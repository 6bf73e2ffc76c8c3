"""Statevector simulation of XY-chain dynamics and staggered magnetization."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .circuit import ODD, Circuit, apply_circuit, layer_pairs, max_qubits, other_parity, trotter_circuit
from .gates import BASIS_CHANGE, XYCouplings
from .linalg import apply_single_qubit, apply_two_qubit, basis_state, hermitian_exp

NORM_TOL = 1e-8


@dataclass(frozen=True)
class Trajectory:
    times: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.times) != len(self.values):
            raise ValueError("times and values differ in length")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("times must be strictly increasing")

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t,m_s\n")
        for t, m in zip(self.times, self.values):
            buf.write(f"{t:.12g},{m:.12g}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Trajectory":
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls([float(r["t"]) for r in rows], [float(r["m_s"]) for r in rows])


def neel_state(n: int) -> np.ndarray:
    """|0101...>: spin up (bit 0) on even sites."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got {n}")
    index = int("01" * (n // 2) + "0" * (n % 2), 2)
    return basis_state(n, index)


def staggered_magnetization(state) -> float:
    state = np.asarray(state, dtype=complex)
    n = int(round(np.log2(state.size)))
    probs = np.abs(state) ** 2
    if abs(probs.sum() - 1.0) > NORM_TOL:
        raise ValueError(f"state norm deviates from 1 by {abs(probs.sum() - 1.0):.3g}")
    probs = probs.reshape((2,) * n)
    total = 0.0
    for i in range(n):
        marginal = probs.sum(axis=tuple(j for j in range(n) if j != i))
        total += (-1) ** i * (marginal[0] - marginal[1])
    return float(total / n)


def _change_basis(state: np.ndarray, n: int, gate: np.ndarray) -> np.ndarray:
    for q in range(n):
        state = apply_single_qubit(state, gate, q)
    return state


def _measure(state: np.ndarray, n: int) -> float:
    return staggered_magnetization(_change_basis(state, n, BASIS_CHANGE.conj().T))


def _check_size(n: int) -> None:
    cap = max_qubits()
    if n > cap:
        raise ValueError(f"{n} qubits exceeds the simulation cap of {cap}")


def _record_steps(t_steps: int, record_every: int) -> list[int]:
    if record_every < 1:
        raise ValueError(f"record_every must be at least 1, got {record_every}")
    return list(range(0, t_steps + 1, record_every))


def evolve_xy(
    n: int,
    t_steps: int,
    c: XYCouplings,
    circuit: Circuit | None = None,
    record_every: int = 1,
) -> Trajectory:
    """Staggered magnetization from the Neel state under the R-gate circuit.

    A canonical circuit (``2 * t_steps`` layers) is applied two layers per step.
    A compressed circuit only encodes the final time, so intermediate record
    points are produced by compressing the matching shorter Trotter circuits.
    """
    _check_size(n)
    if circuit is None:
        circuit = trotter_circuit(n, t_steps, c)
    if circuit.n_qubits != n:
        raise ValueError(f"circuit has {circuit.n_qubits} qubits, expected {n}")
    steps = _record_steps(t_steps, record_every)
    start = _change_basis(neel_state(n), n, BASIS_CHANGE)
    values = []
    if circuit.metadata.get("compressed"):
        from .compressor import compress_sequential

        first = circuit.metadata.get("first_parity", ODD)
        for k in steps:
            if k == 0:
                piece = Circuit(n)
            elif k == t_steps:
                piece = circuit
            else:
                piece, _ = compress_sequential(trotter_circuit(n, k, c, first))
            values.append(_measure(apply_circuit(start, piece), n))
    else:
        if circuit.depth != 2 * t_steps:
            raise ValueError(f"canonical circuit has {circuit.depth} layers, expected {2 * t_steps}")
        state = start
        for k in range(t_steps + 1):
            if k > 0:
                step = Circuit(n, circuit.layers[2 * k - 2:2 * k])
                state = apply_circuit(state, step)
            if k in steps:
                values.append(_measure(state, n))
    return Trajectory([k * c.dt for k in steps], values)


_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)


def exact_trotter_oracle(
    n: int, t_steps: int, c: XYCouplings, record_every: int = 1, first_parity: str = ODD
) -> Trajectory:
    """Trotterized XY dynamics built directly from bond exponentials in the physical frame."""
    if n > 10:
        raise ValueError(f"oracle is limited to 10 qubits, got {n}")
    bond_h = c.jx * np.kron(_X, _X) + c.jy * np.kron(_Y, _Y)
    bond = hermitian_exp(bond_h, c.dt)
    order = [q for q, _ in layer_pairs(n, first_parity)] + [
        q for q, _ in layer_pairs(n, other_parity(first_parity))
    ]
    steps = _record_steps(t_steps, record_every)
    state = neel_state(n)
    values = []
    for k in range(t_steps + 1):
        if k > 0:
            for q in order:
                state = apply_two_qubit(state, bond, q)
        if k in steps:
            values.append(staggered_magnetization(state))
    return Trajectory([k * c.dt for k in steps], values)
