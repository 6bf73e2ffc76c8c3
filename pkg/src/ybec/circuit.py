"""Brick-wall R-gate circuits: data model, Trotter generation and unitaries.

Layer parity follows one-based qubit numbering: an ``odd`` layer holds gates on
pairs (0,1), (2,3), ... and an ``even`` layer on (1,2), (3,4), ...
"""
from __future__ import annotations

import os
import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .gates import RGate, XYCouplings, canonical_angle, merge, xy_trotter_params
from .linalg import apply_two_qubit

ODD, EVEN = "odd", "even"
PARITIES = (ODD, EVEN)
DEFAULT_MAX_QUBITS = 12


def max_qubits() -> int:
    """Qubit cap for dense unitaries and statevectors (``YBEC_MAX_QUBITS`` overrides)."""
    raw = os.environ.get("YBEC_MAX_QUBITS")
    if not raw:
        return DEFAULT_MAX_QUBITS
    cap = int(raw)
    if cap > DEFAULT_MAX_QUBITS:
        warnings.warn(
            f"YBEC_MAX_QUBITS={cap} exceeds the verified limit of {DEFAULT_MAX_QUBITS}",
            RuntimeWarning,
            stacklevel=2,
        )
    return cap


def other_parity(parity: str) -> str:
    return EVEN if parity == ODD else ODD


def pair_parity(q: int) -> str:
    return ODD if q % 2 == 0 else EVEN


def layer_pairs(n: int, parity: str) -> list[tuple[int, int]]:
    if n < 2:
        raise ValueError(f"need at least 2 qubits, got {n}")
    if parity not in PARITIES:
        raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")
    start = 0 if parity == ODD else 1
    return [(q, q + 1) for q in range(start, n - 1, 2)]


@dataclass(frozen=True)
class Layer:
    parity: str
    gates: tuple[RGate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(sorted(self.gates, key=lambda g: g.q)))

    def gate_on(self, q: int) -> RGate | None:
        for g in self.gates:
            if g.q == q:
                return g
        return None


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    layers: tuple[Layer, ...] = ()
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "metadata", dict(self.metadata or {}))

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def n_gates(self) -> int:
        return sum(len(layer.gates) for layer in self.layers)

    def gates(self) -> Iterable[RGate]:
        for layer in self.layers:
            yield from layer.gates

    def with_layers(self, layers: Sequence[Layer], **metadata) -> "Circuit":
        meta = dict(self.metadata)
        meta.update(metadata)
        return replace(self, layers=tuple(layers), metadata=meta)

    def __add__(self, other: "Circuit") -> "Circuit":
        if self.n_qubits != other.n_qubits:
            raise ValueError("cannot concatenate circuits on different qubit counts")
        return Circuit(self.n_qubits, self.layers + other.layers, self.metadata)


def full_layer(n: int, parity: str, gamma: float = 0.0, delta: float = 0.0) -> Layer:
    return Layer(parity, tuple(RGate(q, gamma, delta) for q, _ in layer_pairs(n, parity)))


def trotter_circuit(n: int, t_steps: int, c: XYCouplings, first_parity: str = ODD) -> Circuit:
    """Canonical first-order Trotter circuit of the XY chain: ``2 * t_steps`` layers."""
    if n < 2:
        raise ValueError(f"need at least 2 qubits, got {n}")
    if t_steps < 1:
        raise ValueError(f"need at least one Trotter step, got {t_steps}")
    gamma, delta = xy_trotter_params(c)
    second = other_parity(first_parity)
    layers = []
    for _ in range(t_steps):
        layers.append(full_layer(n, first_parity, gamma, delta))
        layers.append(full_layer(n, second, gamma, delta))
    meta = {
        "jx": c.jx,
        "jy": c.jy,
        "dt": c.dt,
        "trotter_steps": t_steps,
        "first_parity": first_parity,
        "compressed": False,
    }
    return Circuit(n, tuple(layers), meta)


def couplings_from_metadata(meta: dict) -> XYCouplings | None:
    if not all(k in meta for k in ("jx", "jy", "dt")):
        return None
    return XYCouplings(float(meta["jx"]), float(meta["jy"]), float(meta["dt"]))


def validate(c: Circuit) -> list[str]:
    """Return every structural violation; an empty list means the circuit is valid."""
    problems = []
    if c.n_qubits < 2:
        problems.append(f"n_qubits must be at least 2, got {c.n_qubits}")
    for k, layer in enumerate(c.layers):
        if layer.parity not in PARITIES:
            problems.append(f"layer {k}: unknown parity {layer.parity!r}")
            continue
        used: dict[int, int] = {}
        for j, g in enumerate(layer.gates):
            where = f"layer {k} gate {j} on ({g.q},{g.q + 1})"
            if g.q + 1 >= c.n_qubits:
                problems.append(f"{where}: pair outside {c.n_qubits} qubits")
            if pair_parity(g.q) != layer.parity:
                problems.append(f"{where}: pair not allowed in {layer.parity} layer")
            for qubit in (g.q, g.q + 1):
                if qubit in used:
                    problems.append(f"{where}: qubit {qubit} already used by gate {used[qubit]}")
                used[qubit] = j
            for name in ("gamma", "delta"):
                value = getattr(g, name)
                if not np.isfinite(value) or canonical_angle(value) != value:
                    problems.append(f"{where}: {name}={value} is not canonical")
    return problems


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Full ``2^n`` unitary; layer 0 acts first (rightmost factor)."""
    cap = max_qubits()
    if c.n_qubits > cap:
        raise ValueError(f"{c.n_qubits} qubits exceeds the dense-unitary cap of {cap}")
    dim = 2**c.n_qubits
    # evolve every basis column at once: columns of the running product
    u = np.eye(dim, dtype=complex)
    for layer in c.layers:
        for g in layer.gates:
            u = _apply_to_columns(u, g.matrix, g.q, c.n_qubits)
    return u


def _apply_to_columns(u: np.ndarray, gate: np.ndarray, q: int, n: int) -> np.ndarray:
    block = u.reshape(2**q, 4, 2 ** (n - q - 2), u.shape[1])
    return np.einsum("ab,ibjc->iajc", gate, block).reshape(u.shape)


def apply_circuit(state: np.ndarray, c: Circuit) -> np.ndarray:
    for layer in c.layers:
        for g in layer.gates:
            state = apply_two_qubit(state, g.matrix, g.q)
    return state


def merge_layers(first: Layer, second: Layer) -> tuple[Layer, int]:
    """Fuse two same-parity layers, ``first`` acting earlier. Returns the layer and merge count."""
    if first.parity != second.parity:
        raise ValueError("can only merge layers of equal parity")
    gates = {g.q: g for g in first.gates}
    merges = 0
    for g in second.gates:
        if g.q in gates:
            gates[g.q] = merge(gates[g.q], g)
            merges += 1
        else:
            gates[g.q] = g
    return Layer(first.parity, tuple(gates.values())), merges


def normalize(c: Circuit) -> tuple[Circuit, int]:
    """Fuse adjacent same-parity layers and fill missing brick slots with identities.

    The result alternates parity and every layer holds all of its pairs.
    """
    merged: list[Layer] = []
    merges = 0
    for layer in c.layers:
        if merged and merged[-1].parity == layer.parity:
            merged[-1], m = merge_layers(merged[-1], layer)
            merges += m
        else:
            merged.append(layer)
    full = []
    for layer in merged:
        gates = {g.q: g for g in layer.gates}
        for q, _ in layer_pairs(c.n_qubits, layer.parity):
            gates.setdefault(q, RGate.identity(q))
        full.append(Layer(layer.parity, tuple(gates.values())))
    return c.with_layers(full), merges
