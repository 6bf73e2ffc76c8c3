"""Input checks shared by the estimator, the CLI and the compression passes."""
from __future__ import annotations

import numbers

from .circuit import Circuit, validate


def check_circuit(circuit, n_qubits: int | None = None) -> Circuit:
    """Return ``circuit`` if it is a valid :class:`Circuit`, raise ``ValueError`` otherwise."""
    if not isinstance(circuit, Circuit):
        raise TypeError(f"expected a Circuit, got {type(circuit).__name__}")
    problems = validate(circuit)
    if problems:
        raise ValueError("invalid circuit: " + "; ".join(problems))
    if n_qubits is not None and circuit.n_qubits != n_qubits:
        raise ValueError(f"circuit has {circuit.n_qubits} qubits, expected {n_qubits}")
    return circuit


def check_count(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")
    return int(value)
