"""JSON and OpenQASM 2.0 round-tripping for brick-wall circuits.

QASM export writes each R gate as ``cx; rx(-2 gamma); rz(-2 delta); cx`` with
``rx(t) = exp(-i t X / 2)`` and ``rz(t) = exp(-i t Z / 2)``; import only accepts
that pattern.
"""
from __future__ import annotations

import json
import math
import re

import numpy as np

from .circuit import PARITIES, Circuit, Layer, pair_parity
from .gates import RGate


class CircuitFormatError(ValueError):
    """Malformed circuit file."""


def _check_angle(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise CircuitFormatError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise CircuitFormatError(f"{where}: angle must be finite, got {value}")
    return value


def to_dict(c: Circuit) -> dict:
    return {
        "n_qubits": c.n_qubits,
        "layers": [
            {
                "parity": layer.parity,
                "gates": [{"q": g.q, "gamma": g.gamma, "delta": g.delta} for g in layer.gates],
            }
            for layer in c.layers
        ],
        "metadata": dict(c.metadata),
    }


def to_json(c: Circuit) -> str:
    # float repr is the shortest string that round-trips exactly
    return json.dumps(to_dict(c), indent=1, sort_keys=False, allow_nan=False) + "\n"


def _reject_constant(name):
    raise CircuitFormatError(f"non-finite constant {name} is not allowed")


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise CircuitFormatError(f"{where}: expected an object")
    if key not in obj:
        raise CircuitFormatError(f"{where}: missing field {key!r}")
    return obj[key]


def from_dict(data: dict) -> Circuit:
    n = _require(data, "n_qubits", "circuit")
    if isinstance(n, bool) or not isinstance(n, int):
        raise CircuitFormatError(f"circuit: 'n_qubits' must be an integer, got {n!r}")
    raw_layers = _require(data, "layers", "circuit")
    if not isinstance(raw_layers, list):
        raise CircuitFormatError("circuit: 'layers' must be a list")
    layers = []
    for k, raw in enumerate(raw_layers):
        where = f"layers[{k}]"
        parity = _require(raw, "parity", where)
        if parity not in PARITIES:
            raise CircuitFormatError(f"{where}: 'parity' must be 'odd' or 'even', got {parity!r}")
        raw_gates = _require(raw, "gates", where)
        if not isinstance(raw_gates, list):
            raise CircuitFormatError(f"{where}: 'gates' must be a list")
        gates = []
        for j, rg in enumerate(raw_gates):
            gw = f"{where}.gates[{j}]"
            q = _require(rg, "q", gw)
            if isinstance(q, bool) or not isinstance(q, int) or q < 0:
                raise CircuitFormatError(f"{gw}: 'q' must be a nonnegative integer, got {q!r}")
            gamma = _check_angle(_require(rg, "gamma", gw), f"{gw}.gamma")
            delta = _check_angle(_require(rg, "delta", gw), f"{gw}.delta")
            gates.append(RGate(q, gamma, delta))
        layers.append(Layer(parity, tuple(gates)))
    meta = data.get("metadata") or {}
    if not isinstance(meta, dict):
        raise CircuitFormatError("circuit: 'metadata' must be an object")
    return Circuit(n, tuple(layers), meta)


def from_json(text: str) -> Circuit:
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise CircuitFormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return from_dict(data)


_HEADER = ('OPENQASM 2.0;', 'include "qelib1.inc";')
_META_PREFIX = "// ybec-metadata "
_LAYER_RE = re.compile(r"^//\s*layer\s+(\d+)(?:\s+(odd|even))?\s*$")
_QREG_RE = re.compile(r"^qreg\s+q\[(\d+)\];$")
_CX_RE = re.compile(r"^cx\s+q\[(\d+)\],\s*q\[(\d+)\];$")
_ROT_RE = re.compile(r"^(rx|rz)\((\S+)\)\s+q\[(\d+)\];$")


def to_qasm(c: Circuit) -> str:
    lines = list(_HEADER)
    if c.metadata:
        lines.append(_META_PREFIX + json.dumps(c.metadata, sort_keys=True))
    lines.append(f"qreg q[{c.n_qubits}];")
    for k, layer in enumerate(c.layers):
        lines.append(f"// layer {k} {layer.parity}")
        for g in layer.gates:
            a, b = g.q, g.q + 1
            lines += [
                f"cx q[{a}],q[{b}];",
                f"rx({-2.0 * g.gamma!r}) q[{a}];",
                f"rz({-2.0 * g.delta!r}) q[{b}];",
                f"cx q[{a}],q[{b}];",
            ]
    return "\n".join(lines) + "\n"


def from_qasm(text: str) -> Circuit:
    """Parse the exact subset written by :func:`to_qasm`."""
    n = None
    meta: dict = {}
    layers: list[tuple[str, list[RGate]]] = []
    rows = [(i + 1, line.strip()) for i, line in enumerate(text.splitlines())]
    rows = [(i, line) for i, line in rows if line]
    pos = 0

    def fail(lineno, msg):
        raise CircuitFormatError(f"line {lineno}: {msg}")

    while pos < len(rows):
        lineno, line = rows[pos]
        if line in _HEADER:
            pos += 1
            continue
        if line.startswith(_META_PREFIX):
            try:
                meta = json.loads(line[len(_META_PREFIX):], parse_constant=_reject_constant)
            except json.JSONDecodeError:
                fail(lineno, "malformed metadata comment")
            pos += 1
            continue
        m = _QREG_RE.match(line)
        if m:
            if n is not None:
                fail(lineno, "only one qubit register is supported")
            n = int(m.group(1))
            pos += 1
            continue
        m = _LAYER_RE.match(line)
        if m:
            if int(m.group(1)) != len(layers):
                fail(lineno, f"expected layer {len(layers)}, found layer {m.group(1)}")
            layers.append((m.group(2), []))
            pos += 1
            continue
        if line.startswith("//"):
            pos += 1
            continue
        if n is None:
            fail(lineno, "gate before qreg declaration")
        if not layers:
            fail(lineno, "gate outside a '// layer k' block")
        block = rows[pos:pos + 4]
        if len(block) < 4:
            fail(lineno, "truncated gate block")
        layers[-1][1].append(_parse_block(block, fail))
        pos += 4
    if n is None:
        raise CircuitFormatError("missing qreg declaration")
    out = []
    for k, (parity, gates) in enumerate(layers):
        if parity is None:
            if not gates:
                raise CircuitFormatError(f"layer {k}: empty layer needs an explicit parity")
            parity = pair_parity(gates[0].q)
        out.append(Layer(parity, tuple(gates)))
    return Circuit(n, tuple(out), meta)


def _parse_block(block, fail) -> RGate:
    (l1, cx1), (l2, rx), (l3, rz), (l4, cx2) = block
    m1, m4 = _CX_RE.match(cx1), _CX_RE.match(cx2)
    if not m1:
        fail(l1, f"unrecognized instruction {cx1!r}, expected cx")
    a, b = int(m1.group(1)), int(m1.group(2))
    if b != a + 1:
        fail(l1, "cx must act on adjacent qubits q[a],q[a+1]")
    mx, mz = _ROT_RE.match(rx), _ROT_RE.match(rz)
    if not mx or mx.group(1) != "rx" or int(mx.group(3)) != a:
        fail(l2, f"expected rx on q[{a}], found {rx!r}")
    if not mz or mz.group(1) != "rz" or int(mz.group(3)) != b:
        fail(l3, f"expected rz on q[{b}], found {rz!r}")
    if not m4 or (int(m4.group(1)), int(m4.group(2))) != (a, b):
        fail(l4, f"expected closing cx q[{a}],q[{b}], found {cx2!r}")
    try:
        tx, tz = float(mx.group(2)), float(mz.group(2))
    except ValueError:
        fail(l2, "rotation angles must be numeric literals")
    if not (math.isfinite(tx) and math.isfinite(tz)):
        fail(l2, "rotation angles must be finite")
    return RGate(a, -tx / 2.0, -tz / 2.0)


def rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


CX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def qasm_block_unitary(gamma: float, delta: float) -> np.ndarray:
    """4x4 unitary of the exported instruction block, in time order cx, rx x rz, cx."""
    return CX @ np.kron(rx(-2 * gamma), rz(-2 * delta)) @ CX
