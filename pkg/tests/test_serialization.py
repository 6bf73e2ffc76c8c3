import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybec.circuit import Circuit, Layer, circuit_unitary, trotter_circuit
from ybec.compressor import compress_sequential
from ybec.gates import RGate, XYCouplings, r_matrix
from ybec.serialization import (
    CircuitFormatError,
    from_json,
    from_qasm,
    qasm_block_unitary,
    to_json,
    to_qasm,
)

C = XYCouplings(-0.8, -0.2, 0.05)
angle = st.floats(-math.pi, math.pi, allow_nan=False)


def sample_circuits():
    yield trotter_circuit(5, 3, C)
    yield compress_sequential(trotter_circuit(4, 5, XYCouplings(0.3, 1.1, 0.07)))[0]
    yield trotter_circuit(2, 2, C)  # has empty even layers
    yield Circuit(3)


@pytest.mark.parametrize("c", list(sample_circuits()))
def test_json_round_trip(c):
    assert from_json(to_json(c)) == c


@pytest.mark.parametrize("c", list(sample_circuits()))
def test_qasm_round_trip(c):
    back = from_qasm(to_qasm(c))
    assert back.n_qubits == c.n_qubits and back.metadata == c.metadata
    assert [l.parity for l in back.layers] == [l.parity for l in c.layers]
    for la, lb in zip(c.layers, back.layers):
        assert [g.q for g in la.gates] == [g.q for g in lb.gates]
        for ga, gb in zip(la.gates, lb.gates):
            assert abs(ga.gamma - gb.gamma) <= 1e-15 and abs(ga.delta - gb.delta) <= 1e-15


@settings(max_examples=100)
@given(angle, angle)
def test_json_round_trip_exact_angles(g, d):
    c = Circuit(2, (Layer("odd", (RGate(0, g, d),)),))
    assert from_json(to_json(c)) == c


def test_json_missing_field():
    data = json.loads(to_json(trotter_circuit(3, 1, C)))
    del data["n_qubits"]
    with pytest.raises(CircuitFormatError, match="n_qubits"):
        from_json(json.dumps(data))
    data = json.loads(to_json(trotter_circuit(3, 1, C)))
    del data["layers"][1]["gates"][0]["delta"]
    with pytest.raises(CircuitFormatError, match=r"layers\[1\]\.gates\[0\].*delta"):
        from_json(json.dumps(data))


def test_json_rejects_nan_and_garbage():
    text = to_json(trotter_circuit(3, 1, C)).replace("-0.04", "NaN", 1)
    with pytest.raises(CircuitFormatError):
        from_json(text)
    with pytest.raises(CircuitFormatError, match="line"):
        from_json("{\n  broken")


def test_qasm_identity_gate_kept():
    text = to_qasm(Circuit(2, (Layer("odd", (RGate(0, 0.0, 0.0),)),)))
    assert "rx(-0.0) q[0];" in text or "rx(0.0) q[0];" in text
    assert "// layer 0" in text and text.startswith("OPENQASM 2.0;")


def test_qasm_block_format():
    text = to_qasm(Circuit(3, (Layer("even", (RGate(1, 0.25, -0.5),)),)))
    lines = text.splitlines()
    i = lines.index("// layer 0 even")
    assert lines[i + 1:i + 5] == ["cx q[1],q[2];", "rx(-0.5) q[1];", "rz(1.0) q[2];", "cx q[1],q[2];"]


def test_qasm_block_unitary_matches_r_matrix(rng):
    for g, d in rng.uniform(-math.pi, math.pi, (100, 2)):
        assert np.abs(qasm_block_unitary(g, d) - r_matrix(g, d)).max() < 1e-12


def test_qasm_import_errors():
    good = to_qasm(trotter_circuit(3, 1, C))
    with pytest.raises(CircuitFormatError, match="line"):
        from_qasm(good.replace("rz(", "ry(", 1))
    with pytest.raises(CircuitFormatError, match="line"):
        from_qasm(good.replace("cx q[0],q[1];", "h q[0];", 1))
    with pytest.raises(CircuitFormatError):
        from_qasm('OPENQASM 2.0;\ninclude "qelib1.inc";\n')


def test_qasm_preserves_unitary():
    c = compress_sequential(trotter_circuit(4, 4, C))[0]
    assert np.abs(circuit_unitary(from_qasm(to_qasm(c))) - circuit_unitary(c)).max() < 1e-13
