"""Exact Yang-Baxter compression of Trotterized XY-chain circuits."""
from .circuit import Circuit, Layer, circuit_unitary, layer_pairs, trotter_circuit, validate
from .compressor import (
    CompressionStats,
    circuit_reflection,
    compress_parallel,
    compress_sequential,
    ybe_ops_for_reflection,
)
from .estimator import YBECompressor
from .gates import RGate, XYCouplings, canonical_angle, cnot_cost, merge, r_matrix, xy_trotter_params
from .serialization import from_json, from_qasm, to_json, to_qasm
from .simulator import Trajectory, evolve_xy, exact_trotter_oracle, neel_state, staggered_magnetization
from .solver import NoSolution, solve_a2v, solve_v2a, verify_ybe

__version__ = "0.1.0"
