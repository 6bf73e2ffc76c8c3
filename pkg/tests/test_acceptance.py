"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import math
import time

import numpy as np
import pytest

from ybec.circuit import Circuit, Layer, circuit_unitary, layer_pairs, trotter_circuit
from ybec.compressor import compress_parallel, compress_sequential, ybe_ops_for_reflection
from ybec.gates import RGate, XYCouplings, cnot_cost, r_matrix
from ybec.linalg import frobenius_distance
from ybec.serialization import from_json, from_qasm, qasm_block_unitary, to_json, to_qasm
from ybec.simulator import evolve_xy, exact_trotter_oracle
from ybec.solver import (
    NoSolution,
    a_shape_unitary,
    condition_residual,
    solve_a2v,
    solve_v2a,
    verify_ybe,
)

FIG6 = XYCouplings(-0.8, -0.2, 0.05)
SEED = 12345


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {k}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def sample_triples(count=1000, seed=SEED):
    rng = np.random.default_rng(seed)
    return [tuple(tuple(p) for p in rng.uniform(-math.pi, math.pi, (3, 2))) for _ in range(count)]


def test_1_solver_correctness(report):
    start = time.perf_counter()
    failures, worst, worst_trip = 0, 0.0, 0.0
    for t in sample_triples():
        try:
            v = solve_a2v(t)
            back = solve_v2a(v)
        except NoSolution:
            failures += 1
            continue
        worst = max(worst, verify_ybe(t, v))
        worst_trip = max(worst_trip, frobenius_distance(a_shape_unitary(back), a_shape_unitary(t)))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and worst_trip < 1e-9 and elapsed < 10 and failures == 0
    report(1, ok, f"NoSolution rate {failures}/1000, max verify {worst:.2e}, "
                  f"max round-trip {worst_trip:.2e}, {elapsed:.2f}s")


def test_2_condition_iff_equality(report):
    rng = np.random.default_rng(SEED + 1)
    agree, total = 0, 0
    for t in sample_triples():
        v = solve_a2v(t)
        # returned solution plus a perturbed negative control
        bumped = [list(p) for p in v]
        bumped[rng.integers(3)][rng.integers(2)] += rng.uniform(1e-4, 1.0)
        for cand in (v, bumped):
            total += 1
            agree += (condition_residual(t, cand) < 1e-9) == (verify_ybe(t, cand) < 1e-9)
    report(2, agree == total, f"condition and unitary equality agree on {agree}/{total} cases")


def test_3_compression_exactness(report):
    start = time.perf_counter()
    worst, bad_depth = 0.0, []
    for n in (3, 4, 5, 6):
        for t in (2, 5, 10, 20):
            c = trotter_circuit(n, t, FIG6)
            out, _ = compress_sequential(c)
            worst = max(worst, frobenius_distance(circuit_unitary(c), circuit_unitary(out)))
            if out.depth != min(2 * t, n):
                bad_depth.append((n, t, out.depth))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-7 and not bad_depth and elapsed < 120
    report(3, ok, f"max distance {worst:.2e}, depth mismatches {bad_depth}, {elapsed:.2f}s")


def test_4_cnot_plateau(report):
    bad = []
    for t in range(3, 26):
        c = trotter_circuit(5, t, FIG6)
        out, _ = compress_sequential(c)
        if cnot_cost(out) != 20 or cnot_cost(c) != 8 * t:
            bad.append((t, cnot_cost(c), cnot_cost(out)))
    report(4, not bad, f"N=5, T=3..25 compressed to 20 CNOTs; mismatches {bad}")


def test_5_quadratic_max_cnots(report):
    counts = {n: cnot_cost(compress_sequential(trotter_circuit(n, n, FIG6))[0]) for n in range(4, 11)}
    ok = all(v == n * (n - 1) for n, v in counts.items())
    report(5, ok, f"max CNOTs by N {counts}")


def test_6_cubic_ybe_ops(report):
    start = time.perf_counter()
    ns = np.arange(4, 13)
    counts = np.array([ybe_ops_for_reflection(int(n)) for n in ns], dtype=float)
    coeffs = np.polyfit(ns, counts, 3)
    fit = np.polyval(coeffs, ns)
    r2 = 1 - np.sum((counts - fit) ** 2) / np.sum((counts - counts.mean()) ** 2)
    elapsed = time.perf_counter() - start
    ok = counts[0] == 4 and r2 > 0.999 and elapsed < 60
    report(6, ok, f"ops {counts.astype(int).tolist()}, cubic R^2 {r2:.6f}, {elapsed:.2f}s")


def test_7_parallel_equivalence(report):
    c = trotter_circuit(5, 50, FIG6)
    assert c.depth == 100
    seq, _ = compress_sequential(c)
    u_seq = circuit_unitary(seq)
    bound = math.ceil(100 / 7)
    details, ok = [], True
    for workers in (1, 2, 4, 8):
        out, stats = compress_parallel(c, workers)
        d = frobenius_distance(u_seq, circuit_unitary(out))
        sizes_ok = all(s <= 7 for sizes in stats.fragment_sizes for s in sizes)
        ok &= out.depth == 5 and d < 1e-7 and sizes_ok and stats.max_concurrent_fragments <= bound
        details.append(f"w={workers}: depth {out.depth}, dist {d:.1e}, max concurrent {stats.max_concurrent_fragments}")
    report(7, ok, f"bound {bound}; " + "; ".join(details))


def test_8_simulation_equivalence(report):
    n, steps, every = 5, 100, 10
    canonical = trotter_circuit(n, steps, FIG6)
    compressed, _ = compress_sequential(canonical)
    a = np.array(evolve_xy(n, steps, FIG6, canonical, every).values)
    b = np.array(evolve_xy(n, steps, FIG6, compressed, every).values)
    o = np.array(exact_trotter_oracle(n, steps, FIG6, every).values)
    gap = max(np.abs(a - b).max(), np.abs(a - o).max(), np.abs(b - o).max())
    ok = len(a) == 11 and abs(a[0] - 1) < 1e-12 and gap < 1e-8
    report(8, ok, f"m_s(0) = {a[0]:.15f}, max pairwise gap {gap:.2e} over {len(a)} points")


def test_9_serialization(report):
    rng = np.random.default_rng(SEED + 9)
    circuits = [trotter_circuit(5, 4, FIG6), compress_sequential(trotter_circuit(6, 9, FIG6))[0]]
    layers, parity = [], "even"
    for _ in range(7):
        layers.append(Layer(parity, tuple(RGate(q, *rng.uniform(-math.pi, math.pi, 2)) for q, _ in layer_pairs(6, parity))))
        parity = "odd" if parity == "even" else "even"
    circuits.append(Circuit(6, tuple(layers), {"note": "random"}))
    json_ok = all(from_json(to_json(c)) == c for c in circuits)
    qasm_gap, qasm_shape = 0.0, True
    for c in circuits:
        back = from_qasm(to_qasm(c))
        qasm_shape &= back.n_qubits == c.n_qubits and [l.parity for l in back.layers] == [l.parity for l in c.layers]
        for ga, gb in zip(c.gates(), back.gates()):
            qasm_shape &= ga.q == gb.q
            qasm_gap = max(qasm_gap, abs(ga.gamma - gb.gamma), abs(ga.delta - gb.delta))
        qasm_shape &= c.n_gates == back.n_gates
    block_gap = max(
        np.abs(qasm_block_unitary(g, d) - r_matrix(g, d)).max()
        for g, d in rng.uniform(-math.pi, math.pi, (100, 2))
    )
    ok = json_ok and qasm_shape and qasm_gap <= 1e-15 and block_gap < 1e-12
    report(9, ok, f"JSON exact {json_ok}, QASM angle gap {qasm_gap:.1e}, block unitary gap {block_gap:.1e}")
