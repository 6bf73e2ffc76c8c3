"""Command-line entry point: ``ybec generate|compress|simulate|count|verify``.

Exit codes: 0 success, 1 usage error, 2 solver failure, 3 verification
failure, 4 I/O or file-format error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from .circuit import ODD, PARITIES, Circuit, circuit_unitary, couplings_from_metadata, trotter_circuit
from .compressor import compress_parallel, compress_sequential
from .gates import XYCouplings, cnot_cost
from .linalg import frobenius_distance
from .serialization import CircuitFormatError, from_json, from_qasm, to_json, to_qasm
from .simulator import evolve_xy
from .solver import NoSolution, condition_residual, solve_a2v, solve_v2a, verify_ybe

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3, 4
VERIFY_TOL = 1e-7


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _fmt(path: str | None, explicit: str | None, default: str = "json") -> str:
    if explicit:
        return explicit
    if path and path.endswith(".qasm"):
        return "qasm"
    return default


def load_circuit(path: str) -> Circuit:
    text = Path(path).read_text(encoding="utf-8")
    return from_qasm(text) if path.endswith(".qasm") else from_json(text)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _dump(c: Circuit, path: str | None, fmt: str) -> None:
    _write(path, to_qasm(c) if fmt == "qasm" else to_json(c))


def _couplings(args) -> XYCouplings:
    if args.dt <= 0:
        raise UsageError(f"--dt must be positive, got {args.dt}")
    return XYCouplings(args.jx, args.jy, args.dt)


def _positive(name: str, value: int, minimum: int = 1) -> int:
    if value < minimum:
        raise UsageError(f"{name} must be at least {minimum}, got {value}")
    return value


def cmd_generate(args) -> int:
    _positive("-n", args.n, 2)
    _positive("-T", args.T)
    c = trotter_circuit(args.n, args.T, _couplings(args), args.first_parity)
    outputs = args.output or [None]
    for path in outputs:
        _dump(c, path, _fmt(path, args.format if len(outputs) == 1 else None))
    return EXIT_OK


def cmd_compress(args) -> int:
    c = load_circuit(args.input)
    start = time.perf_counter()
    if args.workers is None:
        out, stats = compress_sequential(c)
    else:
        _positive("--workers", args.workers)
        out, stats = compress_parallel(c, args.workers)
    report = stats.to_dict()
    report.update(
        wall_time=time.perf_counter() - start,
        strategy="sequential" if args.workers is None else "parallel",
        workers=args.workers or 1,
        cnot_cost_in=cnot_cost(c),
        cnot_cost=cnot_cost(out),
    )
    _dump(out, args.output, _fmt(args.output, args.format, _fmt(args.input, None)))
    stats_text = json.dumps(report, indent=1) + "\n"
    if args.stats:
        _write(args.stats, stats_text)
    elif args.output not in (None, "-"):
        sys.stdout.write(stats_text)
    return EXIT_OK


def _ybe_suite(samples: int, seed: int) -> int:
    rng = np.random.default_rng(seed)
    failures, worst = 0, 0.0
    for _ in range(samples):
        t = rng.uniform(-math.pi, math.pi, (3, 2))
        try:
            v = solve_a2v(t)
            back = solve_v2a(v)
        except NoSolution:
            failures += 1
            continue
        worst = max(worst, verify_ybe(t, v), verify_ybe(back, v), condition_residual(t, v))
    ok = failures == 0 and worst < 1e-9
    print(f"samples={samples} seed={seed} no_solution={failures} max_residual={worst:.3e} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    if not args.files:
        return _ybe_suite(_positive("--ybe-samples", args.ybe_samples), args.seed)
    if len(args.files) != 2:
        raise UsageError("verify takes exactly two circuit files")
    a, b = (load_circuit(p) for p in args.files)
    if a.n_qubits != b.n_qubits:
        raise UsageError(f"qubit-count mismatch: {a.n_qubits} vs {b.n_qubits}")
    dist = frobenius_distance(circuit_unitary(a), circuit_unitary(b))
    ok = dist < args.tol
    print(f"distance={dist:.6e} tol={args.tol:g} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_count(args) -> int:
    c = _couplings(args)
    rows = []
    if args.n_range:
        lo, hi = args.n_range
        _positive("--n-range", lo, 2)
        cases = [(n, args.T or n) for n in range(lo, hi + 1)]
    else:
        if args.n is None:
            raise UsageError("count needs -n (with --t-range) or --n-range")
        lo, hi = args.t_range
        _positive("--t-range", lo)
        cases = [(_positive("-n", args.n, 2), t) for t in range(lo, hi + 1)]
    for n, t in cases:
        canonical = trotter_circuit(n, t, c)
        compressed, stats = compress_sequential(canonical)
        per_reflection = stats.ybe_ops // stats.reflections if stats.reflections else 0
        rows.append(
            f"{n},{t},{cnot_cost(canonical)},{cnot_cost(compressed)},{compressed.depth},"
            f"{per_reflection},{stats.ybe_ops}\n"
        )
        _progress(f"count: n={n} T={t} done")
    header = "n,trotter_steps,canonical_cnots,compressed_cnots,compressed_layers,ybe_ops_per_reflection,total_ybe_ops\n"
    _write(args.output, header + "".join(rows))
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.input:
        circuit = load_circuit(args.input)
        c = couplings_from_metadata(circuit.metadata)
        t_steps = circuit.metadata.get("trotter_steps")
        if c is None or t_steps is None:
            raise UsageError("circuit metadata must carry jx, jy, dt and trotter_steps")
        n = circuit.n_qubits
    else:
        if args.n is None or args.T is None:
            raise UsageError("simulate needs -i FILE or both -n and -T")
        n, t_steps, c = _positive("-n", args.n, 2), _positive("-T", args.T), _couplings(args)
        circuit = trotter_circuit(n, t_steps, c)
        if args.compressed:
            circuit, _ = compress_sequential(circuit)
    traj = evolve_xy(n, int(t_steps), c, circuit, _positive("--record-every", args.record_every))
    _write(args.output, traj.to_csv())
    return EXIT_OK


def _add_couplings(p) -> None:
    p.add_argument("--jx", type=float, default=-0.8, help="XX coupling (default -0.8)")
    p.add_argument("--jy", type=float, default=-0.2, help="YY coupling (default -0.2)")
    p.add_argument("--dt", type=float, default=0.05, help="Trotter step size (default 0.05)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ybec", description="Yang-Baxter compression of XY-chain Trotter circuits")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write the canonical Trotter circuit")
    p.add_argument("-n", type=int, required=True, help="number of qubits")
    p.add_argument("-T", type=int, required=True, help="number of Trotter steps")
    _add_couplings(p)
    p.add_argument("--first-parity", choices=PARITIES, default=ODD)
    p.add_argument("-o", "--output", action="append", help="output path (.json or .qasm); repeatable")
    p.add_argument("--format", choices=("json", "qasm"))
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("compress", help="compress a circuit file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("json", "qasm"))
    p.add_argument("--stats", help="write compression statistics JSON here")
    p.add_argument("--workers", type=int, help="use the fragment-parallel pass with this many workers")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("verify", help="compare two circuits, or run the YBE solver suite")
    p.add_argument("files", nargs="*")
    p.add_argument("--tol", type=float, default=VERIFY_TOL)
    p.add_argument("--ybe-samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="CNOT and YBE-operation counts for sweeps over T or N")
    p.add_argument("-n", type=int)
    p.add_argument("-T", type=int, help="Trotter steps for --n-range sweeps (default: N)")
    p.add_argument("--t-range", type=int, nargs=2, default=(1, 20), metavar=("LO", "HI"))
    p.add_argument("--n-range", type=int, nargs=2, metavar=("LO", "HI"))
    _add_couplings(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("simulate", help="staggered-magnetization trajectory as CSV")
    p.add_argument("-i", "--input", help="circuit file (metadata supplies couplings and steps)")
    p.add_argument("-n", type=int)
    p.add_argument("-T", type=int)
    _add_couplings(p)
    p.add_argument("--compressed", action="store_true", help="compress before simulating (flag mode)")
    p.add_argument("--record-every", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ybec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoSolution as exc:
        print(f"ybec: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (OSError, CircuitFormatError) as exc:
        print(f"ybec: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"ybec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
