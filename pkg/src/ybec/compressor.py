"""Circuit reflection, sequential compression and fragment-parallel compression.

A square brick wall (``n`` layers on ``n`` qubits) can be rewritten into the
square brick wall of opposite starting parity using only three-qubit YBE
rewrites. Reading each R gate as a crossing of two wires of a sorting network,
every rewrite moves one wire across the crossing of two others, and the full
reflection moves every wire across every crossing it does not take part in:
exactly ``C(n, 3)`` rewrites. The top wire is swept first, then the
remaining ``n - 1`` wires are reflected the same way.

After a reflection the block ends with the parity of the layer that follows
it, so the two layers fuse and the circuit loses one layer.
"""
from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import ceil

from .circuit import (
    Circuit,
    Layer,
    layer_pairs,
    merge_layers,
    normalize,
    other_parity,
    pair_parity,
    validate,
)
from .gates import RGate
from .solver import NoSolution, solve_a2v, solve_v2a

log = logging.getLogger(__name__)


@dataclass
class CompressionStats:
    layers_in: int = 0
    layers_out: int = 0
    a2v_count: int = 0
    v2a_count: int = 0
    merges: int = 0
    reflections: int = 0
    fragment_timings: list[float] = field(default_factory=list)
    passes: int = 0
    fragment_sizes: list[list[int]] = field(default_factory=list)
    max_concurrent_fragments: int = 0

    @property
    def ybe_ops(self) -> int:
        return self.a2v_count + self.v2a_count

    def absorb(self, other: "CompressionStats") -> None:
        self.a2v_count += other.a2v_count
        self.v2a_count += other.v2a_count
        self.merges += other.merges
        self.reflections += other.reflections

    def to_dict(self) -> dict:
        return {
            "layers_in": self.layers_in,
            "layers_out": self.layers_out,
            "a2v_count": self.a2v_count,
            "v2a_count": self.v2a_count,
            "ybe_ops": self.ybe_ops,
            "merges": self.merges,
            "reflections": self.reflections,
            "passes": self.passes,
            "fragment_sizes": self.fragment_sizes,
            "max_concurrent_fragments": self.max_concurrent_fragments,
            "fragment_timings": self.fragment_timings,
        }


# ---------------------------------------------------------------------------
# reflection on a gate sequence


def _wire_crossings(seq: list[RGate], n: int) -> list[frozenset]:
    pos = list(range(n))
    out = []
    for g in seq:
        a, b = pos[g.q], pos[g.q + 1]
        out.append(frozenset((a, b)))
        pos[g.q], pos[g.q + 1] = b, a
    return out


def _touches(a: RGate, b: RGate) -> bool:
    return abs(a.q - b.q) <= 1


def _candidate_moves(seq: list[RGate]):
    """Yield ``(i, y, l, later)`` for every triple that can be made contiguous.

    ``seq[i]`` and ``seq[l]`` are consecutive gates on one pair and ``seq[y]`` is
    the only gate ordered between them; ``later`` holds window indices that must
    stay after the triple.
    """
    for i, x in enumerate(seq):
        l = next((j for j in range(i + 1, len(seq)) if seq[j].q == x.q), None)
        if l is None:
            continue
        after_x = {i}
        for j in range(i + 1, l):
            if any(_touches(seq[j], seq[d]) for d in after_x):
                after_x.add(j)
        before_z = {l}
        for j in range(l - 1, i, -1):
            if any(_touches(seq[j], seq[u]) for u in before_z):
                before_z.add(j)
        between = (after_x & before_z) - {i, l}
        if len(between) != 1:
            continue
        y = next(iter(between))
        if abs(seq[y].q - x.q) == 1:
            yield i, y, l, after_x


def _rewrite(x: RGate, y: RGate, z: RGate, stats: CompressionStats) -> tuple[RGate, RGate, RGate]:
    """Replace the time-ordered triple ``x, y, z`` by the mirrored triple."""
    if y.q == x.q + 1:
        # A-shape: upper, lower, upper in time; matrix order puts z leftmost
        v4, v5, v6 = solve_a2v((z.params, y.params, x.params))
        stats.a2v_count += 1
        return RGate(y.q, *v6), RGate(x.q, *v5), RGate(y.q, *v4)
    a1, a2, a3 = solve_v2a((z.params, y.params, x.params))
    stats.v2a_count += 1
    return RGate(y.q, *a3), RGate(x.q, *a2), RGate(y.q, *a1)


def reflect_sequence(seq: list[RGate], n: int, stats: CompressionStats) -> list[RGate]:
    seq = list(seq)
    pending = {frozenset(t) for t in itertools.combinations(range(n), 3)}
    while pending:
        crossings = _wire_crossings(seq, n)
        best = None
        for i, y, l, later in _candidate_moves(seq):
            triple = crossings[i] | crossings[y]
            if triple in pending:
                key = (sorted(triple), i)
                if best is None or key < best[0]:
                    best = (key, i, y, l, later, triple)
        if best is None:
            raise RuntimeError(f"reflection stalled with {len(pending)} wire triples left")
        _, i, y, l, later, triple = best
        try:
            new = _rewrite(seq[i], seq[y], seq[l], stats)
        except NoSolution as exc:
            raise NoSolution(
                f"{exc} at gate positions {i},{y},{l} on pairs {seq[i].q},{seq[y].q}",
                triple=exc.triple,
                residual=exc.residual,
            ) from exc
        window = range(i + 1, l)
        before = [seq[j] for j in window if j not in later]
        after = [seq[j] for j in window if j in later and j != y]
        seq = seq[:i] + before + list(new) + after + seq[l + 1:]
        pending.discard(triple)
    return seq


def layout(seq: list[RGate], n: int, first_parity: str, depth: int) -> list[Layer]:
    """Schedule a gate sequence as early as possible into alternating-parity layers."""
    last = [-1] * n
    slots: list[list[RGate]] = [[] for _ in range(depth)]
    for g in seq:
        t = max(last[g.q], last[g.q + 1]) + 1
        if (t % 2 == 0) != (pair_parity(g.q) == first_parity):
            t += 1
        if t >= depth:
            raise RuntimeError(f"gate on pair {g.q} does not fit in {depth} layers")
        last[g.q] = last[g.q + 1] = t
        slots[t].append(g)
    parity = first_parity
    layers = []
    for gates in slots:
        layers.append(Layer(parity, tuple(gates)))
        parity = other_parity(parity)
    return layers


def _reflect_layers(layers: list[Layer], n: int, stats: CompressionStats) -> list[Layer]:
    seq = [g for layer in layers for g in layer.gates]
    seq = reflect_sequence(seq, n, stats)
    out = layout(seq, n, other_parity(layers[0].parity), len(layers))
    for k, layer in enumerate(out):
        if len(layer.gates) != len(layer_pairs(n, layer.parity)):
            raise RuntimeError(f"reflected layer {k} is not a full brick layer")
    stats.reflections += 1
    return out


def _check_square(c: Circuit) -> Circuit:
    problems = validate(c)
    if problems:
        raise ValueError("invalid circuit: " + "; ".join(problems))
    c, _ = normalize(c)
    if c.depth != c.n_qubits:
        raise ValueError(
            f"reflection needs an alternating {c.n_qubits}-layer block, got {c.depth} layers"
        )
    return c


def circuit_reflection(c: Circuit, stats: CompressionStats | None = None) -> Circuit:
    """Rewrite an ``n``-layer brick wall on ``n`` qubits into the opposite-parity brick wall."""
    stats = stats if stats is not None else CompressionStats()
    c = _check_square(c)
    return c.with_layers(_reflect_layers(list(c.layers), c.n_qubits, stats))


def ybe_ops_for_reflection(n: int, seed: int = 0) -> int:
    """Number of three-qubit rewrites used to reflect a random ``n``-qubit square block."""
    import numpy as np

    if n < 2:
        raise ValueError(f"need at least 2 qubits, got {n}")
    rng = np.random.default_rng(seed)
    parity = "odd"
    layers = []
    for _ in range(n):
        layers.append(
            Layer(parity, tuple(RGate(q, *rng.uniform(-np.pi, np.pi, 2)) for q, _ in layer_pairs(n, parity)))
        )
        parity = other_parity(parity)
    stats = CompressionStats()
    circuit_reflection(Circuit(n, tuple(layers)), stats)
    return stats.ybe_ops


# ---------------------------------------------------------------------------
# compression passes


def _prepare(c: Circuit) -> tuple[list[Layer], int]:
    problems = validate(c)
    if problems:
        raise ValueError("invalid circuit: " + "; ".join(problems))
    c, merges = normalize(c)
    return list(c.layers), merges


def _finish(c: Circuit, layers: list[Layer]) -> Circuit:
    return c.with_layers(layers, compressed=True)


def _compress_head(layers: list[Layer], n: int, stats: CompressionStats) -> list[Layer]:
    """One sequential step: reflect the first ``n`` layers and fuse layer ``n + 1``."""
    block = _reflect_layers(layers[:n], n, stats)
    fused, m = merge_layers(block[-1], layers[n])
    stats.merges += m
    return block[:-1] + [fused] + layers[n + 1:]


def compress_sequential(c: Circuit) -> tuple[Circuit, CompressionStats]:
    n = c.n_qubits
    stats = CompressionStats(layers_in=c.depth)
    if c.depth <= n:
        stats.layers_out = c.depth
        return c, stats
    layers, stats.merges = _prepare(c)
    while len(layers) > n:
        layers = _compress_head(layers, n, stats)
    stats.layers_out = len(layers)
    return _finish(c, layers), stats


def _compress_fragment(layers: list[Layer], n: int) -> tuple[list[Layer], CompressionStats, float]:
    start = time.perf_counter()
    stats = CompressionStats()
    if len(layers) == n + 2:
        block = _reflect_layers(layers[1:n + 1], n, stats)
        head, m1 = merge_layers(layers[0], block[0])
        tail, m2 = merge_layers(block[-1], layers[n + 1])
        stats.merges += m1 + m2
        layers = [head] + block[1:-1] + [tail]
    elif len(layers) == n + 1:
        layers = _compress_head(layers, n, stats)
    return layers, stats, time.perf_counter() - start


def partition(layers: list[Layer], n: int) -> list[list[Layer]]:
    """Split into consecutive fragments of ``n + 2`` layers plus a shorter tail."""
    size = n + 2
    return [layers[i:i + size] for i in range(0, len(layers), size)]


def _fuse_boundaries(layers: list[Layer]) -> tuple[list[Layer], int]:
    out: list[Layer] = []
    merges = 0
    for layer in layers:
        if out and out[-1].parity == layer.parity:
            out[-1], m = merge_layers(out[-1], layer)
            merges += m
        else:
            out.append(layer)
    return out, merges


def compress_parallel(c: Circuit, max_workers: int = 1) -> tuple[Circuit, CompressionStats]:
    """Compress independent ``(n + 2)``-layer fragments concurrently, repeating until ``n`` layers remain."""
    if max_workers < 1:
        raise ValueError(f"max_workers must be at least 1, got {max_workers}")
    n = c.n_qubits
    stats = CompressionStats(layers_in=c.depth)
    if c.depth <= n:
        stats.layers_out = c.depth
        return c, stats
    layers, stats.merges = _prepare(c)
    pool = ProcessPoolExecutor(max_workers) if max_workers > 1 else None
    try:
        while len(layers) > n:
            fragments = partition(layers, n)
            active = sum(1 for f in fragments if len(f) > n)
            bound = ceil(len(layers) / (n + 2))
            concurrent = min(max_workers, active)
            assert concurrent <= bound
            stats.max_concurrent_fragments = max(stats.max_concurrent_fragments, concurrent)
            stats.fragment_sizes.append([len(f) for f in fragments])
            if pool is None:
                results = [_compress_fragment(f, n) for f in fragments]
            else:
                results = list(pool.map(_compress_fragment, fragments, [n] * len(fragments)))
            new_layers: list[Layer] = []
            for out, part, elapsed in results:
                stats.absorb(part)
                stats.fragment_timings.append(elapsed)
                new_layers.extend(out)
            new_layers, m = _fuse_boundaries(new_layers)
            stats.merges += m
            stats.passes += 1
            log.debug("pass %d: %d -> %d layers", stats.passes, len(layers), len(new_layers))
            if len(new_layers) >= len(layers):
                break
            layers = new_layers
    finally:
        if pool is not None:
            pool.shutdown()
    stats.layers_out = len(layers)
    return _finish(c, layers), stats
