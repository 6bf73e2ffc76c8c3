"""scikit-learn style front end for the compression passes."""
from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .circuit import Circuit
from .compressor import compress_parallel, compress_sequential
from .validation import check_circuit, check_count

STRATEGIES = ("sequential", "parallel")


class YBECompressor(TransformerMixin, BaseEstimator):
    """Compress brick-wall R-gate circuits to ``n_qubits`` layers.

    Parameters
    ----------
    strategy : {"sequential", "parallel"}
        Reflect-and-fuse one layer at a time, or compress ``n + 2`` layer
        fragments concurrently until the depth stops shrinking.
    max_workers : int
        Worker processes for the parallel strategy.

    Attributes
    ----------
    n_qubits_ : int
        Qubit count seen during ``fit``.
    stats_ : CompressionStats
        Counters from the most recent ``transform``.
    """

    def __init__(self, strategy: str = "sequential", max_workers: int = 1):
        self.strategy = strategy
        self.max_workers = max_workers

    def fit(self, X: Circuit, y=None):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        check_count(self.max_workers, "max_workers")
        X = check_circuit(X)
        self.n_qubits_ = X.n_qubits
        return self

    def transform(self, X: Circuit) -> Circuit:
        check_is_fitted(self, "n_qubits_")
        X = check_circuit(X, self.n_qubits_)
        if self.strategy == "parallel":
            out, self.stats_ = compress_parallel(X, self.max_workers)
        else:
            out, self.stats_ = compress_sequential(X)
        return out
