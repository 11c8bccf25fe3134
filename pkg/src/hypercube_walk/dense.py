"""
Dense-matrix reference for small hypercubes.

Every factor of the step operator is written out as an explicit matrix in
coin-major basis order ``|c> (x) |x>``, i.e. row index ``c * N + x``. Nothing
here calls the in-place kernels, so the two routes check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .core import ConfigurationError, HypercubeConfig, WalkState, step

__all__ = ["DenseUnitary", "build_dense_step", "CrossValidationReport", "cross_validate"]

MAX_DENSE_N = 6


@dataclass(frozen=True)
class DenseUnitary:
    matrix: np.ndarray
    n: int
    l: float
    marked: tuple[int, ...]

    @property
    def coin_dim(self) -> int:
        return self.matrix.shape[0] >> self.n

    def orthogonality_error(self) -> float:
        m = self.matrix
        return float(np.abs(m.T @ m - np.eye(m.shape[0])).max())


def _flip_bit(x: int, d: int, n: int) -> int:
    bits = list(format(x, f"0{n}b"))
    pos = n - 1 - d
    bits[pos] = "1" if bits[pos] == "0" else "0"
    return int("".join(bits), 2)


def _shift_matrix(n: int, coin_dim: int) -> np.ndarray:
    N = 2**n
    S = np.zeros((coin_dim * N, coin_dim * N))
    for d in range(n):
        for x in range(N):
            S[d * N + _flip_bit(x, d, n), d * N + x] = 1.0
    for c in range(n, coin_dim):
        for x in range(N):
            S[c * N + x, c * N + x] = 1.0
    return S


def _grover_coin(n: int, l: float, coin_dim: int) -> np.ndarray:
    weights = np.ones(coin_dim)
    if coin_dim == n + 1:
        weights[n] = np.sqrt(l)
    s = weights / np.sqrt(n + l)
    return 2.0 * np.outer(s, s) - np.eye(coin_dim)


def _oracle(N: int, marked: Iterable[int]) -> np.ndarray:
    Q = np.eye(N)
    for w in marked:
        e = np.zeros(N)
        e[w] = 1.0
        Q -= 2.0 * np.outer(e, e)
    return Q


def build_dense_step(n: int, l: float, marked: Iterable[int] = (),
                     coin_dim: Optional[int] = None) -> DenseUnitary:
    """
    Explicit ``S (C x I_N) (I_coin x Q)``.

    ``coin_dim`` defaults to ``n + 1`` when ``l > 0`` and ``n`` otherwise.
    Refuses ``n > 6``.
    """
    if n < 1:
        raise ConfigurationError(f"n must be >= 1, got {n}")
    if n > MAX_DENSE_N:
        raise ConfigurationError(f"dense reference refuses n={n} > {MAX_DENSE_N}")
    if l < 0:
        raise ConfigurationError(f"self-loop weight must be >= 0, got {l}")
    if coin_dim is None:
        coin_dim = n + 1 if l > 0 else n
    if coin_dim not in (n, n + 1) or (l > 0 and coin_dim == n):
        raise ConfigurationError(f"coin_dim={coin_dim} invalid for n={n}, l={l}")
    N = 2**n
    marked = tuple(int(w) for w in marked)
    if any(w < 0 or w >= N for w in marked):
        raise ConfigurationError(f"vertex index out of range in {marked} (N={N})")
    S = _shift_matrix(n, coin_dim)
    C = np.kron(_grover_coin(n, l, coin_dim), np.eye(N))
    Q = np.kron(np.eye(coin_dim), _oracle(N, marked))
    return DenseUnitary(S @ C @ Q, n, float(l), marked)


@dataclass(frozen=True)
class CrossValidationReport:
    n: int
    l: float
    marked: tuple[int, ...]
    steps: int
    trials: int
    max_deviation: float
    tolerance: float = 1e-9

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance


def cross_validate(n: int, l: float, marked: Iterable[int], steps: int,
                   trials: int = 3, seed: int = 0) -> CrossValidationReport:
    """Evolve random unit vectors with the dense power and the fast kernels."""
    marked = tuple(int(w) for w in marked)
    dense = build_dense_step(n, l, marked)
    power = np.linalg.matrix_power(dense.matrix, steps)
    config = HypercubeConfig.for_weight(n, l)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        v = rng.standard_normal(dense.matrix.shape[0])
        v /= np.linalg.norm(v)
        expected = power @ v
        state = WalkState(config, v.reshape(config.coin_dim, config.N).copy())
        for _ in range(steps):
            step(state, marked, l)
        worst = max(worst, float(np.abs(state.flat() - expected).max()))
    return CrossValidationReport(n, float(l), marked, steps, trials, worst)
