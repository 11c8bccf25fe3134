"""
Amplitude storage and operator kernels for the coined walk on the hypercube.

The state is a real array of shape ``(coin_dim, N)``: row ``d < n`` holds the
amplitude travelling along edge direction ``d`` and, when a self-loop is
present, row ``n`` holds the stay-put amplitude. All kernels act in place and
cost O(coin_dim * N).

Operators
---------
- apply_oracle : sign flip on every coin direction of the marked vertices
- apply_coin   : weighted Grover reflection, one rank-1 update per vertex
- apply_shift  : swap ``(d, x) <-> (d, x ^ 2**d)``; the loop row is fixed
- step         : oracle, then coin, then shift
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "ConfigurationError",
    "HypercubeConfig",
    "WalkState",
    "coin_state",
    "initial_state",
    "apply_coin",
    "apply_shift",
    "apply_oracle",
    "step",
]


class ConfigurationError(ValueError):
    """Raised for an invalid degree, weight, vertex index or generator request."""


@dataclass(frozen=True)
class HypercubeConfig:
    """
    Geometry of the walk.

    Parameters
    ----------
    n : int
        Hypercube degree (number of bit positions).
    loop : bool
        Whether the coin register carries the extra self-loop direction.
        Required for ``l > 0``; optional for the loopless walk.
    """

    n: int
    loop: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise ConfigurationError(f"n must be an integer, got {self.n!r}")
        if self.n < 1:
            raise ConfigurationError(f"n must be >= 1, got {self.n}")

    @classmethod
    def for_weight(cls, n: int, l: float, embed: bool = False) -> "HypercubeConfig":
        """Compact layout for ``l == 0`` unless ``embed`` asks for the loop row."""
        return cls(n=n, loop=bool(l > 0 or embed))

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def coin_dim(self) -> int:
        return self.n + 1 if self.loop else self.n


class WalkState:
    """
    Mutable amplitude vector indexed by ``(direction, vertex)``.

    ``amplitudes`` is a C-contiguous float64 array of shape ``(coin_dim, N)``.
    """

    __slots__ = ("config", "amplitudes")

    def __init__(self, config: HypercubeConfig, amplitudes: NDArray[np.float64]):
        amplitudes = np.ascontiguousarray(amplitudes, dtype=np.float64)
        expected = (config.coin_dim, config.N)
        if amplitudes.shape != expected:
            raise ConfigurationError(
                f"amplitude array has shape {amplitudes.shape}, expected {expected}"
            )
        self.config = config
        self.amplitudes = amplitudes

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def N(self) -> int:
        return self.config.N

    @property
    def coin_dim(self) -> int:
        return self.config.coin_dim

    def copy(self) -> "WalkState":
        return WalkState(self.config, self.amplitudes.copy())

    def norm_squared(self) -> float:
        return float(np.dot(self.amplitudes.ravel(), self.amplitudes.ravel()))

    def vertex_probabilities(self) -> NDArray[np.float64]:
        """Probability of each vertex, summed over coin directions."""
        return np.einsum("cx,cx->x", self.amplitudes, self.amplitudes)

    def flat(self) -> NDArray[np.float64]:
        """View as one vector in coin-major (``c * N + x``) order."""
        return self.amplitudes.reshape(-1)

    def __repr__(self) -> str:
        return f"WalkState(n={self.n}, coin_dim={self.coin_dim})"


def _check_weight(l: float) -> float:
    l = float(l)
    if not np.isfinite(l) or l < 0:
        raise ConfigurationError(f"self-loop weight must be finite and >= 0, got {l}")
    return l


def coin_state(config: HypercubeConfig, l: float) -> NDArray[np.float64]:
    """
    Unit coin vector: ``1/sqrt(n+l)`` on each edge direction and
    ``sqrt(l)/sqrt(n+l)`` on the loop direction.
    """
    l = _check_weight(l)
    if l > 0 and not config.loop:
        raise ConfigurationError("l > 0 needs a config with the loop direction")
    n = config.n
    s = np.full(config.coin_dim, 1.0 / np.sqrt(n + l))
    if config.loop:
        s[n] = np.sqrt(l) / np.sqrt(n + l)
    return s


def initial_state(config: HypercubeConfig, l: float = 0.0) -> WalkState:
    """Coin state times the uniform superposition over all ``N`` vertices."""
    s = coin_state(config, l)
    amps = np.empty((config.coin_dim, config.N))
    amps[:] = (s / np.sqrt(config.N))[:, None]
    return WalkState(config, amps)


def apply_coin(state: WalkState, l: float) -> WalkState:
    """Reflect every vertex's coin column about the coin state: ``2 s (s.psi) - psi``."""
    s = coin_state(state.config, l)
    amps = state.amplitudes
    overlap = s @ amps
    np.negative(amps, out=amps)
    amps += 2.0 * s[:, None] * overlap[None, :]
    return state


def apply_shift(state: WalkState) -> WalkState:
    """Move direction-``d`` amplitude across the edge ``x <-> x ^ 2**d``."""
    amps = state.amplitudes
    for d in range(state.n):
        # blocks of 2**(d+1) vertices; halves differ exactly in bit d
        pairs = amps[d].reshape(-1, 2, 1 << d)
        low = pairs[:, 0, :].copy()
        pairs[:, 0, :] = pairs[:, 1, :]
        pairs[:, 1, :] = low
    return state


def _as_index_array(marked: Iterable[int], N: int) -> NDArray[np.intp]:
    idx = np.asarray(list(marked), dtype=np.int64).reshape(-1)
    if idx.size and (idx.min() < 0 or idx.max() >= N):
        bad = int(idx.max()) if idx.max() >= N else int(idx.min())
        raise ConfigurationError(f"vertex index out of range: {bad} (N={N})")
    if np.unique(idx).size != idx.size:
        raise ConfigurationError("marked vertices must be distinct")
    return idx.astype(np.intp)


def apply_oracle(state: WalkState, marked: Iterable[int]) -> WalkState:
    """Negate all coin amplitudes sitting on a marked vertex."""
    idx = _as_index_array(marked, state.N)
    if idx.size:
        state.amplitudes[:, idx] *= -1.0
    return state


def step(state: WalkState, marked: Iterable[int], l: float) -> WalkState:
    """One search step ``S (C x I) (I x Q)``: oracle, coin, shift."""
    apply_oracle(state, marked)
    apply_coin(state, l)
    apply_shift(state)
    return state
