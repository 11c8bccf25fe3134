"""
Multi-step evolution with per-step marked / neighbour / remainder probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import ConfigurationError, HypercubeConfig, WalkState, initial_state, step
from .marked_sets import MarkedSet, neighborhood
from .selfloop import SelfLoopPolicy

__all__ = [
    "WalkConfig",
    "StepRecord",
    "WalkResult",
    "marked_probability",
    "neighbor_probability",
    "run_walk",
    "evolve",
    "peak",
]


@dataclass(frozen=True)
class WalkConfig:
    """
    Everything needed to reproduce one walk.

    ``seed`` is bookkeeping for randomly generated marked sets; the walk
    itself is deterministic. ``embed_loopless`` keeps the (zero) loop row
    when ``l == 0``.
    """

    n: int
    marked: MarkedSet
    selfloop: SelfLoopPolicy = field(default_factory=SelfLoopPolicy.none)
    steps: int = 100
    seed: Optional[int] = None
    embed_loopless: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.marked, MarkedSet):
            object.__setattr__(self, "marked", MarkedSet(self.marked))
        HypercubeConfig(self.n)
        self.marked.validate(self.n)
        if self.steps < 0:
            raise ConfigurationError(f"steps must be >= 0, got {self.steps}")

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def l(self) -> float:
        return self.selfloop.resolve(self.n, self.marked.k)

    def hypercube(self) -> HypercubeConfig:
        return HypercubeConfig.for_weight(self.n, self.l, embed=self.embed_loopless)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "marked": list(self.marked.vertices),
            "selfloop": self.selfloop.to_text(),
            "l": self.l,
            "steps": self.steps,
            "seed": self.seed,
            "embed_loopless": self.embed_loopless,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WalkConfig":
        return cls(
            n=int(data["n"]),
            marked=MarkedSet(data["marked"]),
            selfloop=SelfLoopPolicy.parse(data["selfloop"]),
            steps=int(data["steps"]),
            seed=data.get("seed"),
            embed_loopless=bool(data.get("embed_loopless", False)),
        )


@dataclass(frozen=True)
class StepRecord:
    t: int
    p_marked: float
    p_neighbor: float
    p_neither: float


@dataclass(frozen=True)
class WalkResult:
    records: tuple[StepRecord, ...]

    @property
    def peak_step(self) -> int:
        return peak(self)[0]

    @property
    def peak_probability(self) -> float:
        return peak(self)[1]

    def p_marked(self) -> np.ndarray:
        return np.array([r.p_marked for r in self.records])

    def at(self, t: int) -> StepRecord:
        return self.records[t]


def marked_probability(state: WalkState, marked: Iterable[int]) -> float:
    idx = np.fromiter((int(v) for v in marked), dtype=np.intp)
    if idx.size == 0:
        return 0.0
    sub = state.amplitudes[:, idx]
    return float(np.sum(sub * sub))


def neighbor_probability(state: WalkState, marked: Iterable[int]) -> float:
    """Mass on unmarked vertices at Hamming distance 1 from some marked vertex."""
    nb = sorted(neighborhood(marked, state.n))
    if not nb:
        return 0.0
    sub = state.amplitudes[:, np.asarray(nb, dtype=np.intp)]
    return float(np.sum(sub * sub))


def _class_masks(n: int, marked: Sequence[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    N = 1 << n
    is_marked = np.zeros(N, dtype=bool)
    is_marked[list(marked)] = True
    is_neighbor = np.zeros(N, dtype=bool)
    nb = list(neighborhood(marked, n))
    if nb:
        is_neighbor[nb] = True
    return is_marked, is_neighbor, ~(is_marked | is_neighbor)


def evolve(config: WalkConfig, steps: Optional[int] = None) -> WalkState:
    """State after ``steps`` steps (default ``config.steps``)."""
    l = config.l
    state = initial_state(config.hypercube(), l)
    marked = config.marked.vertices
    for _ in range(config.steps if steps is None else steps):
        step(state, marked, l)
    return state


def run_walk(config: WalkConfig) -> WalkResult:
    l = config.l
    state = initial_state(config.hypercube(), l)
    marked = config.marked.vertices
    masks = _class_masks(config.n, marked)

    def record(t: int) -> StepRecord:
        p = state.vertex_probabilities()
        pm, pn, pr = (float(p[m].sum()) for m in masks)
        return StepRecord(t, pm, pn, pr)

    records = [record(0)]
    for t in range(1, config.steps + 1):
        step(state, marked, l)
        records.append(record(t))
    return WalkResult(tuple(records))


def peak(result: WalkResult | Sequence[float]) -> tuple[int, float]:
    """First step attaining the maximum marked probability."""
    if isinstance(result, WalkResult):
        series = [r.p_marked for r in result.records]
    else:
        series = list(result)
    if not series:
        raise ValueError("peak of an empty series")
    best = int(np.argmax(series))
    return best, float(series[best])
