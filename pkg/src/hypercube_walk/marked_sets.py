"""
Marked vertex sets and Hamming-distance helpers on the n-cube.

Random generators take an explicit seed (int or ``numpy.random.Generator``);
there is no implicit entropy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .core import ConfigurationError

__all__ = [
    "MarkedSet",
    "hamming_distance",
    "neighbors",
    "neighborhood",
    "is_nonadjacent",
    "random_nonadjacent_set",
    "adjacent_set",
    "mixed_set",
]

SeedLike = Union[int, np.integer, np.random.Generator, np.random.SeedSequence]


def _rng(seed: SeedLike) -> np.random.Generator:
    if seed is None:
        raise ConfigurationError("seed: a seed is required for random marked sets")
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def hamming_distance(a: int, b: int) -> int:
    return (int(a) ^ int(b)).bit_count()


def neighbors(v: int, n: int) -> list[int]:
    return [int(v) ^ (1 << d) for d in range(n)]


def neighborhood(marked: Iterable[int], n: int) -> set[int]:
    """Unmarked vertices adjacent to at least one marked vertex."""
    marked = set(int(v) for v in marked)
    out = {u for v in marked for u in neighbors(v, n)}
    return out - marked


def is_nonadjacent(vertices: Iterable[int]) -> bool:
    """True when no two vertices are at Hamming distance 1."""
    vs = list(vertices)
    return all(hamming_distance(a, b) != 1 for i, a in enumerate(vs) for b in vs[i + 1:])


@dataclass(frozen=True)
class MarkedSet:
    """Distinct vertex indices in insertion order."""

    vertices: tuple[int, ...]

    def __init__(self, vertices: Iterable[int] = ()):
        vs = tuple(int(v) for v in vertices)
        if len(set(vs)) != len(vs):
            raise ConfigurationError(f"marked: duplicate vertices in {list(vs)}")
        if any(v < 0 for v in vs):
            raise ConfigurationError(f"marked: negative vertex index in {list(vs)}")
        object.__setattr__(self, "vertices", vs)

    @property
    def k(self) -> int:
        return len(self.vertices)

    def validate(self, n: int) -> "MarkedSet":
        N = 1 << n
        for v in self.vertices:
            if v >= N:
                raise ConfigurationError(f"marked: vertex index out of range: {v} (N={N})")
        return self

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.vertices


def _draw_nonadjacent(rng: np.random.Generator, n: int, count: int,
                      avoid: Sequence[int], max_draws: int) -> list[int]:
    N = 1 << n
    chosen: list[int] = []
    blocked = set(avoid)
    blocked.update(u for v in avoid for u in neighbors(v, n))
    draws = 0
    while len(chosen) < count:
        if draws >= max_draws:
            raise ConfigurationError(
                f"could not place {count} non-adjacent vertices in {max_draws} draws (n={n})"
            )
        v = int(rng.integers(N))
        draws += 1
        if v in blocked:
            continue
        chosen.append(v)
        blocked.add(v)
        blocked.update(neighbors(v, n))
    return chosen


def random_nonadjacent_set(n: int, k: int, seed: SeedLike) -> MarkedSet:
    """
    Draw ``k`` distinct, pairwise non-adjacent vertices by rejection sampling.

    Raises
    ------
    ConfigurationError
        If ``k > N / (n + 1)``, the bound under which sampling always
        succeeds: each accepted vertex blocks at most ``n + 1`` others.
    """
    N = 1 << n
    if k < 0:
        raise ConfigurationError(f"k must be >= 0, got {k}")
    if k * (n + 1) > N:
        raise ConfigurationError(
            f"k={k} non-adjacent vertices is infeasible for n={n} (limit N/(n+1)={N / (n + 1):.3g})"
        )
    rng = _rng(seed)
    return MarkedSet(_draw_nonadjacent(rng, n, k, (), max_draws=1000 * N))


def adjacent_set(j: int, n: int = 10) -> MarkedSet:
    """Vertex 0 plus its first ``j - 1`` neighbours ``1, 2, 4, ...``."""
    if not 2 <= j <= n + 1:
        raise ConfigurationError(f"j must be in [2, {n + 1}] for n={n}, got {j}")
    return MarkedSet([0] + [1 << i for i in range(j - 1)])


def mixed_set(j: int, i: int, seed: SeedLike, n: int = 10) -> MarkedSet:
    """
    Adjacent vertices ``0, 1, 2, 4, ...`` interleaved with ``i`` random vertices.

    The order is ``0, 1, r0, 2, r1, 4, r2, ...`` with any surplus random
    vertices appended. Random vertices avoid the whole star around 0 and one
    another, so a fixed seed gives nested sets as ``j`` and ``i`` grow.
    """
    adjacent = list(adjacent_set(j, n))
    if i < 0:
        raise ConfigurationError(f"i must be >= 0, got {i}")
    if i == 0:
        return MarkedSet(adjacent)
    star = [0] + [1 << b for b in range(n)]
    # star + its neighbourhood covers 1 + n + n(n-1)/2 vertices
    free = (1 << n) - (1 + n + n * (n - 1) // 2)
    if i * (n + 1) > free:
        raise ConfigurationError(f"i={i} non-adjacent extras is infeasible for n={n}")
    rng = _rng(seed)
    extras = _draw_nonadjacent(rng, n, i, star, max_draws=1000 * (1 << n))
    order = adjacent[:2]
    rest = adjacent[2:]
    for pos, extra in enumerate(extras):
        order.append(extra)
        if pos < len(rest):
            order.append(rest[pos])
    order.extend(rest[len(extras):])
    return MarkedSet(order)
