"""Self-loop weight policies."""

from __future__ import annotations

from dataclasses import dataclass

from .core import ConfigurationError

__all__ = ["SelfLoopPolicy", "optimal_l"]

_MODES = ("none", "single_optimal", "multi_optimal", "explicit", "multiplier")


def optimal_l(n: int, N: int, k: int) -> float:
    """Weight ``n * k / N`` that maximises success for ``k`` marked vertices."""
    if n < 1 or N != 1 << n:
        raise ConfigurationError(f"inconsistent hypercube size n={n}, N={N}")
    if k < 1:
        raise ConfigurationError(f"k must be >= 1 for the multi-vertex optimum, got {k}")
    return n * k / N


@dataclass(frozen=True)
class SelfLoopPolicy:
    """
    How the self-loop weight ``l`` is chosen for a walk.

    ``value`` is the explicit weight for ``explicit`` and the factor applied to
    ``n/N`` for ``multiplier``; it is ignored otherwise.
    """

    mode: str = "none"
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.mode not in _MODES:
            raise ConfigurationError(f"unknown self-loop mode {self.mode!r}")
        if self.mode in ("explicit", "multiplier") and not self.value >= 0:
            raise ConfigurationError(f"self-loop {self.mode} value must be >= 0, got {self.value}")

    @classmethod
    def none(cls) -> "SelfLoopPolicy":
        return cls("none")

    @classmethod
    def single_optimal(cls) -> "SelfLoopPolicy":
        return cls("single_optimal")

    @classmethod
    def multi_optimal(cls) -> "SelfLoopPolicy":
        return cls("multi_optimal")

    @classmethod
    def explicit(cls, l: float) -> "SelfLoopPolicy":
        return cls("explicit", float(l))

    @classmethod
    def multiplier(cls, alpha: float) -> "SelfLoopPolicy":
        return cls("multiplier", float(alpha))

    @classmethod
    def parse(cls, text: str) -> "SelfLoopPolicy":
        """Parse ``none | single | optimal | value=<x> | alpha=<a>``."""
        text = text.strip()
        simple = {"none": "none", "single": "single_optimal", "optimal": "multi_optimal"}
        if text in simple:
            return cls(simple[text])
        key, sep, raw = text.partition("=")
        if sep and key in ("value", "alpha"):
            try:
                number = float(raw)
            except ValueError:
                raise ConfigurationError(f"selfloop: cannot parse number in {text!r}") from None
            return cls.explicit(number) if key == "value" else cls.multiplier(number)
        raise ConfigurationError(f"selfloop: unrecognised policy {text!r}")

    def resolve(self, n: int, k: int) -> float:
        N = 1 << n
        if self.mode == "none":
            return 0.0
        if self.mode == "single_optimal":
            return n / N
        if self.mode == "multi_optimal":
            return optimal_l(n, N, k)
        if self.mode == "explicit":
            return float(self.value)
        return float(self.value) * n / N

    def to_text(self) -> str:
        if self.mode == "explicit":
            return f"value={self.value!r}"
        if self.mode == "multiplier":
            return f"alpha={self.value!r}"
        return {"none": "none", "single_optimal": "single", "multi_optimal": "optimal"}[self.mode]
