"""
Scenario builders, self-loop sweeps and the success-probability grid.

Every runner returns an :class:`ExperimentResult`, which serialises to JSON
(lossless) and CSV (6 decimals).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .core import ConfigurationError
from .engine import StepRecord, WalkConfig, WalkResult, evolve, run_walk
from .marked_sets import MarkedSet, adjacent_set, mixed_set, random_nonadjacent_set
from .selfloop import SelfLoopPolicy

__all__ = [
    "Series",
    "ExperimentResult",
    "set_seed",
    "sweep_alpha",
    "alpha_curves",
    "table2_grid",
    "grid_matrix",
    "SCENARIOS",
    "scenario",
]

CSV_FIELDS = ("step", "p_marked", "p_neighbor", "p_neither")


@dataclass(frozen=True)
class Series:
    label: str
    config: WalkConfig
    result: WalkResult

    def summary(self) -> dict:
        t, p = self.result.peak_step, self.result.peak_probability
        rec = self.result.records[t]
        return {
            "label": self.label,
            "peak_step": t,
            "peak_probability": p,
            "p_neighbor_at_peak": rec.p_neighbor,
            "p_neither_at_peak": rec.p_neither,
        }


@dataclass
class ExperimentResult:
    name: str
    parameters: dict
    series: list[Series]
    extras: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        labels = [s.label for s in self.series]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate series labels in {self.name!r}")

    def __getitem__(self, label: str) -> Series:
        for s in self.series:
            if s.label == label:
                return s
        raise KeyError(label)

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.series]

    @property
    def summary(self) -> list[dict]:
        return [s.summary() for s in self.series]

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "parameters": {
                **self.parameters,
                "walks": {s.label: s.config.to_dict() for s in self.series},
            },
            "series": [
                {"label": s.label, "records": [_record_dict(r) for r in s.result.records]}
                for s in self.series
            ],
            "summary": self.summary,
        }
        if self.extras:
            out["extras"] = self.extras
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "ExperimentResult":
        params = dict(data["parameters"])
        walks = params.pop("walks")
        series = []
        for entry in data["series"]:
            records = tuple(
                StepRecord(int(r["t"]), float(r["p_marked"]), float(r["p_neighbor"]),
                           float(r["p_neither"]))
                for r in entry["records"]
            )
            config = WalkConfig.from_dict(walks[entry["label"]])
            series.append(Series(entry["label"], config, WalkResult(records)))
        return cls(data["name"], params, series, dict(data.get("extras", {})))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentResult":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        """One row per (series, step); the label column is dropped for a single series."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        single = len(self.series) == 1
        writer.writerow(CSV_FIELDS if single else ("label",) + CSV_FIELDS)
        for s in self.series:
            for r in s.result.records:
                row = [r.t, f"{r.p_marked:.6f}", f"{r.p_neighbor:.6f}", f"{r.p_neither:.6f}"]
                writer.writerow(row if single else [s.label] + row)
        return buf.getvalue()


def _record_dict(r: StepRecord) -> dict:
    return {"t": r.t, "p_marked": r.p_marked, "p_neighbor": r.p_neighbor, "p_neither": r.p_neither}


def set_seed(seed: int, *key: int) -> np.random.SeedSequence:
    """Independent, reproducible stream for one generated set."""
    if seed is None:
        raise ConfigurationError("seed: this experiment draws random marked sets and needs a seed")
    return np.random.SeedSequence([int(seed), *key])


def _run(label: str, n: int, marked: Iterable[int], policy: SelfLoopPolicy, steps: int,
         seed: Optional[int] = None) -> Series:
    config = WalkConfig(n=n, marked=MarkedSet(marked), selfloop=policy, steps=steps, seed=seed)
    return Series(label, config, run_walk(config))


def sweep_alpha(n: int, marked_sets: Union[Sequence[MarkedSet], Mapping[str, MarkedSet]],
                alphas: Sequence[float], steps: int = 200, seed: Optional[int] = None,
                name: str = "sweep_alpha") -> ExperimentResult:
    """
    Peak success for ``l = alpha * n/N`` over every (marked set, alpha) pair.

    Series labels are ``"<set label>,alpha=<a>"``; sets passed as a sequence
    are labelled ``k=<size>`` (suffixed when two sets share a size).
    """
    if len(alphas) == 0:
        raise ConfigurationError("alphas must be non-empty")
    if isinstance(marked_sets, Mapping):
        labelled = list(marked_sets.items())
    else:
        labelled, seen = [], {}
        for ms in marked_sets:
            ms = MarkedSet(ms)
            base = f"k={ms.k}"
            seen[base] = seen.get(base, 0) + 1
            labelled.append((base if seen[base] == 1 else f"{base}#{seen[base]}", ms))
    series = [
        _run(f"{label},alpha={a:g}", n, ms, SelfLoopPolicy.multiplier(a), steps, seed)
        for label, ms in labelled
        for a in alphas
    ]
    params = {"n": n, "steps": steps, "seed": seed, "alphas": [float(a) for a in alphas],
              "sets": [label for label, _ in labelled]}
    return ExperimentResult(name, params, series)


def alpha_curves(result: ExperimentResult) -> dict[str, list[tuple[float, float]]]:
    """``{set label: [(alpha, peak probability), ...]}`` from a sweep result."""
    curves: dict[str, list[tuple[float, float]]] = {}
    for s in result.series:
        label, _, alpha = s.label.rpartition(",alpha=")
        curves.setdefault(label, []).append((float(alpha), s.result.peak_probability))
    return curves


def table2_grid(n: int = 10, k_max: int = 10, steps: int = 200,
                seed: int = None) -> ExperimentResult:
    """
    Peak success for ``l = (n/N) * r`` (rows) against ``k`` random
    non-adjacent marked vertices (columns), ``r, k = 1..k_max``.

    Each column draws its own set from ``set_seed(seed, k)`` and every row of
    that column reuses it.
    """
    if k_max < 1:
        raise ConfigurationError(f"k_max must be >= 1, got {k_max}")
    sets = {k: random_nonadjacent_set(n, k, set_seed(seed, k)) for k in range(1, k_max + 1)}
    series = [
        _run(f"r={r},k={k}", n, sets[k], SelfLoopPolicy.multiplier(r), steps, seed)
        for r in range(1, k_max + 1)
        for k in range(1, k_max + 1)
    ]
    params = {"n": n, "k_max": k_max, "steps": steps, "seed": seed}
    return ExperimentResult("table2_grid", params, series)


def grid_matrix(result: ExperimentResult) -> np.ndarray:
    """Rows ``r = 1..k_max``, columns ``k = 1..k_max`` of peak probabilities."""
    k_max = result.parameters["k_max"]
    out = np.empty((k_max, k_max))
    for r in range(1, k_max + 1):
        for k in range(1, k_max + 1):
            out[r - 1, k - 1] = result[f"r={r},k={k}"].result.peak_probability
    return out


# --- figure scenarios (n = 10 throughout) -----------------------------------

def _nonadjacent_family(name, ks, policy, steps, seed, n):
    series = [
        _run(f"k={k}", n, random_nonadjacent_set(n, k, set_seed(seed, k)), policy, steps, seed)
        for k in ks
    ]
    return ExperimentResult(name, {"n": n, "steps": steps, "seed": seed}, series)


def _fig1(seed, n):
    return _nonadjacent_family("fig1", range(1, 5), SelfLoopPolicy.none(), 100, seed, n)


def _fig2(seed, n):
    result = _nonadjacent_family("fig2", range(1, 5), SelfLoopPolicy.none(), 100, seed, n)
    dists = {}
    for s in result.series:
        t = s.result.peak_step
        probs = evolve(s.config, t).vertex_probabilities()
        dists[s.label] = {"step": t, "probabilities": probs.tolist()}
    result.extras["distributions"] = dists
    return result


def _fig3_table1(seed, n):
    series = [
        _run(f"k={k}", n, random_nonadjacent_set(n, k, set_seed(seed, k)),
             SelfLoopPolicy.none(), 100, seed)
        for k in (1, 4)
    ]
    return ExperimentResult("fig3_table1", {"n": n, "steps": 100, "seed": seed}, series)


def _selfloop_comparison(seed, n):
    alphas = (0.25, 0.5, 0.75, 1.0, 2.0)
    series = []
    for k in range(1, 5):
        ms = random_nonadjacent_set(n, k, set_seed(seed, k))
        series += [_run(f"k={k},alpha={a:g}", n, ms, SelfLoopPolicy.multiplier(a), 200, seed)
                   for a in alphas]
    params = {"n": n, "steps": 200, "seed": seed, "alphas": list(alphas)}
    return ExperimentResult("selfloop_comparison", params, series)


def _fig4(seed, n):
    sets = {f"k={k}": random_nonadjacent_set(n, k, set_seed(seed, k)) for k in (2, 3, 5, 14, 17)}
    return sweep_alpha(n, sets, list(range(1, 21)), steps=200, seed=seed, name="fig4")


def _fig5(seed, n):
    return _nonadjacent_family("fig5", range(1, 6), SelfLoopPolicy.multi_optimal(), 200, seed, n)


def _adjacent_family(name, policies, steps, n):
    series = [
        _run(f"{tag},k={j}" if len(policies) > 1 else f"k={j}", n, adjacent_set(j, n), policy, steps)
        for tag, policy in policies
        for j in range(2, n + 2)
    ]
    return ExperimentResult(name, {"n": n, "steps": steps}, series)


_BOTH = (("single", SelfLoopPolicy.single_optimal()), ("optimal", SelfLoopPolicy.multi_optimal()))


def _fig6a(seed, n):
    return _adjacent_family("fig6a", _BOTH[:1], 200, n)


def _fig6b(seed, n):
    return _adjacent_family("fig6b", _BOTH[1:], 200, n)


def _fig6_summary(seed, n):
    return _adjacent_family("fig6_summary", _BOTH, 200, n)


def _mixed_family(name, pairs, seed, n):
    series = []
    for tag, policy in _BOTH:
        for j, i in pairs:
            ms = mixed_set(j, i, set_seed(seed), n)
            series.append(_run(f"{tag},adjacent={j},extra={i}", n, ms, policy, 100, seed))
    return ExperimentResult(name, {"n": n, "steps": 100, "seed": seed,
                                   "pairs": [list(p) for p in pairs]}, series)


def _fig7(seed, n):
    return _mixed_family("fig7", [(e + 1, e) for e in range(1, n + 1)], seed, n)


def _fig8(seed, n):
    # 0,1,r0 | 2,r1 | 4,r2 | ... : one adjacent and one random vertex per level
    pairs = [(e + 1, e) for e in range(1, n + 1)] + [(n + 1, n + 1)]
    return _mixed_family("fig8", pairs, seed, n)


SCENARIOS: dict[str, tuple[Callable[[Optional[int], int], ExperimentResult], bool]] = {
    "fig1": (_fig1, True),
    "fig2": (_fig2, True),
    "fig3_table1": (_fig3_table1, True),
    "selfloop_comparison": (_selfloop_comparison, True),
    "fig4": (_fig4, True),
    "fig5": (_fig5, True),
    "fig6a": (_fig6a, False),
    "fig6b": (_fig6b, False),
    "fig6_summary": (_fig6_summary, False),
    "fig_maxcurve": (_fig6_summary, False),
    "fig7": (_fig7, True),
    "fig8": (_fig8, True),
}


def scenario(name: str, seed: Optional[int] = None, n: int = 10) -> ExperimentResult:
    """
    Run a named figure/table parameterisation.

    Scenarios with random marked sets (the second tuple field in
    ``SCENARIOS``) require ``seed``.
    """
    try:
        builder, random = SCENARIOS[name]
    except KeyError:
        raise ConfigurationError(
            f"scenario: unknown name {name!r} (choose from {', '.join(SCENARIOS)})"
        ) from None
    if random and seed is None:
        raise ConfigurationError(f"seed: scenario {name!r} draws random marked sets and needs --seed")
    return builder(seed, n)
