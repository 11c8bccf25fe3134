"""
Command line front end.

    hypercube-walk walk --n 10 --marked 0 --selfloop single --steps 200
    hypercube-walk walk --n 10 --marked nonadjacent:4 --seed 7 --output json
    hypercube-walk scenario fig6b --output json --out fig6b.json
    hypercube-walk sweep --n 10 --k 2,3,5 --alphas 1-10 --seed 42
    hypercube-walk grid --n 10 --k-max 10 --seed 42

Configuration errors exit with status 2 and a one-line diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import ConfigurationError
from .engine import WalkConfig, run_walk
from .experiments import (
    SCENARIOS,
    ExperimentResult,
    Series,
    set_seed,
    sweep_alpha,
    table2_grid,
    scenario,
)
from .marked_sets import MarkedSet, adjacent_set, mixed_set, random_nonadjacent_set
from .selfloop import SelfLoopPolicy

EXIT_CONFIG = 2


@dataclass(frozen=True)
class RunSpec:
    n: int
    marked: str
    selfloop: str = "none"
    steps: int = 100
    seed: Optional[int] = None
    output: str = "csv"
    out_path: Optional[str] = None

    def marked_set(self) -> MarkedSet:
        return parse_marked(self.marked, self.n, self.seed)

    def walk_config(self) -> WalkConfig:
        return WalkConfig(
            n=self.n,
            marked=self.marked_set(),
            selfloop=SelfLoopPolicy.parse(self.selfloop),
            steps=self.steps,
            seed=self.seed,
        )


def _ints(text: str, field: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ConfigurationError(f"{field}: expected comma-separated integers, got {text!r}") from None


def parse_marked(text: str, n: int, seed: Optional[int]) -> MarkedSet:
    """``0,5,9`` | ``nonadjacent:k`` | ``adjacent:j`` | ``mixed:j,i``."""
    kind, sep, arg = text.partition(":")
    if not sep:
        try:
            return MarkedSet(_ints(text, "marked")).validate(n)
        except ConfigurationError as exc:
            msg = str(exc)
            raise ConfigurationError(msg if msg.startswith("marked") else f"marked: {msg}") from None
    vals = _ints(arg, "marked")
    if kind == "adjacent":
        if len(vals) != 1:
            raise ConfigurationError(f"marked: adjacent needs 'adjacent:j', got {text!r}")
        return adjacent_set(vals[0], n)
    if kind in ("nonadjacent", "mixed") and seed is None:
        raise ConfigurationError(f"seed: marked generator {kind!r} is random and needs --seed")
    if kind == "nonadjacent":
        if len(vals) != 1:
            raise ConfigurationError(f"marked: nonadjacent needs 'nonadjacent:k', got {text!r}")
        return random_nonadjacent_set(n, vals[0], set_seed(seed, vals[0]))
    if kind == "mixed":
        if len(vals) != 2:
            raise ConfigurationError(f"marked: mixed needs 'mixed:j,i', got {text!r}")
        return mixed_set(vals[0], vals[1], set_seed(seed), n)
    raise ConfigurationError(f"marked: unknown generator {kind!r}")


def _alphas(text: str) -> list[float]:
    try:
        if "-" in text and "," not in text:
            lo, hi = text.split("-")
            return [float(a) for a in range(int(lo), int(hi) + 1)]
        return [float(a) for a in text.split(",")]
    except ValueError:
        raise ConfigurationError(f"alphas: cannot parse {text!r}") from None


def _emit(result: ExperimentResult, output: str, out_path: Optional[str]) -> None:
    text = result.to_json() + "\n" if output == "json" else result.to_csv()
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def run_command(args: argparse.Namespace) -> int:
    if args.command == "walk":
        spec = RunSpec(args.n, args.marked, args.selfloop, args.steps, args.seed,
                       args.output, args.out)
        config = spec.walk_config()
        walk = run_walk(config)
        result = ExperimentResult("walk", {"n": spec.n, "seed": spec.seed},
                                  [Series("walk", config, walk)])
        print(f"peak_step={walk.peak_step} peak_probability={walk.peak_probability:.6f}",
              file=sys.stderr)
    elif args.command == "scenario":
        result = scenario(args.name, seed=args.seed)
    elif args.command == "sweep":
        if args.seed is None:
            raise ConfigurationError("seed: sweep draws random marked sets and needs --seed")
        sets = {f"k={k}": random_nonadjacent_set(args.n, k, set_seed(args.seed, k))
                for k in _ints(args.k, "k")}
        result = sweep_alpha(args.n, sets, _alphas(args.alphas), args.steps, args.seed)
    else:
        if args.seed is None:
            raise ConfigurationError("seed: grid draws random marked sets and needs --seed")
        result = table2_grid(args.n, args.k_max, args.steps, args.seed)
    _emit(result, args.output, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypercube-walk",
        description="Coined quantum walk search on the hypercube with weighted self-loops.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, steps):
        p.add_argument("--seed", type=int, default=None, help="seed for random marked sets")
        p.add_argument("--output", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        if steps is not None:
            p.add_argument("--steps", type=int, default=steps)

    walk = sub.add_parser("walk", help="run one walk")
    walk.add_argument("--n", type=int, required=True)
    walk.add_argument("--marked", required=True,
                      help="0,5,9 | nonadjacent:k | adjacent:j | mixed:j,i")
    walk.add_argument("--selfloop", default="none",
                      help="none | single | optimal | value=<x> | alpha=<a>")
    common(walk, 100)

    scen = sub.add_parser("scenario", help="reproduce a figure or table")
    scen.add_argument("name", help=", ".join(SCENARIOS))
    common(scen, None)

    sweep = sub.add_parser("sweep", help="peak success against l = alpha*n/N")
    sweep.add_argument("--n", type=int, default=10)
    sweep.add_argument("--k", default="2,3,5", help="sizes of the random marked sets")
    sweep.add_argument("--alphas", default="1-10", help="'1-10' or '0.5,1,2'")
    common(sweep, 200)

    grid = sub.add_parser("grid", help="peak success for l=(n/N)*r against k marked")
    grid.add_argument("--n", type=int, default=10)
    grid.add_argument("--k-max", type=int, default=10)
    common(grid, 200)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run_command(args)
    except ConfigurationError as exc:
        print(f"hypercube-walk: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
