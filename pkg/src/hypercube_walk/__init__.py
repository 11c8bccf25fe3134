"""Coined quantum walk search on the hypercube with weighted self-loops."""

from .core import (
    ConfigurationError,
    HypercubeConfig,
    WalkState,
    apply_coin,
    apply_oracle,
    apply_shift,
    coin_state,
    initial_state,
    step,
)
from .engine import (
    StepRecord,
    WalkConfig,
    WalkResult,
    evolve,
    marked_probability,
    neighbor_probability,
    peak,
    run_walk,
)
from .experiments import ExperimentResult, scenario, sweep_alpha, table2_grid
from .marked_sets import MarkedSet, adjacent_set, mixed_set, random_nonadjacent_set
from .selfloop import SelfLoopPolicy, optimal_l

__version__ = "0.1.0"
