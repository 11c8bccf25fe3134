import numpy as np
import pytest

from hypercube_walk.core import ConfigurationError, HypercubeConfig, initial_state
from hypercube_walk.engine import (
    WalkConfig,
    WalkResult,
    StepRecord,
    evolve,
    marked_probability,
    neighbor_probability,
    peak,
    run_walk,
)
from hypercube_walk.marked_sets import MarkedSet, neighborhood, random_nonadjacent_set
from hypercube_walk.selfloop import SelfLoopPolicy, optimal_l


@pytest.fixture(scope="module")
def loopless_single():
    return run_walk(WalkConfig(10, [0], SelfLoopPolicy.none(), 100))


def test_initial_marginals():
    state = initial_state(HypercubeConfig(10))
    assert marked_probability(state, [0]) == pytest.approx(1 / 1024, abs=1e-15)
    assert marked_probability(state, [0, 5, 99, 1000]) == pytest.approx(4 / 1024, abs=1e-15)
    assert neighbor_probability(state, [0]) == pytest.approx(10 / 1024, abs=1e-15)


def test_no_neighbors_when_everything_marked():
    state = initial_state(HypercubeConfig(2))
    assert neighbor_probability(state, [0, 1, 2, 3]) == 0.0


def test_loopless_single_vertex_peak(loopless_single):
    t, p = peak(loopless_single)
    rec = loopless_single.records[t]
    assert p == pytest.approx(0.435, abs=0.005)
    assert rec.p_neighbor == pytest.approx(0.482, abs=0.005)
    assert rec.p_neither == pytest.approx(0.083, abs=0.005)


def test_probe_functions_agree_with_records(loopless_single):
    config = WalkConfig(10, [0], SelfLoopPolicy.none(), 100)
    t = loopless_single.peak_step
    state = evolve(config, t)
    assert marked_probability(state, [0]) == pytest.approx(loopless_single.records[t].p_marked, abs=1e-14)
    assert neighbor_probability(state, [0]) == pytest.approx(loopless_single.records[t].p_neighbor, abs=1e-14)


def test_single_optimal_loop_reaches_0999():
    result = run_walk(WalkConfig(10, [0], SelfLoopPolicy.single_optimal(), 200))
    assert result.peak_step <= 200
    assert result.peak_probability == pytest.approx(0.999, abs=0.001)


def test_four_nonadjacent_loopless_band():
    # the exact split depends on the sampled set; the regime does not
    ms = random_nonadjacent_set(10, 4, 42)
    result = run_walk(WalkConfig(10, ms, SelfLoopPolicy.none(), 100))
    rec = result.records[result.peak_step]
    assert 0.43 <= rec.p_marked <= 0.50
    assert 0.42 <= rec.p_neighbor <= 0.50


def test_zero_steps():
    result = run_walk(WalkConfig(3, [0], SelfLoopPolicy.none(), 0))
    assert len(result.records) == 1
    assert result.records[0].p_marked == pytest.approx(1 / 8, abs=1e-15)
    assert peak(result) == (0, result.records[0].p_marked)


def test_peak_tie_breaks_to_first():
    assert peak([0.3, 0.3, 0.3]) == (0, 0.3)
    assert peak([0.1, 0.5, 0.5]) == (1, 0.5)
    with pytest.raises(ValueError):
        peak([])


@pytest.mark.parametrize("policy", [SelfLoopPolicy.none(), SelfLoopPolicy.multi_optimal(),
                                    SelfLoopPolicy.multiplier(3)])
@pytest.mark.parametrize("marked", [[0], [0, 1], [3, 100, 517, 900], [0, 1, 2, 4]])
def test_record_invariants(policy, marked):
    result = run_walk(WalkConfig(10, marked, policy, 120))
    assert len(result.records) == 121
    k = len(marked)
    first = result.records[0]
    assert first.p_marked == pytest.approx(k / 1024, abs=1e-12)
    assert first.p_neighbor == pytest.approx(len(neighborhood(marked, 10)) / 1024, abs=1e-12)
    for r in result.records:
        assert abs(r.p_marked + r.p_neighbor + r.p_neither - 1) <= 1e-10
        assert all(0 <= p <= 1 + 1e-12 for p in (r.p_marked, r.p_neighbor, r.p_neither))


def test_run_walk_is_deterministic():
    config = WalkConfig(8, random_nonadjacent_set(8, 3, 1), SelfLoopPolicy.multi_optimal(), 150, seed=1)
    assert run_walk(config) == run_walk(config)


def test_embedded_loopless_matches_compact():
    compact = run_walk(WalkConfig(10, [0, 77], SelfLoopPolicy.none(), 100))
    embedded = run_walk(WalkConfig(10, [0, 77], SelfLoopPolicy.none(), 100, embed_loopless=True))
    a = np.array([[r.p_marked, r.p_neighbor] for r in compact.records])
    b = np.array([[r.p_marked, r.p_neighbor] for r in embedded.records])
    assert np.abs(a - b).max() <= 1e-12


def test_config_validation():
    with pytest.raises(ConfigurationError, match="out of range"):
        WalkConfig(10, [2048])
    with pytest.raises(ConfigurationError):
        WalkConfig(10, [0], steps=-1)
    with pytest.raises(ConfigurationError):
        WalkConfig(10, [], SelfLoopPolicy.multi_optimal()).l


def test_config_round_trip():
    config = WalkConfig(10, [0, 9], SelfLoopPolicy.explicit(0.123), 50, seed=4)
    assert WalkConfig.from_dict(config.to_dict()) == config


# --- self-loop policies -----------------------------------------------------

def test_optimal_l_values():
    assert optimal_l(10, 1024, 1) == 10 / 1024
    assert optimal_l(10, 1024, 5) == 50 / 1024
    assert optimal_l(3, 8, 2) == 0.75
    with pytest.raises(ConfigurationError):
        optimal_l(10, 1024, 0)


@pytest.mark.parametrize("text,expected", [
    ("none", 0.0),
    ("single", 10 / 1024),
    ("optimal", 30 / 1024),
    ("value=0.25", 0.25),
    ("alpha=2", 20 / 1024),
])
def test_policy_parse_and_resolve(text, expected):
    policy = SelfLoopPolicy.parse(text)
    assert policy.resolve(10, 3) == pytest.approx(expected, rel=1e-15)
    assert SelfLoopPolicy.parse(policy.to_text()) == policy


@pytest.mark.parametrize("text", ["bogus", "value=abc", "alpha=-1"])
def test_policy_parse_errors(text):
    with pytest.raises(ConfigurationError):
        SelfLoopPolicy.parse(text)
