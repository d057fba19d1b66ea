"""Seeded random graphs and the node pile-up experiment protocols.

A pile experiment repeatedly moves one node of a chosen kind into a fixed
target region and records, after every move, the distribution standard
deviation of that kind, the graph's MPE and its configuration efficiency.
Hidden piles run until all hidden nodes outside the target are gone;
violational piles leave one violational node behind in every donor region
so no region becomes uncontactable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from enum import Enum

from .graph import (
    EncapsulatedGraph,
    RegionSpec,
    configuration_efficiency,
    hidden_stddev,
    mpe,
    violational_stddev,
)
from .transform import apply_checked, translate_hidden, translate_violational


class PileMode(Enum):
    HIDDEN = "hidden-pile"
    VIOLATIONAL = "violational-pile"


class SourcePolicy(Enum):
    # drain: exhaust the lowest-index donor first; round-robin: cycle
    # donor indices, skipping the target and empty sources.
    DRAIN = "drain"
    ROUND_ROBIN = "round-robin"


@dataclass(frozen=True)
class ExperimentConfig:
    """Generation bounds plus the pile protocol parameters.

    Counts are drawn uniformly from the inclusive [min, max] bounds, fully
    determined by `seed`. A `target` of None means the target region index
    is also drawn from the seeded stream.
    """

    regions: int
    hidden_min: int
    hidden_max: int
    violational_min: int
    violational_max: int
    mode: PileMode = PileMode.HIDDEN
    policy: SourcePolicy = SourcePolicy.DRAIN
    target: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.regions < 0:
            raise ValueError("regions must be >= 0")
        if not 0 <= self.hidden_min <= self.hidden_max:
            raise ValueError("hidden bounds must satisfy 0 <= min <= max")
        if not 0 <= self.violational_min <= self.violational_max:
            raise ValueError("violational bounds must satisfy 0 <= min <= max")
        if self.target is not None and not 0 <= self.target < self.regions:
            raise ValueError(f"target index {self.target} out of range for {self.regions} regions")


@dataclass(frozen=True)
class SeriesPoint:
    step: int
    stddev: float
    mpe: int
    ce: float


@dataclass(frozen=True)
class ExperimentSeries:
    """Per-step records of one pile run, step 0 being the initial state."""

    points: tuple[SeriesPoint, ...]
    target: int | None = None
    config: ExperimentConfig | None = None
    final_graph: EncapsulatedGraph | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        for expected, point in enumerate(self.points):
            if point.step != expected:
                raise ValueError("series steps must count 0, 1, 2, ...")


# Canned experiment families, overridable per field via preset_config().
PRESETS: dict[str, dict] = {
    "fig1": dict(mode=PileMode.HIDDEN, regions=100,
                 hidden_min=0, hidden_max=30, violational_min=1, violational_max=1),
    "fig3": dict(mode=PileMode.VIOLATIONAL, regions=100,
                 hidden_min=1, hidden_max=1, violational_min=0, violational_max=30),
    "fig4": dict(mode=PileMode.HIDDEN, regions=100,
                 hidden_min=0, hidden_max=30, violational_min=1, violational_max=30),
    "fig6": dict(mode=PileMode.VIOLATIONAL, regions=100,
                 hidden_min=0, hidden_max=30, violational_min=1, violational_max=30),
}


def preset_config(name: str, seed: int = 0, **overrides) -> ExperimentConfig:
    """A ready-made experiment family; keyword overrides replace any field."""
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    params = {**PRESETS[name], "seed": seed, **overrides}
    return ExperimentConfig(**params)


def _draw_graph(rng: random.Random, config: ExperimentConfig) -> EncapsulatedGraph:
    return EncapsulatedGraph(
        tuple(
            RegionSpec(
                rng.randint(config.hidden_min, config.hidden_max),
                rng.randint(config.violational_min, config.violational_max),
            )
            for _ in range(config.regions)
        )
    )


def generate_random_graph(config: ExperimentConfig) -> EncapsulatedGraph:
    """The seed-determined random graph for a config (same seed, same graph)."""
    return _draw_graph(random.Random(config.seed), config)


def run_experiment(config: ExperimentConfig) -> ExperimentSeries:
    """Generate the seeded graph, resolve the target, run the configured pile."""
    if config.regions < 2:
        raise ValueError("pile experiments need at least 2 regions")
    rng = random.Random(config.seed)
    graph = _draw_graph(rng, config)
    # The target draw happens after all count draws, so generate_random_graph
    # with the same seed reproduces this graph exactly.
    target = config.target if config.target is not None else rng.randrange(config.regions)
    if config.mode is PileMode.HIDDEN:
        return run_hidden_pile(graph, target, policy=config.policy, config=config)
    return run_violational_pile(graph, target, policy=config.policy, config=config)


def run_hidden_pile(
    graph: EncapsulatedGraph,
    target: int,
    policy: SourcePolicy = SourcePolicy.DRAIN,
    config: ExperimentConfig | None = None,
) -> ExperimentSeries:
    """Move hidden nodes into `target` one at a time until none remain outside."""
    return _run_pile(graph, target, policy, PileMode.HIDDEN, config)


def run_violational_pile(
    graph: EncapsulatedGraph,
    target: int,
    policy: SourcePolicy = SourcePolicy.DRAIN,
    config: ExperimentConfig | None = None,
) -> ExperimentSeries:
    """Move violational nodes into `target` one at a time, leaving one per donor."""
    return _run_pile(graph, target, policy, PileMode.VIOLATIONAL, config)


def _run_pile(
    graph: EncapsulatedGraph,
    target: int,
    policy: SourcePolicy,
    mode: PileMode,
    config: ExperimentConfig | None,
) -> ExperimentSeries:
    region_count = len(graph.regions)
    if region_count < 2:
        raise ValueError("pile experiments need at least 2 regions")
    if not 0 <= target < region_count:
        raise ValueError(f"target index {target} out of range for {region_count} regions")

    if mode is PileMode.HIDDEN:
        move = translate_hidden
        spread = hidden_stddev
        count_of = lambda region: region.hidden
        floor = 0
    else:
        move = translate_violational
        spread = violational_stddev
        count_of = lambda region: region.violational
        floor = 1  # every region keeps one violational node so it stays contactable

    def eligible(g: EncapsulatedGraph, index: int) -> bool:
        return index != target and count_of(g.regions[index]) > floor

    current = graph
    total = mpe(current).total
    points = [SeriesPoint(0, spread(current).stddev, total, configuration_efficiency(current))]
    cursor = 0
    step = 0
    while True:
        if policy is SourcePolicy.DRAIN:
            source = next(
                (index for index in range(region_count) if eligible(current, index)),
                None,
            )
        else:
            source = None
            for offset in range(region_count):
                candidate = (cursor + offset) % region_count
                if eligible(current, candidate):
                    source = candidate
                    cursor = candidate + 1
                    break
        if source is None:
            break
        # Per-node bookkeeping: one move per step, prediction checked
        # against recomputation on every step (pair enumeration is skipped,
        # deep checking being reserved for small graphs).
        current, report = apply_checked(current, move(source, target, 1), deep=False)
        total += report.total
        step += 1
        points.append(
            SeriesPoint(step, spread(current).stddev, total, configuration_efficiency(current))
        )
    return ExperimentSeries(
        tuple(points), target=target, config=config, final_graph=current
    )


def run_batch(config: ExperimentConfig, runs: int) -> list[ExperimentSeries]:
    """One series per run; run k uses seed `config.seed + k`."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    return [run_experiment(replace(config, seed=config.seed + index)) for index in range(runs)]
