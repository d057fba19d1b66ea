"""Value types and metric functions for encapsulated graphs.

An encapsulated graph partitions its nodes into ordered regions. Each node
is either *hidden* (usable only from inside its own region) or
*violational* (usable from anywhere). Under absolute information hiding a
potential edge is an ordered node pair (u, v), u != v, where v shares u's
region or v is violational; the count of such pairs is the graph's maximum
potential number of edges (MPE).

Only per-region counts matter for the MPE, so regions store two integers
and every metric here is a pure function of those counts. All MPE
arithmetic is exact integer arithmetic; floats appear only in the derived
statistics (standard deviation, configuration efficiency).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

# Totals are capped so n(n-1) stays within 64-bit signed range for any
# consumer of the file formats; larger inputs are rejected outright.
MAX_NODES = 2**31 - 1

# Soft cap for the O(n^2) pair-enumeration oracle.
BRUTE_FORCE_LIMIT = 5000


class CapacityError(ValueError):
    """Graph exceeds the documented node capacity."""


@dataclass(frozen=True)
class MpeBreakdown:
    """MPE split into its internal (same-region) and external parts."""

    internal: int
    external: int

    @property
    def total(self) -> int:
        return self.internal + self.external


@dataclass(frozen=True)
class DistributionStats:
    """A per-region count distribution with its population statistics."""

    values: tuple[int, ...]
    mean: float
    stddev: float


@dataclass(frozen=True)
class RegionSpec:
    """Node counts of one encapsulated region."""

    hidden: int
    violational: int

    def __post_init__(self) -> None:
        if self.hidden < 0 or self.violational < 0:
            raise ValueError(
                f"region counts must be non-negative, got "
                f"({self.hidden}, {self.violational})"
            )

    @property
    def size(self) -> int:
        return self.hidden + self.violational


@dataclass(frozen=True)
class EncapsulatedGraph:
    """Immutable ordered sequence of regions, indexed from 0."""

    regions: tuple[RegionSpec, ...]

    def __post_init__(self) -> None:
        regions = tuple(self.regions)
        object.__setattr__(self, "regions", regions)
        total = 0
        for region in regions:
            total += region.hidden + region.violational
        if total > MAX_NODES:
            raise CapacityError(f"graph has {total} nodes; capacity is {MAX_NODES}")
        # The capacity check needed the sum anyway; prime the cache with it.
        self.__dict__["node_count"] = total

    @classmethod
    def from_counts(cls, counts: Iterable[tuple[int, int]]) -> "EncapsulatedGraph":
        """Build a graph from (hidden, violational) count pairs."""
        return cls(tuple(RegionSpec(hidden, violational) for hidden, violational in counts))

    @property
    def region_count(self) -> int:
        return len(self.regions)

    @cached_property
    def node_count(self) -> int:
        return sum(region.hidden + region.violational for region in self.regions)

    @cached_property
    def violational_count(self) -> int:
        return sum(region.violational for region in self.regions)

    @cached_property
    def _mpe(self) -> MpeBreakdown:
        h = self.violational_count
        internal = 0
        external = 0
        for region in self.regions:
            size = region.hidden + region.violational
            internal += size * (size - 1)
            external += size * (h - region.violational)
        return MpeBreakdown(internal, external)


def internal_mpe(region: RegionSpec) -> int:
    """Ordered pairs available inside one region: |K|(|K| - 1)."""
    return region.size * (region.size - 1)


def external_mpe(graph: EncapsulatedGraph, index: int) -> int:
    """Ordered pairs from one region into outside violational nodes.

    Equals |K|(h(G) - h(K)) for the region at `index`.
    """
    if not 0 <= index < len(graph.regions):
        raise IndexError(
            f"region index {index} out of range for {len(graph.regions)} regions"
        )
    region = graph.regions[index]
    return region.size * (graph.violational_count - region.violational)


def mpe(graph: EncapsulatedGraph) -> MpeBreakdown:
    """Exact MPE of the whole graph with its internal/external split."""
    return graph._mpe


def brute_force_mpe(graph: EncapsulatedGraph, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Count permitted ordered pairs by direct enumeration.

    Independent of the closed forms above: materializes every node and
    tests each ordered pair (u, v) for u != v and (v in u's region, or v
    violational). Quadratic, so graphs beyond `limit` nodes are rejected.
    """
    n = graph.node_count
    if n > limit:
        raise ValueError(f"graph has {n} nodes; enumeration limit is {limit}")
    region_of: list[int] = []
    is_violational: list[bool] = []
    for index, region in enumerate(graph.regions):
        region_of.extend([index] * region.size)
        is_violational.extend([False] * region.hidden + [True] * region.violational)
    count = 0
    for u in range(n):
        home = region_of[u]
        for v in range(n):
            if v != u and (region_of[v] == home or is_violational[v]):
                count += 1
    return count


def _distribution_stats(values: list[int]) -> DistributionStats:
    r = len(values)
    if r == 0:
        raise ValueError("an empty graph has no count distribution")
    total = sum(values)
    total_sq = sum(value * value for value in values)
    # Population form: sqrt((1/r) * sum((x - mean)^2)). The discriminant
    # r*total_sq - total^2 is an exact non-negative integer, so the result
    # is exactly 0 whenever all values are equal.
    stddev = math.sqrt(r * total_sq - total * total) / r
    return DistributionStats(tuple(values), total / r, stddev)


def hidden_stddev(graph: EncapsulatedGraph) -> DistributionStats:
    """Population standard deviation of the per-region hidden counts."""
    return _distribution_stats([region.hidden for region in graph.regions])


def violational_stddev(graph: EncapsulatedGraph) -> DistributionStats:
    """Population standard deviation of the per-region violational counts."""
    return _distribution_stats([region.violational for region in graph.regions])


def configuration_efficiency(graph: EncapsulatedGraph) -> float:
    """How much of the unencapsulated coupling potential the graph avoids.

    Defined as 1 - s(G)/(n(n-1)) for n >= 2: it is 1.0 when no potential
    edge is permitted, 0.0 when every ordered pair is permitted (e.g. a
    single-region graph), and falls strictly as the MPE rises at fixed n.
    Graphs with n <= 1 have no pair to permit and score 1.0.
    """
    n = graph.node_count
    if n <= 1:
        return 1.0
    return 1.0 - mpe(graph).total / (n * (n - 1))
