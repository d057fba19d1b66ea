"""Randomized differential verification of the transformation calculus.

Each case draws a random graph and a random valid transformation, applies
it with full deep checking (closed forms against recomputation and pair
enumeration), then exercises the algebraic side properties on the same
graph: the violational-over-hidden dominance gap, the conversion delta
sign, and the zero delta of violational moves between regions with equal
hidden counts. Any disagreement raises OracleMismatchError carrying a
minimal reproduction (seed, case index, operands).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import EncapsulatedGraph, RegionSpec
from .transform import (
    FUNDAMENTAL_KINDS,
    OracleMismatchError,
    Transformation,
    add_hidden,
    add_violational,
    apply_checked,
    convert,
    predict_delta,
    translate_hidden,
    translate_violational,
)


@dataclass
class VerificationResult:
    cases: int
    seed: int
    passed: dict[str, int] = field(default_factory=dict)


def _random_graph(rng: random.Random, max_regions: int, max_count: int) -> EncapsulatedGraph:
    return EncapsulatedGraph(
        tuple(
            RegionSpec(rng.randint(0, max_count), rng.randint(0, max_count))
            for _ in range(rng.randint(1, max_regions))
        )
    )


def _random_transformation(
    rng: random.Random, graph: EncapsulatedGraph, max_count: int
) -> Transformation:
    count = len(graph.regions)
    kinds = ["add-violational", "add-hidden", "convert"]
    if count >= 2:
        kinds += ["translate-violational", "translate-hidden"]
    kind = rng.choice(kinds)
    if kind == "add-violational":
        x = rng.randrange(count)
        return add_violational(x, rng.randint(-graph.regions[x].violational, max_count))
    if kind == "add-hidden":
        x = rng.randrange(count)
        return add_hidden(x, rng.randint(-graph.regions[x].hidden, max_count))
    if kind == "convert":
        x = rng.randrange(count)
        spec = graph.regions[x]
        return convert(x, rng.randint(-spec.violational, spec.hidden))
    source, target = rng.sample(range(count), 2)
    if kind == "translate-violational":
        return translate_violational(
            source, target, rng.randint(0, graph.regions[source].violational)
        )
    return translate_hidden(source, target, rng.randint(0, graph.regions[source].hidden))


def _check_dominance(rng: random.Random, graph: EncapsulatedGraph, max_count: int) -> None:
    # Adding a violational node can never raise the MPE by less than
    # adding a hidden one; the gap is exactly m(n - |K_x|).
    x = rng.randrange(len(graph.regions))
    m = rng.randint(1, max(1, max_count))
    gap = (
        predict_delta(graph, add_violational(x, m)).total
        - predict_delta(graph, add_hidden(x, m)).total
    )
    expected = m * (graph.node_count - graph.regions[x].size)
    if gap != expected:
        raise OracleMismatchError(f"dominance gap {gap}, expected {expected}")
    if gap < 0:
        raise OracleMismatchError(f"dominance gap {gap} is negative")
    if (gap == 0) != (graph.node_count == graph.regions[x].size):
        raise OracleMismatchError(
            "dominance gap is zero exactly when all nodes lie in the affected region"
        )


def _check_conversion_sign(rng: random.Random, graph: EncapsulatedGraph) -> None:
    # Conversion delta is m(n - |K_x|): positive m raises the MPE whenever
    # nodes exist outside the region, and negating m negates the delta.
    x = rng.randrange(len(graph.regions))
    spec = graph.regions[x]
    outside = graph.node_count - spec.size
    for m in (spec.hidden, -spec.violational):
        delta = predict_delta(graph, convert(x, m)).total
        if delta != m * outside:
            raise OracleMismatchError(
                f"conversion delta {delta} for m={m}, expected {m * outside}"
            )
        if m > 0 and outside > 0 and delta <= 0:
            raise OracleMismatchError(f"conversion delta {delta} not positive for m={m}")
        if m < 0 and outside > 0 and delta >= 0:
            raise OracleMismatchError(f"conversion delta {delta} not negative for m={m}")
        if (m == 0 or outside == 0) and delta != 0:
            raise OracleMismatchError(f"conversion delta {delta} not zero for m={m}")
    k = min(spec.hidden, spec.violational)
    if predict_delta(graph, convert(x, k)).total != -predict_delta(graph, convert(x, -k)).total:
        raise OracleMismatchError("negating the conversion magnitude must negate the delta")


def _check_zero_delta_translation(rng: random.Random, graph: EncapsulatedGraph) -> None:
    # Moving violational nodes between regions with equal hidden counts
    # cannot change the MPE, whatever the magnitude.
    source, target = rng.sample(range(len(graph.regions)), 2)
    src = graph.regions[source]
    regions = list(graph.regions)
    regions[target] = RegionSpec(src.hidden, regions[target].violational)
    equalized = EncapsulatedGraph(tuple(regions))
    m = rng.randint(0, src.violational)
    delta = predict_delta(equalized, translate_violational(source, target, m)).total
    if delta != 0:
        raise OracleMismatchError(
            f"violational move between equal-hidden regions gave delta {delta}"
        )


def run_verification(
    cases: int = 1000,
    max_regions: int = 10,
    max_count: int = 8,
    seed: int = 0,
) -> VerificationResult:
    """Run `cases` randomized differential checks; raise on the first failure."""
    if cases < 1:
        raise ValueError("cases must be >= 1")
    if max_regions < 1:
        raise ValueError("max-regions must be >= 1")
    if max_count < 0:
        raise ValueError("max-count must be >= 0")
    rng = random.Random(seed)
    result = VerificationResult(cases=cases, seed=seed)
    tally = result.passed

    def bump(name: str) -> None:
        tally[name] = tally.get(name, 0) + 1

    for case in range(cases):
        graph = _random_graph(rng, max_regions, max_count)
        transformation = _random_transformation(rng, graph, max_count)
        try:
            apply_checked(graph, transformation, deep=True)
            bump("checked-application")
            if transformation.kind in FUNDAMENTAL_KINDS:
                # The split was compared component-wise inside apply_checked.
                bump("split-additivity")
            _check_dominance(rng, graph, max_count)
            bump("dominance")
            _check_conversion_sign(rng, graph)
            bump("conversion-sign")
            if len(graph.regions) >= 2:
                _check_zero_delta_translation(rng, graph)
                bump("zero-delta-translation")
        except OracleMismatchError as exc:
            counts = [(spec.hidden, spec.violational) for spec in graph.regions]
            raise OracleMismatchError(
                f"case={case} seed={seed} graph={counts} "
                f"transformation={transformation.describe()}: {exc}"
            ) from exc
    return result
