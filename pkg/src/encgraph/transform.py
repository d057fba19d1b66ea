"""The five graph transformations and their closed-form MPE deltas.

Two transformations are fundamental: adding m violational nodes to a
region and adding m hidden nodes to a region (negative m removes nodes).
Three more are derived from them: moving m violational nodes between two
regions, moving m hidden nodes between two regions, and converting m
hidden nodes of a region into violational ones (negative m converts the
other way).

Each kind has a closed-form delta that predicts the MPE change without
recomputing the graph's MPE, with x the affected region, s/t the source
and target of a move, n the node total and h(..) violational counts:

    add-violational        m(n + |K_x| + h(G) - h(K_x) + m - 1)
    add-hidden             m(h(G) - h(K_x) + 2|K_x| + m - 1)
    translate-violational  m(|K_t| - h(K_t) - (|K_s| - h(K_s)))
    translate-hidden       m(2|K_t| - 2|K_s| + h(K_s) - h(K_t) + 2m)
    convert                m(n - |K_x|)

`apply_checked` asserts the predictions against a full recomputation (and
optionally against pair enumeration), so a disagreement anywhere surfaces
as an `OracleMismatchError` rather than silent corruption.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .graph import (
    EncapsulatedGraph,
    RegionSpec,
    brute_force_mpe,
    mpe,
)


class TransformKind(Enum):
    ADD_VIOLATIONAL = "add-violational"
    ADD_HIDDEN = "add-hidden"
    TRANSLATE_VIOLATIONAL = "translate-violational"
    TRANSLATE_HIDDEN = "translate-hidden"
    CONVERT = "convert"


FUNDAMENTAL_KINDS = frozenset(
    {TransformKind.ADD_VIOLATIONAL, TransformKind.ADD_HIDDEN}
)
_SINGLE_REGION_KINDS = frozenset(
    {TransformKind.ADD_VIOLATIONAL, TransformKind.ADD_HIDDEN, TransformKind.CONVERT}
)


class ValidationError(ValueError):
    """The transformation cannot legally be applied to the given graph."""


class OracleMismatchError(RuntimeError):
    """A predicted delta disagrees with recomputation: an implementation bug."""


@dataclass(frozen=True)
class Transformation:
    """One edit of an encapsulated graph.

    Add kinds and convert name one region (`region`); translations name a
    `source` and a `target`. Translations carry magnitude >= 0: moving in
    the other direction is expressed by swapping source and target.
    """

    kind: TransformKind
    magnitude: int
    region: int | None = None
    source: int | None = None
    target: int | None = None

    def __post_init__(self) -> None:
        if self.kind in _SINGLE_REGION_KINDS:
            if self.region is None or self.source is not None or self.target is not None:
                raise ValueError(f"{self.kind.value} takes a single region index")
        else:
            if self.source is None or self.target is None or self.region is not None:
                raise ValueError(f"{self.kind.value} takes source and target region indices")
            if self.source == self.target:
                raise ValueError("translation source and target must differ")
            if self.magnitude < 0:
                raise ValueError(
                    "translation magnitude must be >= 0; swap source and target instead"
                )

    def describe(self) -> str:
        if self.kind in _SINGLE_REGION_KINDS:
            return f"{self.kind.value}(region={self.region}, m={self.magnitude})"
        return (
            f"{self.kind.value}(source={self.source}, target={self.target}, "
            f"m={self.magnitude})"
        )


def add_violational(region: int, magnitude: int) -> Transformation:
    return Transformation(TransformKind.ADD_VIOLATIONAL, magnitude, region=region)


def add_hidden(region: int, magnitude: int) -> Transformation:
    return Transformation(TransformKind.ADD_HIDDEN, magnitude, region=region)


def translate_violational(source: int, target: int, magnitude: int) -> Transformation:
    return Transformation(
        TransformKind.TRANSLATE_VIOLATIONAL, magnitude, source=source, target=target
    )


def translate_hidden(source: int, target: int, magnitude: int) -> Transformation:
    return Transformation(
        TransformKind.TRANSLATE_HIDDEN, magnitude, source=source, target=target
    )


def convert(region: int, magnitude: int) -> Transformation:
    return Transformation(TransformKind.CONVERT, magnitude, region=region)


@dataclass(frozen=True)
class DeltaReport:
    """Predicted MPE change; fundamental kinds carry the in/ex split."""

    total: int
    internal: int | None = None
    external: int | None = None

    def __post_init__(self) -> None:
        if (self.internal is None) != (self.external is None):
            raise ValueError("internal/external split must be present or absent together")
        if self.internal is not None and self.internal + self.external != self.total:
            raise ValueError("delta split does not sum to the total")


def validate(graph: EncapsulatedGraph, transformation: Transformation) -> None:
    """Raise ValidationError unless every count stays non-negative.

    Removal is bounded by the count of the specific node kind removed, not
    by the region size: counts of each kind are tracked separately and no
    region may hold a negative number of either.
    """
    t = transformation
    count = len(graph.regions)
    for name, index in (("region", t.region), ("source", t.source), ("target", t.target)):
        if index is not None and not 0 <= index < count:
            raise ValidationError(
                f"{name} index {index} out of range for {count} regions"
            )
    m = t.magnitude
    if t.kind is TransformKind.ADD_VIOLATIONAL:
        have = graph.regions[t.region].violational
        if have + m < 0:
            raise ValidationError(
                f"region {t.region}: removing {-m} violational nodes exceeds "
                f"the {have} present (short by {-m - have})"
            )
    elif t.kind is TransformKind.ADD_HIDDEN:
        have = graph.regions[t.region].hidden
        if have + m < 0:
            raise ValidationError(
                f"region {t.region}: removing {-m} hidden nodes exceeds "
                f"the {have} present (short by {-m - have})"
            )
    elif t.kind is TransformKind.TRANSLATE_VIOLATIONAL:
        have = graph.regions[t.source].violational
        if m > have:
            raise ValidationError(
                f"region {t.source}: moving {m} violational nodes exceeds "
                f"the {have} present (short by {m - have})"
            )
    elif t.kind is TransformKind.TRANSLATE_HIDDEN:
        have = graph.regions[t.source].hidden
        if m > have:
            raise ValidationError(
                f"region {t.source}: moving {m} hidden nodes exceeds "
                f"the {have} present (short by {m - have})"
            )
    else:
        spec = graph.regions[t.region]
        if m > spec.hidden:
            raise ValidationError(
                f"region {t.region}: converting {m} hidden nodes exceeds "
                f"the {spec.hidden} present (short by {m - spec.hidden})"
            )
        if -m > spec.violational:
            raise ValidationError(
                f"region {t.region}: converting {-m} violational nodes exceeds "
                f"the {spec.violational} present (short by {-m - spec.violational})"
            )


def predict_delta(graph: EncapsulatedGraph, transformation: Transformation) -> DeltaReport:
    """Closed-form MPE delta of a valid transformation; the graph is untouched."""
    validate(graph, transformation)
    t = transformation
    m = t.magnitude
    if t.kind in FUNDAMENTAL_KINDS:
        spec = graph.regions[t.region]
        size = spec.size
        internal = 2 * m * size + m * m - m
        if t.kind is TransformKind.ADD_VIOLATIONAL:
            external = (
                m * graph.node_count
                - m * size
                + m * graph.violational_count
                - m * spec.violational
            )
        else:
            external = m * graph.violational_count - m * spec.violational
        return DeltaReport(internal + external, internal, external)
    if t.kind is TransformKind.TRANSLATE_VIOLATIONAL:
        src = graph.regions[t.source]
        dst = graph.regions[t.target]
        total = m * (dst.size - dst.violational - (src.size - src.violational))
    elif t.kind is TransformKind.TRANSLATE_HIDDEN:
        src = graph.regions[t.source]
        dst = graph.regions[t.target]
        total = m * (2 * dst.size - 2 * src.size + src.violational - dst.violational + 2 * m)
    else:
        spec = graph.regions[t.region]
        total = m * (graph.node_count - spec.size)
    return DeltaReport(total)


def apply(graph: EncapsulatedGraph, transformation: Transformation) -> EncapsulatedGraph:
    """Return the transformed graph as a new value; the input is untouched."""
    validate(graph, transformation)
    t = transformation
    m = t.magnitude
    regions = list(graph.regions)
    if t.kind is TransformKind.ADD_VIOLATIONAL:
        spec = regions[t.region]
        regions[t.region] = RegionSpec(spec.hidden, spec.violational + m)
    elif t.kind is TransformKind.ADD_HIDDEN:
        spec = regions[t.region]
        regions[t.region] = RegionSpec(spec.hidden + m, spec.violational)
    elif t.kind is TransformKind.TRANSLATE_VIOLATIONAL:
        src = regions[t.source]
        dst = regions[t.target]
        regions[t.source] = RegionSpec(src.hidden, src.violational - m)
        regions[t.target] = RegionSpec(dst.hidden, dst.violational + m)
    elif t.kind is TransformKind.TRANSLATE_HIDDEN:
        src = regions[t.source]
        dst = regions[t.target]
        regions[t.source] = RegionSpec(src.hidden - m, src.violational)
        regions[t.target] = RegionSpec(dst.hidden + m, dst.violational)
    else:
        spec = regions[t.region]
        regions[t.region] = RegionSpec(spec.hidden - m, spec.violational + m)
    return EncapsulatedGraph(tuple(regions))


def _decompose(transformation: Transformation) -> tuple[Transformation, Transformation]:
    """The two fundamental steps a derived transformation is built from."""
    t = transformation
    m = t.magnitude
    if t.kind is TransformKind.TRANSLATE_VIOLATIONAL:
        return add_violational(t.source, -m), add_violational(t.target, m)
    if t.kind is TransformKind.TRANSLATE_HIDDEN:
        return add_hidden(t.source, -m), add_hidden(t.target, m)
    if t.kind is TransformKind.CONVERT:
        return add_hidden(t.region, -m), add_violational(t.region, m)
    raise ValueError(f"{t.kind.value} is fundamental and does not decompose")


def apply_checked(
    graph: EncapsulatedGraph,
    transformation: Transformation,
    *,
    deep: bool = True,
) -> tuple[EncapsulatedGraph, DeltaReport]:
    """Apply and return (new graph, delta report), verifying the closed form.

    Always asserts that the predicted total equals the recomputed MPE
    difference, that the internal/external split of a fundamental kind
    matches component-wise, and that a derived kind equals its two-step
    composition. With deep=True both endpoint MPEs are additionally
    re-counted by pair enumeration, so both graphs must then be within the
    enumeration limit.

    Any disagreement raises OracleMismatchError: that is a bug in this
    library, never a caller error.
    """
    report = predict_delta(graph, transformation)
    after_graph = apply(graph, transformation)
    before = mpe(graph)
    after = mpe(after_graph)

    def fail(what: str, predicted: int, recomputed: int) -> None:
        raise OracleMismatchError(
            f"{transformation.describe()}: {what} predicted {predicted}, "
            f"recomputed {recomputed}"
        )

    if after.total - before.total != report.total:
        fail("delta", report.total, after.total - before.total)
    if report.internal is not None:
        if after.internal - before.internal != report.internal:
            fail("internal delta", report.internal, after.internal - before.internal)
        if after.external - before.external != report.external:
            fail("external delta", report.external, after.external - before.external)
    if transformation.kind not in FUNDAMENTAL_KINDS:
        first, second = _decompose(transformation)
        staged = apply(graph, first)
        composed = predict_delta(graph, first).total + predict_delta(staged, second).total
        if composed != report.total:
            fail("composed delta", report.total, composed)
        if apply(staged, second) != after_graph:
            raise OracleMismatchError(
                f"{transformation.describe()}: two-step composition does not "
                f"reproduce the applied graph"
            )
    if deep:
        counted = brute_force_mpe(graph)
        if counted != before.total:
            fail("enumerated MPE before", before.total, counted)
        counted = brute_force_mpe(after_graph)
        if counted != after.total:
            fail("enumerated MPE after", after.total, counted)
    return after_graph, report


def apply_sequence(
    graph: EncapsulatedGraph, transformations: Iterable[Transformation]
) -> tuple[EncapsulatedGraph, int]:
    """Fold `apply` over a sequence, returning the final graph and the
    cumulative delta (the sum of the per-step predictions).

    The first invalid step aborts the whole sequence, reporting its index;
    no partial result is returned.
    """
    current = graph
    cumulative = 0
    for index, transformation in enumerate(transformations):
        try:
            report = predict_delta(current, transformation)
            current = apply(current, transformation)
        except ValidationError as exc:
            raise ValidationError(f"step {index}: {exc}") from exc
        cumulative += report.total
    return current, cumulative
