"""Line-oriented text formats: graph files, node manifests, series CSV.

Graph file (`encg 1`): the header line, then one region per line as
`<hidden> <violational>` in ASCII decimal. Blank lines and `#` comments
are skipped on read; region index is order of appearance.

Node manifest (`encn 1`): one node per line as
`<region-name> <node-name> <h|v>`. Region names map to indices in order
of first appearance; node names must be unique within their region.

Series CSV: header `step,stddev,mpe,ce`, one row per recorded point,
reals printed with exactly 6 decimal places. All three formats are UTF-8
with LF line endings and deterministic byte-for-byte output.
"""

from __future__ import annotations

from .experiment import ExperimentSeries
from .graph import EncapsulatedGraph

GRAPH_HEADER = "encg 1"
MANIFEST_HEADER = "encn 1"


class FormatError(ValueError):
    """Malformed input text; the message names the offending line."""


def _body_lines(text: str, header: str, what: str) -> list[tuple[int, str]]:
    lines = [line.rstrip("\r") for line in text.splitlines()]
    if not lines or not lines[0].startswith(header.split()[0] + " "):
        raise FormatError(f"line 1: missing {what} header {header!r}")
    if lines[0] != header:
        raise FormatError(f"line 1: unsupported {what} version {lines[0]!r}, expected {header!r}")
    body = []
    for lineno, raw in enumerate(lines[1:], start=2):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        body.append((lineno, stripped))
    return body


def _parse_count(token: str, lineno: int) -> int:
    # No sign characters: counts are plain non-negative decimals.
    if not (token.isascii() and token.isdigit()):
        raise FormatError(f"line {lineno}: expected a non-negative decimal count, got {token!r}")
    return int(token)


def read_graph(text: str) -> EncapsulatedGraph:
    """Parse a graph file; inverse of write_graph."""
    counts = []
    for lineno, line in _body_lines(text, GRAPH_HEADER, "graph file"):
        tokens = line.split()
        if len(tokens) != 2:
            raise FormatError(
                f"line {lineno}: expected '<hidden> <violational>', got {line!r}"
            )
        counts.append((_parse_count(tokens[0], lineno), _parse_count(tokens[1], lineno)))
    return EncapsulatedGraph.from_counts(counts)


def write_graph(graph: EncapsulatedGraph) -> str:
    """Render a graph file: header plus regions in index order, no comments."""
    lines = [GRAPH_HEADER]
    lines.extend(f"{region.hidden} {region.violational}" for region in graph.regions)
    return "\n".join(lines) + "\n"


def ingest_manifest(text: str) -> EncapsulatedGraph:
    """Turn a per-node manifest into a counts-only graph.

    One region per distinct region name; a region's hidden count is its
    number of `h` nodes and its violational count its number of `v` nodes.
    """
    order: dict[str, int] = {}
    counts: list[list[int]] = []
    seen: set[tuple[str, str]] = set()
    for lineno, line in _body_lines(text, MANIFEST_HEADER, "manifest"):
        tokens = line.split()
        if len(tokens) != 3:
            raise FormatError(
                f"line {lineno}: expected '<region> <node> <h|v>', got {line!r}"
            )
        region_name, node_name, tag = tokens
        if tag not in ("h", "v"):
            raise FormatError(f"line {lineno}: visibility tag must be 'h' or 'v', got {tag!r}")
        key = (region_name, node_name)
        if key in seen:
            raise FormatError(
                f"line {lineno}: duplicate node {node_name!r} in region {region_name!r}"
            )
        seen.add(key)
        if region_name not in order:
            order[region_name] = len(counts)
            counts.append([0, 0])
        counts[order[region_name]][0 if tag == "h" else 1] += 1
    return EncapsulatedGraph.from_counts(tuple((h, v) for h, v in counts))


def write_series_csv(series: ExperimentSeries) -> str:
    """Render a series as CSV with fixed 6-decimal reals."""
    lines = ["step,stddev,mpe,ce"]
    lines.extend(
        f"{point.step},{point.stddev:.6f},{point.mpe},{point.ce:.6f}"
        for point in series.points
    )
    return "\n".join(lines) + "\n"
