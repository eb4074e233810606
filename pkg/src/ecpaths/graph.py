"""Edge-colored graph model and the shared instance/solution types.

An edge-colored graph is an undirected simple graph whose edges each carry a
nonempty set of color identifiers.  A *uni-color* st-path is a simple path
between the two terminals all of whose edges share one certifying color.
Solvers return sets of such paths that are pairwise internally disjoint
(mode ``cdp``) and, in mode ``cddp``, additionally certified by pairwise
distinct colors.

On-disk ECG format, one record per line, ``#`` starts a comment:

    n <vertex_count>
    colors <id> <id> ...
    s <vertex>
    t <vertex>
    l <bound>                 # optional length bound (edges per path)
    e <u> <v> <color>[,<color>...]

Vertices are 0-based integers.  Canonical serialization lists colors in
declaration order and edges sorted by endpoint pair; ``parse_instance``
round-trips with ``serialize_instance`` on that canonical form.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import GraphError, ParseError

Edge = tuple[int, int]
ValidationReport = list[str]


class Mode(str, enum.Enum):
    CDP = "cdp"
    CDDP = "cddp"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class EdgeColoredGraph:
    """Undirected simple graph with a nonempty color set on every edge."""

    vertex_count: int
    colors: tuple[str, ...]
    edges: dict[Edge, frozenset[str]]
    _adj: list[dict[int, frozenset[str]]] | None = field(
        default=None, init=False, repr=False, compare=False
    )

    @classmethod
    def make(
        cls,
        vertex_count: int,
        colors: Sequence[str],
        edges: Iterable[tuple[int, int, Iterable[str]]],
    ) -> "EdgeColoredGraph":
        """Build a graph, normalizing edge pairs and validating identifiers."""
        color_tuple = tuple(colors)
        if len(set(color_tuple)) != len(color_tuple):
            raise GraphError("duplicate color identifier in color list")
        known = set(color_tuple)
        edge_map: dict[Edge, frozenset[str]] = {}
        for u, v, cs in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u},{v}) has an endpoint outside [0,{vertex_count})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = _norm_edge(u, v)
            if key in edge_map:
                raise GraphError(f"duplicate edge record for {key}")
            cset = frozenset(cs)
            if not cset:
                raise GraphError(f"edge {key} has an empty color set")
            unknown = cset - known
            if unknown:
                raise GraphError(f"edge {key} references unknown color {sorted(unknown)[0]!r}")
            edge_map[key] = cset
        return cls(vertex_count, color_tuple, edge_map)

    # -- cheap accessors -------------------------------------------------

    @property
    def q(self) -> int:
        return len(self.colors)

    def color_rank(self, color: str) -> int:
        return self.colors.index(color)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def edge_colors(self, u: int, v: int) -> frozenset[str]:
        return self.edges.get(_norm_edge(u, v), frozenset())

    def adjacency(self) -> list[dict[int, frozenset[str]]]:
        """Adjacency view ``adj[u][v] -> colors``, built once per graph."""
        if self._adj is None:
            adj: list[dict[int, frozenset[str]]] = [dict() for _ in range(self.vertex_count)]
            for (u, v), cs in self.edges.items():
                adj[u][v] = cs
                adj[v][u] = cs
            object.__setattr__(self, "_adj", adj)
        assert self._adj is not None
        return self._adj

    def neighbors(self, u: int) -> list[int]:
        return sorted(self.adjacency()[u])

    def degree(self, u: int) -> int:
        return len(self.adjacency()[u])

    def color_subgraph_adjacency(self, color: str) -> list[list[int]]:
        """Sorted adjacency lists of the subgraph of edges carrying ``color``."""
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for (u, v), cs in self.edges.items():
            if color in cs:
                adj[u].append(v)
                adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj


@dataclass(frozen=True)
class ProblemInstance:
    """A graph with terminals, an optional length bound and a problem mode."""

    graph: EdgeColoredGraph
    source: int
    target: int
    length_bound: int | None = None
    mode: Mode = Mode.CDP

    def with_mode(self, mode: Mode) -> "ProblemInstance":
        return replace(self, mode=mode)

    def with_graph(self, graph: EdgeColoredGraph) -> "ProblemInstance":
        return replace(self, graph=graph)

    def interior(self) -> list[int]:
        return [v for v in range(self.graph.vertex_count) if v not in (self.source, self.target)]


@dataclass(frozen=True)
class UniColorPath:
    """A simple st-path plus the single color certifying it."""

    vertices: tuple[int, ...]
    color: str

    @property
    def internal(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1

    def edge_pairs(self) -> list[Edge]:
        return [_norm_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:])]


@dataclass(frozen=True)
class PathSolution:
    """The object every solver returns and every validator checks."""

    paths: frozenset[UniColorPath]
    mode: Mode

    @property
    def value(self) -> int:
        return len(self.paths)

    def sorted_paths(self) -> list[UniColorPath]:
        return sorted(self.paths, key=lambda p: (p.vertices, p.color))


def solution(paths: Iterable[UniColorPath], mode: Mode) -> PathSolution:
    return PathSolution(frozenset(paths), mode)


# -- validation ----------------------------------------------------------


def validate_instance(inst: ProblemInstance) -> ValidationReport:
    """Return the list of violated invariants; empty means valid."""
    report: ValidationReport = []
    g = inst.graph
    if g.vertex_count < 0:
        report.append("negative vertex count")
    known = set(g.colors)
    if len(known) != len(g.colors):
        report.append("duplicate color identifier")
    for (u, v), cs in sorted(g.edges.items()):
        if not (0 <= u < g.vertex_count and 0 <= v < g.vertex_count):
            report.append(f"edge ({u},{v}) out of vertex range")
        if u == v:
            report.append(f"self-loop at vertex {u}")
        if not cs:
            report.append(f"edge ({u},{v}) has empty color set")
        for c in sorted(cs - known):
            report.append(f"edge ({u},{v}) references unknown color {c!r}")
    for name, vert in (("source", inst.source), ("target", inst.target)):
        if not (0 <= vert < g.vertex_count):
            report.append(f"{name} {vert} out of vertex range")
    if inst.source == inst.target:
        report.append("source equals target")
    if inst.length_bound is not None and inst.length_bound < 1:
        report.append(f"length bound {inst.length_bound} is not positive")
    return report


def validate_solution(inst: ProblemInstance, sol: PathSolution) -> ValidationReport:
    """Check every solution invariant against ``inst``; empty means feasible.

    Disjointness and color distinctness are judged under ``sol.mode`` so a
    candidate can be checked as either problem variant.  Two paths with the
    same vertex sequence (only possible for the direct st-edge) are rejected:
    a solution is a set of paths, and the edge {s,t} is one path no matter
    how many colors it carries.
    """
    report: ValidationReport = []
    g = inst.graph
    paths = sol.sorted_paths()
    for p in paths:
        tag = f"path {p.vertices}/{p.color}"
        if len(p.vertices) < 2:
            report.append(f"{tag}: fewer than two vertices")
            continue
        if p.vertices[0] != inst.source:
            report.append(f"{tag}: does not start at source {inst.source}")
        if p.vertices[-1] != inst.target:
            report.append(f"{tag}: does not end at target {inst.target}")
        if len(set(p.vertices)) != len(p.vertices):
            report.append(f"{tag}: repeats a vertex")
        if p.color not in g.colors:
            report.append(f"{tag}: unknown color {p.color!r}")
        for a, b in zip(p.vertices, p.vertices[1:]):
            cs = g.edge_colors(a, b)
            if not cs:
                report.append(f"{tag}: ({a},{b}) is not an edge")
            elif p.color not in cs:
                report.append(f"{tag}: edge ({a},{b}) does not carry {p.color!r}")
        if inst.length_bound is not None and p.edge_count > inst.length_bound:
            report.append(f"{tag}: {p.edge_count} edges exceeds length bound {inst.length_bound}")
    for i, p in enumerate(paths):
        for q in paths[i + 1 :]:
            shared = set(p.internal) & set(q.internal)
            if shared:
                report.append(
                    f"paths {p.vertices}/{p.color} and {q.vertices}/{q.color}"
                    f" share internal vertex {min(shared)}"
                )
            if p.vertices == q.vertices:
                report.append(f"two paths with identical vertex sequence {p.vertices}")
            if sol.mode is Mode.CDDP and p.color == q.color:
                report.append(f"duplicate color {p.color!r} in color-disjoint solution")
    return report


# -- graph surgery -------------------------------------------------------


def remove_vertices(g: EdgeColoredGraph, removed: Iterable[int]) -> EdgeColoredGraph:
    """Drop all edges incident to ``removed``; vertex indices are preserved."""
    drop = set(removed)
    for v in drop:
        if not (0 <= v < g.vertex_count):
            raise GraphError(f"vertex {v} out of range")
    edges = {e: cs for e, cs in g.edges.items() if e[0] not in drop and e[1] not in drop}
    return EdgeColoredGraph(g.vertex_count, g.colors, edges)


def restrict_colors(g: EdgeColoredGraph, removed_colors: Iterable[str]) -> EdgeColoredGraph:
    """Delete the given colors from every edge; drop edges that become empty."""
    drop = set(removed_colors)
    for c in drop:
        if c not in g.colors:
            raise GraphError(f"unknown color {c!r}")
    colors = tuple(c for c in g.colors if c not in drop)
    edges = {}
    for e, cs in g.edges.items():
        kept = cs - drop
        if kept:
            edges[e] = kept
    return EdgeColoredGraph(g.vertex_count, colors, edges)


# -- ECG text format -----------------------------------------------------


def parse_instance(text: str | bytes, mode: Mode = Mode.CDP) -> ProblemInstance:
    """Parse the ECG format.  ``mode`` is not part of the format; callers
    (the CLI's ``--mode`` flag) choose it."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n: int | None = None
    colors: tuple[str, ...] | None = None
    source: int | None = None
    target: int | None = None
    bound: int | None = None
    raw_edges: list[tuple[int, int, list[str], int]] = []

    def want_int(token: str, lineno: int, what: str) -> int:
        try:
            return int(token)
        except ValueError:
            raise ParseError(f"{what} is not an integer: {token!r}", lineno) from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "n":
            if n is not None:
                raise ParseError("duplicate 'n' record", lineno)
            if len(tokens) != 2:
                raise ParseError("'n' record takes one field", lineno)
            n = want_int(tokens[1], lineno, "vertex count")
            if n < 0:
                raise ParseError("vertex count is negative", lineno)
        elif kind == "colors":
            if colors is not None:
                raise ParseError("duplicate 'colors' record", lineno)
            colors = tuple(tokens[1:])
            if len(set(colors)) != len(colors):
                raise ParseError("duplicate color identifier", lineno)
        elif kind == "s":
            if source is not None:
                raise ParseError("duplicate 's' record", lineno)
            source = want_int(tokens[1], lineno, "source")
        elif kind == "t":
            if target is not None:
                raise ParseError("duplicate 't' record", lineno)
            target = want_int(tokens[1], lineno, "target")
        elif kind == "l":
            if bound is not None:
                raise ParseError("duplicate 'l' record", lineno)
            bound = want_int(tokens[1], lineno, "length bound")
            if bound < 1:
                raise ParseError("length bound must be >= 1", lineno)
        elif kind == "e":
            if len(tokens) != 4:
                raise ParseError("'e' record takes three fields", lineno)
            u = want_int(tokens[1], lineno, "edge endpoint")
            v = want_int(tokens[2], lineno, "edge endpoint")
            cs = [c for c in tokens[3].split(",") if c]
            if not cs:
                raise ParseError("edge has no colors", lineno)
            if u == v:
                raise ParseError("self-loop", lineno)
            raw_edges.append((u, v, cs, lineno))
        else:
            raise ParseError(f"unknown record {kind!r}", lineno)

    if n is None:
        raise ParseError("missing 'n' record")
    if colors is None:
        raise ParseError("missing 'colors' record")
    if source is None:
        raise ParseError("missing 's' record")
    if target is None:
        raise ParseError("missing 't' record")

    known = set(colors)
    seen: set[Edge] = set()
    edges: list[tuple[int, int, list[str]]] = []
    for u, v, cs, lineno in raw_edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge endpoint out of range [0,{n})", lineno)
        key = _norm_edge(u, v)
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
        for c in cs:
            if c not in known:
                raise ParseError(f"unknown color {c!r}", lineno)
        if len(set(cs)) != len(cs):
            raise ParseError("repeated color on edge", lineno)
        edges.append((u, v, cs))
    graph = EdgeColoredGraph.make(n, colors, edges)
    for term, what in ((source, "source"), (target, "target")):
        if not (0 <= term < n):
            raise ParseError(f"{what} {term} out of range")
    if source == target:
        raise ParseError("source equals target")
    return ProblemInstance(graph, source, target, bound, mode)


def serialize_instance(inst: ProblemInstance) -> str:
    """Canonical ECG text: colors in declaration order, edges sorted."""
    g = inst.graph
    rank = {c: i for i, c in enumerate(g.colors)}
    lines = [f"n {g.vertex_count}"]
    lines.append("colors " + " ".join(g.colors) if g.colors else "colors")
    lines.append(f"s {inst.source}")
    lines.append(f"t {inst.target}")
    if inst.length_bound is not None:
        lines.append(f"l {inst.length_bound}")
    for (u, v), cs in sorted(inst.graph.edges.items()):
        ordered = sorted(cs, key=lambda c: rank[c])
        lines.append(f"e {u} {v} " + ",".join(ordered))
    return "\n".join(lines) + "\n"


def instance_digest(inst: ProblemInstance) -> str:
    return hashlib.sha256(serialize_instance(inst).encode("utf-8")).hexdigest()[:16]
