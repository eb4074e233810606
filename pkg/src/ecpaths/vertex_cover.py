"""Vertex-cover-parameterized solvers.

For the disjoint variant: take the direct st-edge if present, greedily take
every two-edge uni-color path s,v,t (always safe: at most one solution path
can use v), then bound the residual by a vertex cover that excludes the
terminals but covers their incident edges.  Every residual uni-color st-path
then starts and ends in the cover and alternates with non-cover vertices, so
it has at most 2k edges, and at most k residual paths fit; the bounded-length
decision procedure finishes exactly.

For the color-disjoint variant the greedy stage is not safe (a two-edge path
consumes a color as well as a vertex), which costs at most a factor of two:
the greedy prefix plus an exact solve of the filtered remainder graph is a
1/2-approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain

from .color_coding import max_bounded_paths
from .errors import PreconditionError
from .graph import (
    EdgeColoredGraph,
    Mode,
    PathSolution,
    ProblemInstance,
    UniColorPath,
    remove_vertices,
    restrict_colors,
    solution,
)
from .poly import _bfs_augment


def minimum_vertex_cover(
    vertex_count: int, edges, k_max: int
) -> frozenset[int] | None:
    """Minimum vertex cover of size <= k_max, or None.

    Bounded search tree: branch on both endpoints of the first uncovered
    edge, depth k_max; sizes are tried in increasing order so the first hit
    is minimum, and branching order makes the result deterministic.
    """
    norm = sorted({(min(u, v), max(u, v)) for u, v in edges if u != v})

    def search(remaining: list[tuple[int, int]], budget: int) -> frozenset[int] | None:
        if not remaining:
            return frozenset()
        if budget == 0:
            return None
        u, v = remaining[0]
        for pick in (u, v):
            rest = [e for e in remaining if pick not in e]
            sub = search(rest, budget - 1)
            if sub is not None:
                return sub | {pick}
        return None

    for k in range(0, k_max + 1):
        cover = search(norm, k)
        if cover is not None:
            return cover
    return None


def terminal_respecting_cover(g: EdgeColoredGraph, s: int, t: int) -> frozenset[int]:
    """Vertex cover of all edges of g drawn from V minus {s,t}.

    Neighbors of the terminals are forced in (the terminals themselves may
    not be charged); the rest is an exact minimum cover of what remains.
    Requires that no {s,t} edge is present.
    """
    if g.has_edge(s, t):
        raise PreconditionError("direct st-edge cannot be covered without a terminal")
    forced = {v for v in g.adjacency()[s]} | {v for v in g.adjacency()[t]}
    rest = [
        (u, v)
        for (u, v) in g.edges
        if u not in forced and v not in forced and s not in (u, v) and t not in (u, v)
    ]
    vertices = {v for e in rest for v in e}
    sub = minimum_vertex_cover(g.vertex_count, rest, len(vertices))
    assert sub is not None
    return frozenset(forced | sub)


def greedy_length3(inst: ProblemInstance, mode: Mode) -> PathSolution:
    """Maximal set of two-edge uni-color st-paths, in vertex order then
    declared color order; for the color-disjoint mode each color is used at
    most once (this greedy can halve the optimum, deliberately)."""
    g, s, t = inst.graph, inst.source, inst.target
    rank = {c: i for i, c in enumerate(g.colors)}
    used_colors: set[str] = set()
    paths = []
    for v in inst.interior():
        common = g.edge_colors(s, v) & g.edge_colors(v, t)
        if not common:
            continue
        if mode is Mode.CDP:
            color = min(common, key=lambda c: rank[c])
        else:
            avail = sorted(common - used_colors, key=lambda c: rank[c])
            if not avail:
                continue
            color = avail[0]
            used_colors.add(color)
        paths.append(UniColorPath((s, v, t), color))
    return solution(paths, mode)


@dataclass(frozen=True)
class VcDecomposition:
    """Greedy prefix, what is left, and the cover that bounds it."""

    prefix: PathSolution
    residual: ProblemInstance
    cover: frozenset[int]

    @property
    def k(self) -> int:
        return len(self.cover)


def decompose_cdp(inst: ProblemInstance) -> VcDecomposition:
    g, s, t = inst.graph, inst.source, inst.target
    rank = {c: i for i, c in enumerate(g.colors)}
    prefix: list[UniColorPath] = []
    work = g
    direct = g.edge_colors(s, t)
    if direct:
        prefix.append(UniColorPath((s, t), min(direct, key=lambda c: rank[c])))
        work = EdgeColoredGraph(
            work.vertex_count,
            work.colors,
            {e: cs for e, cs in work.edges.items() if e != (min(s, t), max(s, t))},
        )
    greedy = greedy_length3(inst.with_graph(work), Mode.CDP)
    prefix.extend(greedy.sorted_paths())
    work = remove_vertices(work, {p.vertices[1] for p in greedy.paths})
    cover = terminal_respecting_cover(work, s, t)
    residual = ProblemInstance(work, s, t, None, Mode.CDP)
    return VcDecomposition(solution(prefix, Mode.CDP), residual, cover)


def solve_cdp_vc(inst: ProblemInstance) -> PathSolution:
    """Exact disjoint-paths optimum via the cover-bounded decomposition."""
    if inst.length_bound is not None:
        raise PreconditionError("cover-parameterized solver does not support a length bound")
    dec = decompose_cdp(inst)
    k = dec.k
    rest: list[UniColorPath] = []
    if k > 0:
        _, tail = max_bounded_paths(dec.residual, 2 * k, k, Mode.CDP)
        rest = tail.sorted_paths()
    return solution(chain(dec.prefix.paths, rest), Mode.CDP)


# -- the 1/2-approximation ----------------------------------------------------


def _on_unicolor_st_path(g: EdgeColoredGraph, s: int, t: int, w: int, color: str) -> bool:
    """Is w on some simple st-path in the subgraph of one color?

    Equivalent to two internally disjoint paths from w to s and to t, checked
    by a 2-unit flow with unit vertex capacities.
    """
    adj = g.color_subgraph_adjacency(color)
    if not adj[w]:
        return False

    def v_in(v: int) -> int:
        return 2 * v

    def v_out(v: int) -> int:
        return 2 * v + 1

    sink = 2 * g.vertex_count
    arcs: dict[int, dict[int, int]] = {}

    def add(a: int, b: int, cap: int) -> None:
        arcs.setdefault(a, {})[b] = arcs.setdefault(a, {}).get(b, 0) + cap

    for v in range(g.vertex_count):
        add(v_in(v), v_out(v), 1 if v not in (s, t, w) else 2)
    for u in range(g.vertex_count):
        for x in adj[u]:
            add(v_out(u), v_in(x), 1)
    add(v_out(s), sink, 1)
    add(v_out(t), sink, 1)

    value = 0
    while value < 2 and _bfs_augment(arcs, v_out(w), sink):
        value += 1
    return value == 2


def build_H(inst: ProblemInstance, approx_a: PathSolution) -> ProblemInstance:
    """Remainder instance for the exact stage of the approximation.

    Drops the interior vertices used by the greedy prefix, deletes the
    prefix's colors from every edge, then drops every vertex that no longer
    lies on any uni-color st-path in a remaining color.  Idempotent.
    """
    g, s, t = inst.graph, inst.source, inst.target
    used = {v for p in approx_a.paths for v in p.internal}
    taken_colors = {p.color for p in approx_a.paths} & set(g.colors)
    work = remove_vertices(g, used)
    work = restrict_colors(work, taken_colors)
    dead = []
    for w in range(work.vertex_count):
        if w in (s, t):
            continue
        if not any(_on_unicolor_st_path(work, s, t, w, c) for c in work.colors):
            dead.append(w)
    work = remove_vertices(work, dead)
    return ProblemInstance(work, s, t, None, Mode.CDDP)


def _approx_pipeline(inst: ProblemInstance) -> tuple[PathSolution, dict]:
    approx_a = greedy_length3(inst, Mode.CDDP)
    h_inst = build_H(inst, approx_a)
    hg = h_inst.graph
    stats = {
        "greedy_prefix": approx_a.value,
        "greedy_colors": sorted(p.color for p in approx_a.paths),
    }
    if not hg.edges:
        stats.update({"cover_size": 0, "residual_length_bound": 0, "exact_stage": 0})
        return approx_a, stats
    cover = terminal_respecting_cover(
        hg if not hg.has_edge(inst.source, inst.target) else _drop_direct(hg, inst),
        inst.source,
        inst.target,
    )
    k = len(cover)
    bound = 2 * k if k else 1
    # Even with k cover vertices the direct edge is one more candidate path.
    value, tail = max_bounded_paths(h_inst, max(bound, 1), k + 1, Mode.CDDP)
    stats.update(
        {"cover_size": k, "residual_length_bound": max(bound, 1), "exact_stage": value}
    )
    combined = solution(chain(approx_a.paths, tail.paths), Mode.CDDP)
    return combined, stats


def _drop_direct(g: EdgeColoredGraph, inst: ProblemInstance) -> EdgeColoredGraph:
    key = (min(inst.source, inst.target), max(inst.source, inst.target))
    return EdgeColoredGraph(
        g.vertex_count, g.colors, {e: cs for e, cs in g.edges.items() if e != key}
    )


def approx_cddp_vc(inst: ProblemInstance) -> tuple[PathSolution, dict]:
    """Feasible color-disjoint solution of at least half the optimum.

    The direct st-edge consumes a color, so both leaving it to the exact
    remainder stage and committing it up front (per color) are tried; the
    best outcome keeps the 1/2 guarantee whichever way the optimum uses it.
    """
    if inst.length_bound is not None:
        raise PreconditionError("cover-parameterized solver does not support a length bound")
    g, s, t = inst.graph, inst.source, inst.target
    rank = {c: i for i, c in enumerate(g.colors)}
    best, best_stats = _approx_pipeline(inst.with_mode(Mode.CDDP))
    best_stats["direct_edge"] = "free"
    direct = g.edge_colors(s, t)
    if direct:
        bare = _drop_direct(g, inst)
        for c in sorted(direct, key=lambda c: rank[c]):
            reduced = restrict_colors(bare, {c})
            cand, stats = _approx_pipeline(ProblemInstance(reduced, s, t, None, Mode.CDDP))
            cand = solution(chain(cand.paths, [UniColorPath((s, t), c)]), Mode.CDDP)
            if cand.value > best.value:
                best = cand
                stats["direct_edge"] = f"committed:{c}"
                best_stats = stats
    best_stats["value"] = best.value
    return best, best_stats
