"""Polynomial-time special cases.

* single-color maximum disjoint paths, by unit vertex-capacity max flow;
* the factor-q heuristic that keeps the best single color;
* color-disjoint paths when the graph minus the target is a tree, by
  bipartite matching between s-neighbors and colors;
* disjoint paths when the interior induces a union of simple paths, by
  repeatedly taking a shortest uni-color st-path inside each induced path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .errors import GraphError, PreconditionError
from .graph import (
    EdgeColoredGraph,
    Mode,
    PathSolution,
    ProblemInstance,
    UniColorPath,
    solution,
)

# Sentinel left vertex in the tree matching for the direct st-edge, which has
# no second vertex to hang the matching on but still consumes one color.
DIRECT = None


def _require_unbounded(inst: ProblemInstance, solver: str) -> None:
    if inst.length_bound is not None:
        raise PreconditionError(f"{solver} does not support a path length bound")


# -- unit-capacity max flow -------------------------------------------------


def _bfs_augment(arcs: dict[int, dict[int, int]], s: int, t: int) -> bool:
    prev: dict[int, int] = {s: s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for v in sorted(arcs.get(u, ())):
            if v not in prev and arcs[u][v] > 0:
                prev[v] = u
                queue.append(v)
    if t not in prev:
        return False
    v = t
    while v != s:
        u = prev[v]
        arcs[u][v] -= 1
        arcs.setdefault(v, {}).setdefault(u, 0)
        arcs[v][u] += 1
        v = u
    return True


def solve_single_color_flow(inst: ProblemInstance, color: str) -> PathSolution:
    """Maximum internally disjoint st-paths using only edges carrying ``color``.

    Vertex splitting gives unit vertex capacities; augmenting-path max flow
    needs at most n rounds and the flow decomposes into the returned paths.
    """
    _require_unbounded(inst, "single-color flow")
    g = inst.graph
    if color not in g.colors:
        raise GraphError(f"unknown color {color!r}")
    s, t = inst.source, inst.target
    adj = g.color_subgraph_adjacency(color)

    def v_in(v: int) -> int:
        return 2 * v

    def v_out(v: int) -> int:
        return 2 * v + 1

    arcs: dict[int, dict[int, int]] = {}

    def add_arc(a: int, b: int, cap: int) -> None:
        arcs.setdefault(a, {})[b] = arcs.setdefault(a, {}).get(b, 0) + cap

    big = g.vertex_count + 1
    for v in range(g.vertex_count):
        add_arc(v_in(v), v_out(v), 1 if v not in (s, t) else big)
    for u in range(g.vertex_count):
        for w in adj[u]:
            add_arc(v_out(u), v_in(w), 1)

    value = 0
    while _bfs_augment(arcs, v_out(s), v_in(t)):
        value += 1

    # Flow on (u -> w) equals the reverse residual accumulated on (in_w -> out_u).
    hop_flow: dict[int, dict[int, int]] = {}
    for u in range(g.vertex_count):
        for w in adj[u]:
            f = arcs.get(v_in(w), {}).get(v_out(u), 0)
            if f > 0:
                hop_flow.setdefault(u, {})[w] = f

    paths = []
    for _ in range(value):
        cur = s
        seq = [s]
        while cur != t:
            nxt = min(w for w, f in hop_flow[cur].items() if f > 0)
            hop_flow[cur][nxt] -= 1
            cur = nxt
            seq.append(cur)
        paths.append(UniColorPath(tuple(seq), color))
    return solution(paths, Mode.CDP)


def per_color_heuristic(inst: ProblemInstance) -> PathSolution:
    """Best single-color solution; within factor q of the optimum (cdp)."""
    _require_unbounded(inst, "per-color heuristic")
    best = solution([], Mode.CDP)
    for color in inst.graph.colors:
        cand = solve_single_color_flow(inst, color)
        if cand.value > best.value:
            best = cand
    return best


def per_color_flow_total(inst: ProblemInstance) -> int:
    """Sum of per-color flow values: an upper bound on the cdp optimum."""
    return sum(solve_single_color_flow(inst, c).value for c in inst.graph.colors)


# -- bipartite matching -----------------------------------------------------


def maximum_bipartite_matching(
    adjacency: Mapping[Hashable, Sequence[Hashable]]
) -> dict[Hashable, Hashable]:
    """Maximum-cardinality matching via augmenting paths (left -> right)."""
    match_of_right: dict[Hashable, Hashable] = {}

    def augment(u, banned: set) -> bool:
        for r in adjacency[u]:
            if r in banned:
                continue
            banned.add(r)
            if r not in match_of_right or augment(match_of_right[r], banned):
                match_of_right[r] = u
                return True
        return False

    for u in adjacency:
        augment(u, set())
    return {u: r for r, u in match_of_right.items()}


# -- the tree case ----------------------------------------------------------


@dataclass(frozen=True)
class TreeMatchingGraph:
    """Left side: s-neighbors in the tree (plus ``DIRECT`` when {s,t} exists);
    right side: colors; an edge means some uni-color st-path in that color
    enters the tree through that neighbor."""

    left: tuple
    right: tuple[str, ...]
    edges: frozenset[tuple]
    routes: dict[tuple, tuple[int, ...]]


def _tree_adjacency_or_none(inst: ProblemInstance) -> list[list[int]] | None:
    """Adjacency of G minus t if that graph is a tree spanning V - {t}."""
    g = inst.graph
    t = inst.target
    keep = [v for v in range(g.vertex_count) if v != t]
    adj: dict[int, list[int]] = {v: [] for v in keep}
    edge_count = 0
    for (u, v) in g.edges:
        if t in (u, v):
            continue
        adj[u].append(v)
        adj[v].append(u)
        edge_count += 1
    if edge_count != len(keep) - 1:
        return None
    seen = {inst.source}
    queue = deque([inst.source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != len(keep):
        return None
    for v in adj:
        adj[v].sort()
    out: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for v, ns in adj.items():
        out[v] = ns
    return out


def build_tree_matching(inst: ProblemInstance) -> TreeMatchingGraph:
    """Requires G minus t to be a tree; raises ``PreconditionError`` otherwise."""
    g = inst.graph
    s, t = inst.source, inst.target
    tree = _tree_adjacency_or_none(inst)
    if tree is None:
        raise PreconditionError("G minus t is not a tree containing s")
    rank = {c: i for i, c in enumerate(g.colors)}
    edges: set[tuple] = set()
    routes: dict[tuple, tuple[int, ...]] = {}

    def note(y, color: str, route: tuple[int, ...]) -> None:
        key = (y, color)
        if key not in edges:
            edges.add(key)
            routes[key] = route

    for y in sorted(tree[s]):
        start_colors = g.edge_colors(s, y)
        stack = [(y, s, start_colors, (inst.source, y))]
        while stack:
            w, parent, carried, trail = stack.pop()
            tcolors = carried & g.edge_colors(w, t)
            for c in sorted(tcolors, key=lambda c: rank[c]):
                note(y, c, trail + (t,))
            for child in reversed(tree[w]):
                if child == parent:
                    continue
                nxt = carried & g.edge_colors(w, child)
                if nxt:
                    stack.append((child, w, nxt, trail + (child,)))

    direct_colors = g.edge_colors(s, t)
    left: list = sorted(tree[s])
    if direct_colors:
        left.append(DIRECT)
        for c in sorted(direct_colors, key=lambda c: rank[c]):
            note(DIRECT, c, (s, t))

    right = tuple(c for c in g.colors if any(e[1] == c for e in edges))
    return TreeMatchingGraph(tuple(left), right, frozenset(edges), routes)


def solve_tree_cddp(inst: ProblemInstance) -> PathSolution:
    """Optimal color-disjoint solution when G minus t is a tree."""
    _require_unbounded(inst, "tree solver")
    g = inst.graph
    rank = {c: i for i, c in enumerate(g.colors)}
    bg = build_tree_matching(inst)
    adjacency = {
        y: sorted((c for (yy, c) in bg.edges if yy == y), key=lambda c: rank[c])
        for y in bg.left
    }
    matching = maximum_bipartite_matching(adjacency)
    paths = [UniColorPath(bg.routes[(y, c)], c) for y, c in matching.items()]
    return solution(paths, Mode.CDDP)


# -- disjoint-path interiors --------------------------------------------------


def disjoint_path_components(
    g: EdgeColoredGraph, excluded: set[int]
) -> list[list[int]] | None:
    """Ordered components of G minus ``excluded`` if they are all simple paths.

    Returns None when some kept vertex has degree > 2 or a cycle exists.
    Components are sorted by smallest vertex and oriented from their
    lower-indexed endpoint; isolated vertices count as one-vertex paths.
    """
    keep = [v for v in range(g.vertex_count) if v not in excluded]
    adj: dict[int, list[int]] = {v: [] for v in keep}
    for (u, v) in g.edges:
        if u in excluded or v in excluded:
            continue
        adj[u].append(v)
        adj[v].append(u)
    for v in keep:
        if len(adj[v]) > 2:
            return None
    seen: set[int] = set()
    components: list[list[int]] = []
    for v in sorted(keep):
        if v in seen:
            continue
        comp_vertices = set()
        comp_edges = 0
        queue = deque([v])
        comp_vertices.add(v)
        while queue:
            u = queue.popleft()
            comp_edges += len(adj[u])
            for w in adj[u]:
                if w not in comp_vertices:
                    comp_vertices.add(w)
                    queue.append(w)
        comp_edges //= 2
        if comp_edges != len(comp_vertices) - 1:
            return None  # a cycle
        ends = sorted(u for u in comp_vertices if len(adj[u]) <= 1)
        start = ends[0]
        ordered = [start]
        prev = None
        cur = start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            ordered.append(cur)
        components.append(ordered)
        seen |= comp_vertices
    return components


def solve_disjoint_paths_cdp(inst: ProblemInstance) -> PathSolution:
    """Optimal cdp solution when the interior induces disjoint paths.

    Per induced path, repeatedly takes a shortest uni-color st-path confined
    to its remaining vertices and deletes that path's interior; a direct
    {s,t} edge contributes one extra path.  Shortest-path ties break by the
    lowest start position along the induced path, then orientation, then
    color order, which keeps runs reproducible.
    """
    _require_unbounded(inst, "disjoint-paths solver")
    g = inst.graph
    s, t = inst.source, inst.target
    comps = disjoint_path_components(g, {s, t})
    if comps is None:
        raise PreconditionError("interior is not disjoint paths")
    rank = {c: i for i, c in enumerate(g.colors)}
    paths: list[UniColorPath] = []

    direct = g.edge_colors(s, t)
    if direct:
        paths.append(UniColorPath((s, t), min(direct, key=lambda c: rank[c])))

    for comp in comps:
        segments = deque([(0, len(comp) - 1)])
        while segments:
            # best = (length, start offset, reversed?, color rank, a, b, color)
            best = None
            for lo, hi in segments:
                for a in range(lo, hi + 1):
                    common = None
                    for b in range(a, hi + 1):
                        if b > a:
                            step = g.edge_colors(comp[b - 1], comp[b])
                            common = step if common is None else common & step
                            if not common:
                                break
                        inner = common if common is not None else frozenset(g.colors)
                        for rev in (False, True):
                            head, tail = (comp[a], comp[b]) if not rev else (comp[b], comp[a])
                            usable = inner & g.edge_colors(s, head) & g.edge_colors(tail, t)
                            if usable:
                                c = min(usable, key=lambda c: rank[c])
                                key = (b - a, a, rev, rank[c], b)
                                if best is None or key < best[0]:
                                    best = (key, a, b, rev, c)
            if best is None:
                break
            _, a, b, rev, c = best
            mid = comp[a : b + 1]
            if rev:
                mid = list(reversed(mid))
            paths.append(UniColorPath((s, *mid, t), c))
            new_segments = deque()
            for lo, hi in segments:
                if lo <= a and b <= hi:
                    if lo <= a - 1:
                        new_segments.append((lo, a - 1))
                    if b + 1 <= hi:
                        new_segments.append((b + 1, hi))
                else:
                    new_segments.append((lo, hi))
            segments = new_segments
    return solution(paths, Mode.CDP)
